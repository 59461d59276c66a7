#include "hkorbit/io.hpp"

#include <fstream>
#include <sstream>

namespace hkorbit::io {

json matrix_to_json(const CMatrix<double>& m, SpaceTag tag) {
  json data = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) data.push_back({m(i, j).real(), m(i, j).imag()});
  json out;
  out["rows"] = m.rows();
  out["cols"] = m.cols();
  out["data"] = std::move(data);
  out["space_tag"] = std::string(to_string(tag));
  return out;
}

json element_to_json(const Element<double>& e) { return matrix_to_json(e.mat, e.tag); }

CMatrix<double> matrix_from_json(const json& j) {
  try {
    const auto rows = j.at("rows").get<Eigen::Index>();
    const auto cols = j.at("cols").get<Eigen::Index>();
    const json& data = j.at("data");
    if (rows < 1 || cols < 1) throw Error(ErrorKind::InvalidArgument, "matrix must be non-empty");
    if (!data.is_array() || Eigen::Index(data.size()) != rows * cols)
      throw Error(ErrorKind::DimensionMismatch, "matrix data length does not match rows * cols");
    CMatrix<double> m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
      for (Eigen::Index k = 0; k < cols; ++k) {
        const json& entry = data.at(std::size_t(i * cols + k));
        if (!entry.is_array() || entry.size() != 2)
          throw Error(ErrorKind::InvalidArgument, "matrix entries must be [re, im] pairs");
        m(i, k) = {entry[0].get<double>(), entry[1].get<double>()};
      }
    return m;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::InvalidArgument, std::string("malformed matrix: ") + e.what());
  }
}

Element<double> element_from_json(const json& j) {
  SpaceTag tag = SpaceTag::gC;
  if (j.contains("space_tag")) tag = space_tag_from_string(j.at("space_tag").get<std::string>());
  return Element<double>{matrix_from_json(j), tag};
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Io, "cannot parse " + path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path);
  out << text;
  if (!out) throw Error(ErrorKind::Io, "write failed for " + path);
}

}  // namespace hkorbit::io
