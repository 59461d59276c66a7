#pragma once

#include "hkorbit/types.hpp"

#include "json.hpp"

#include <string>

namespace hkorbit::io {

using json = nlohmann::ordered_json;

/// {"rows", "cols", "data": [[re, im], ...] row-major, "space_tag"}.
json element_to_json(const Element<double>& e);
Element<double> element_from_json(const json& j);

json matrix_to_json(const CMatrix<double>& m, SpaceTag tag = SpaceTag::gC);
CMatrix<double> matrix_from_json(const json& j);

json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace hkorbit::io
