#include "hkorbit/hkorbit.hpp"
#include "hkorbit/verify.hpp"

#include <cstdio>
#include <sstream>

namespace hkorbit::verify {

namespace {

using M = CMatrix<double>;

constexpr int kMaxConvergenceN = 64;
constexpr int kMaxQuaternionDim = 64;  // m_x dimension above which the full report is skipped

io::json real_matrix_json(const RMatrix<double>& m) {
  io::json rows = io::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    io::json row = io::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

M read_square(const io::json& point, const char* field, int n) {
  if (!point.contains(field))
    throw Error(ErrorKind::InvalidArgument, std::string("point file lacks '") + field + "'");
  M m = io::matrix_from_json(point.at(field));
  if (m.rows() != n || m.cols() != n)
    throw Error(ErrorKind::DimensionMismatch,
                std::string("'") + field + "' must be " + std::to_string(n) + " x " + std::to_string(n));
  return m;
}

std::string cell(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

io::json run_metric_at(const RunConfig& config, const io::json& point) {
  config.validate();
  const auto ctx = algebra::build_context<double>(config.n, config.k, config.kappa);
  const std::string kind = point.value("kind", std::string("orbit_point"));

  mostow::FiberedPoint<double> fp;
  if (kind == "orbit_point") {
    const M y = read_square(point, "y", config.n);
    if (!orbit::certify(ctx, y).ok())
      throw Error(ErrorKind::CertificateFailure, "y + D does not have the orbit spectrum");
    fp = mostow::decompose(ctx, y);
  } else if (kind == "tangent_bundle_point") {
    const auto q = tangent::make_tb_point(ctx, read_square(point, "x", config.n),
                                          read_square(point, "V", config.n));
    mostow::ProjectOptions<double> opts;
    opts.initial_frame = q.frame;
    fp = mostow::decompose(ctx, tangent::upsilon_inverse(ctx, q), opts);
  } else {
    throw Error(ErrorKind::InvalidArgument, "unknown point kind '" + kind + "'");
  }

  const auto cert = orbit::certify(ctx, fp.y);
  const hk::HKFrame<double> frame(ctx, fp);
  const auto report = hk::quaternion_report(frame);
  const auto q = tangent::upsilon(ctx, fp);
  const tangent::AOperator<double> A(ctx, q);

  io::json out;
  out["config"] = config_json(config);
  out["kind"] = kind;
  out["certificate"] = {{"square_residual", cert.square_residual},
                        {"trace_residual", cert.trace_residual}};
  out["projection"] = {{"iterations", fp.diagnostics.iterations},
                       {"newton_steps", fp.diagnostics.newton_steps},
                       {"gradient_norm", fp.diagnostics.gradient_norm},
                       {"distance", (fp.y - fp.x).norm()}};
  out["y"] = io::matrix_to_json(fp.y);
  out["x"] = io::matrix_to_json(fp.x, SpaceTag::g);
  out["a"] = io::matrix_to_json(fp.a, SpaceTag::g);
  out["V"] = io::matrix_to_json(q.V, SpaceTag::g);
  out["K"] = hk::potential_K(ctx, fp);
  out["affine_potential"] = hk::affine_potential(ctx, fp);
  out["gram_basis"] = "orthonormal basis b_i of m_x; vectors (b_i, 0) then (0, b_i)";
  out["gram"] = real_matrix_json(frame.gram());
  io::json qr;
  for (const auto& [name, value] : report.residuals()) qr[name] = value;
  qr["omega_c_constant"] = {report.omega_c_constant_re, report.omega_c_constant_im};
  qr["min_eigenvalue"] = report.min_eigenvalue;
  out["quaternion"] = std::move(qr);
  std::vector<double> spectrum(A.spectrum().data(), A.spectrum().data() + A.spectrum().size());
  out["a_spectrum"] = spectrum;
  return out;
}

std::string run_convergence(const RunConfig& config, const std::vector<int>& n_list, double amplitude) {
  if (n_list.empty()) throw Error(ErrorKind::InvalidArgument, "n list is empty");
  for (std::size_t i = 1; i < n_list.size(); ++i)
    if (n_list[i] <= n_list[i - 1])
      throw Error(ErrorKind::InvalidArgument, "n list must be strictly ascending");
  if (!(config.kappa > 0)) throw Error(ErrorKind::InvalidArgument, "kappa must be positive");

  std::ostringstream csv;
  csv << "n,k,dim_m,K,affine_potential,g_x1_x1,omega1_x1,a_min,a_max,quaternion_max,status\n";
  for (int n : n_list) {
    csv << n << ',' << config.k << ',';
    if (n > kMaxConvergenceN) {
      csv << ",,,,,,,,,skipped: n exceeds " << kMaxConvergenceN << '\n';
      continue;
    }
    try {
      const auto ctx = algebra::build_context<double>(n, config.k, config.kappa);
      const auto sos = roots::build_sos(ctx);
      const M zero = M::Zero(n, n);
      const M x1 = sos[0].x;
      const auto fp = mostow::decompose(ctx, mostow::forward(ctx, zero, M(amplitude * x1)));
      const hk::HKFrame<double> frame(ctx, fp);
      const M c = orbit::project_mx(ctx, fp.x, x1);
      const auto X = frame.vector(c, zero);
      const auto Y = frame.vector(zero, c);
      const tangent::AOperator<double> A(ctx, tangent::upsilon(ctx, fp));
      std::string quaternion;
      if (ctx.m_dim() <= kMaxQuaternionDim) quaternion = cell(hk::quaternion_report(frame).max_residual());
      csv << ctx.m_dim() << ',' << cell(hk::potential_K(ctx, fp)) << ','
          << cell(hk::affine_potential(ctx, fp)) << ',' << cell(frame.metric(X, X)) << ','
          << cell(frame.omega1(X, Y)) << ',' << cell(A.spectrum().minCoeff()) << ','
          << cell(A.spectrum().maxCoeff()) << ',' << quaternion << ",ok\n";
    } catch (const std::exception& e) {
      std::string msg = e.what();
      for (auto& ch : msg)
        if (ch == ',' || ch == '\n') ch = ';';
      csv << ",,,,,,,,,error: " << msg << '\n';
    }
  }
  return csv.str();
}

}  // namespace hkorbit::verify
