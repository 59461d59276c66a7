#include "hkorbit/hkorbit.hpp"
#include "hkorbit/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <unordered_map>

namespace hkorbit::verify {

namespace {

using M = CMatrix<double>;
using Vec = CVector<double>;
using Ctx = algebra::Context<double>;
using std::max;

const std::complex<double> kI(0, 1);

struct Recorder {
  std::vector<Measurement> out;

  // keeps the largest value when a check is recorded several times in one trial
  void operator()(const std::string& name, double value) {
    if (!std::isfinite(value)) value = std::numeric_limits<double>::infinity();
    for (auto& m : out)
      if (m.name == name) {
        m.value = max(m.value, value);
        return;
      }
    out.push_back({name, value});
  }
};

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

M random_m0(const Ctx& ctx, std::mt19937_64& rng, double norm) {
  return algebra::random_element(ctx, SpaceTag::m0, rng(), norm).mat;
}

M random_gc(const Ctx& ctx, std::mt19937_64& rng) {
  return algebra::random_element(ctx, SpaceTag::gC, rng(), 1.0).mat;
}

M compact_point(const Ctx& ctx, const M& u) { return u * ctx.D * u.adjoint() - ctx.D; }

Vec random_chart_vector(int dim, std::mt19937_64& rng) {
  const M raw = algebra::random_complex<double>(dim, 1, rng);
  return Vec(raw.col(0)) / raw.norm();
}

double rel(double residual, double scale) { return residual / max(1.0, scale); }

/// Random point of the complexified orbit with |a| <= a_max, in Mostow coordinates.
mostow::FiberedPoint<double> random_fibered(const Ctx& ctx, std::mt19937_64& rng, double a_max) {
  const M u = algebra::random_unitary<double>(ctx.n, rng);
  const M a0 = random_m0(ctx, rng, uniform(rng, 0.05 * a_max, a_max));
  return mostow::fibered_point(ctx, compact_point(ctx, u), M(u * a0 * u.adjoint()));
}

// ---------------------------------------------------------------- algebra

void algebra_suite(const Ctx& ctx, std::mt19937_64& rng, Recorder& rec) {
  using algebra::commutator;
  const auto I = [&](const M& m) { return algebra::complex_structure_I(ctx, m); };

  const M x = random_gc(ctx, rng), y = random_gc(ctx, rng), z = random_gc(ctx, rng);
  const double xyz = x.norm() * y.norm() * z.norm();
  rec("lstar_axiom",
      std::abs(algebra::inner(commutator(x, y), z) - algebra::inner(y, commutator<double>(x.adjoint(), z))) / xyz);
  rec("jacobi", (commutator(x, commutator(y, z)) + commutator(y, commutator(z, x)) +
                 commutator(z, commutator(x, y)))
                        .norm() /
                    xyz);

  const M a = random_m0(ctx, rng, uniform(rng, 0.1, 2.0));
  const M b = random_m0(ctx, rng, uniform(rng, 0.1, 2.0));
  rec("ad_D_square", (commutator(ctx.D, commutator(ctx.D, a)) + ctx.c * ctx.c * a).norm() /
                         (ctx.c * ctx.c * a.norm()));
  const double ab = a.norm() * b.norm();
  rec("bracket_identities", max((commutator(a, I(b)) + commutator(I(a), b)).norm(),
                                (commutator(I(a), I(b)) - commutator(a, b)).norm()) /
                                ab);
  const double lhs = algebra::real_inner(commutator(a, I(a)), commutator(b, I(b)));
  const double rhs = commutator(a, b).squaredNorm() + commutator(a, I(b)).squaredNorm();
  rec("bracket_norm_identity", std::abs(lhs - rhs) / max(1.0, ab * ab));

  for (const auto& f : {speccalc::cosh_kernel<double>(), speccalc::coshm1_over_x2_kernel<double>(),
                        speccalc::one_plus_square_kernel<double>()}) {
    const M left = speccalc::apply_ad_function(f, a, commutator(a, I(a)));
    const M ap = speccalc::apply_ad_function(speccalc::sqrt_of(f), I(a), a);
    rec("bracket_transport", rel((left - commutator(ap, I(ap))).norm(), left.norm()));
  }

  // f(ad(iIV)) V against f applied to w -> I[[IV, V], w] on m0 (eigenvalues are squares)
  const M v = random_m0(ctx, rng, uniform(rng, 0.1, 2.0));
  const auto basis = algebra::m0_basis(ctx);
  const M iv = I(v);
  const speccalc::LinearMap<double> curvature = [&](const M& w) -> M {
    return I(commutator(commutator(iv, v), w));
  };
  for (const auto& f : {speccalc::phi_bg_kernel<double>(), speccalc::one_plus_square_kernel<double>(),
                        speccalc::cosh_kernel<double>()}) {
    const M left = speccalc::apply_ad_function(f, iv, v);
    const M right = speccalc::apply_operator_function(f, curvature, v, basis);
    rec("curvature_operator_function", rel((left - right).norm(), left.norm()));
  }

  const M p = random_gc(ctx, rng), q = random_gc(ctx, rng);
  const M h = random_m0(ctx, rng, 1.0);
  for (const auto& f : speccalc::catalogue<double>()) {
    const std::complex<double> d = algebra::inner(speccalc::apply_ad_function(f, h, p), q) -
                                   algebra::inner(p, speccalc::apply_ad_function(f, h, q));
    rec("hermiticity_transport", std::abs(d) / max(1.0, p.norm() * q.norm()));
  }

  // spectral engine vs the literal series, |a| <= 1
  const M s = random_m0(ctx, rng, uniform(rng, 0.05, 1.0));
  const M target = random_gc(ctx, rng);
  const M hs = kI * s;
  for (const auto& f : speccalc::catalogue<double>()) {
    const M spectral = speccalc::apply_ad_function(f, s, target);
    const M series = oracle::series_ad_function(f, hs, target, 15);
    rec("series_" + f.name, rel((spectral - series).norm(), spectral.norm()));
  }
}

// ---------------------------------------------------------------- roots

void roots_suite(const Ctx& ctx, std::mt19937_64& rng, Recorder& rec) {
  using roots::curvature_R;
  const auto sos = roots::build_sos(ctx);
  const auto I = [&](const M& m) { return algebra::complex_structure_I(ctx, m); };
  const M w = random_m0(ctx, rng, 1.0);
  double worst = 0;
  for (std::size_t al = 0; al < sos.size(); ++al) {
    const M& xa = sos[al].x;
    worst = max(worst, (curvature_R(xa, I(xa), xa) - 4.0 * I(xa)).norm());
    for (std::size_t be = 0; be < sos.size(); ++be) {
      if (al == be) continue;
      const M& xb = sos[be].x;
      worst = max(worst, curvature_R(xa, I(xa), xb).norm());
      worst = max(worst, curvature_R(xa, xb, w).norm());
      worst = max(worst, curvature_R(xa, I(xb), w).norm());
    }
  }
  rec("root_curvature", worst);

  const M v = random_m0(ctx, rng, uniform(rng, 0.1, 3.0));
  const auto coords = roots::to_abelian_coords(ctx, sos, v);
  rec("normal_form_reconstruction", rel((roots::reconstruct(sos, coords) - v).norm(), v.norm()));

  // in abelian coordinates ad(iIW)^2 W = sum (2 v_a)^2 v_a x_a
  const M wa = roots::abelian_element(sos, coords.coeffs);
  const M hw = kI * I(wa);
  const M sq = algebra::commutator(hw, algebra::commutator(hw, wa));
  const M quad = algebra::commutator(hw, algebra::commutator(hw, sq));
  M expect_sq = M::Zero(ctx.n, ctx.n), expect_quad = M::Zero(ctx.n, ctx.n),
    expect_kernel = M::Zero(ctx.n, ctx.n);
  for (std::size_t al = 0; al < sos.size(); ++al) {
    const double va = coords.coeffs(Eigen::Index(al));
    const double e = 4 * va * va;
    expect_sq += e * va * sos[al].x;
    expect_quad += e * e * va * sos[al].x;
    expect_kernel += (1 + e) * va * sos[al].x;
  }
  const M via_kernel = speccalc::apply_ad_function(speccalc::one_plus_square_kernel<double>(), I(wa), wa);
  const double scale = max(1.0, expect_quad.norm());
  rec("abelian_diagonalization",
      max({rel((sq - expect_sq).norm(), expect_sq.norm()), (quad - expect_quad).norm() / scale,
           rel((via_kernel - expect_kernel).norm(), expect_kernel.norm())}));
}

// ---------------------------------------------------------------- mostow

void mostow_suite(const Ctx& ctx, std::mt19937_64& rng, Recorder& rec) {
  const auto truth = random_fibered(ctx, rng, 2.0);
  const M& y = truth.y;
  const auto cert = orbit::certify(ctx, y);
  rec("orbit_certificate", max(cert.square_residual, cert.trace_residual));

  const auto fp = mostow::decompose(ctx, y);
  rec("roundtrip_x", (fp.x - truth.x).norm());
  rec("roundtrip_a", (fp.a - truth.a).norm());

  double spread = 0;
  for (int s = 0; s < 10; ++s) {
    mostow::ProjectOptions<double> opts;
    opts.initial_frame = algebra::random_unitary<double>(ctx.n, rng);
    spread = max(spread, (mostow::project_pi(ctx, y, opts).x - fp.x).norm());
  }
  rec("multistart_agreement", spread);

  const M u = algebra::random_unitary<double>(ctx.n, rng);
  const M moved = u * (y + ctx.D) * u.adjoint() - ctx.D;
  const M expected = u * (fp.x + ctx.D) * u.adjoint() - ctx.D;
  rec("equivariance", (mostow::decompose(ctx, moved).x - expected).norm());

  const double dist = (y - fp.x).norm();
  const double far = oracle::probe_min_distance(ctx, y, 1000, rng());
  const double near = oracle::probe_min_distance_near(ctx, y, fp.frame, 0.05, 200, rng());
  rec("probe_margin", dist - std::min(far, near));

  // distance along geodesics through the base point, in base coordinates
  const M y0 = fp.frame.adjoint() * (y + ctx.D) * fp.frame - ctx.D;
  const auto f = [&](const M& b, double t) {
    const M g = mostow::exp_skew<double>(t * b);
    return 0.5 * (y0 - (g * ctx.D * g.adjoint() - ctx.D)).squaredNorm();
  };
  const double f0 = 0.5 * y0.squaredNorm();
  const M unit = random_m0(ctx, rng, 1.0);
  double deficit = -std::numeric_limits<double>::infinity();
  for (int j = 1; j <= 10; ++j) {
    const double t = 0.05 * j;
    for (double st : {t, -t})
      deficit = max(deficit, st * st * ctx.c * ctx.c / 4 - (f(unit, st) - f0));
  }
  rec("convexity_deficit", deficit / max(1.0, f0));

  const M b = random_m0(ctx, rng, uniform(rng, 0.5, 2.0));
  const double end = std::min(1.0, std::numbers::pi / (2 * b.norm()));
  double decrease = 0, prev = f(b, 0.0);
  for (int j = 1; j <= 20; ++j) {
    const double cur = f(b, end * j / 21.0);
    decrease = max(decrease, prev - cur);
    prev = cur;
  }
  rec("geodesic_monotonicity", decrease / max(1.0, f0));

  // Hessian of the distance at the minimum, fiber over 0
  const auto p0 = mostow::fibered_point(ctx, M(M::Zero(ctx.n, ctx.n)), fp.base_a());
  const M c = random_m0(ctx, rng, 1.0);
  const double hess = mostow::hessian_form(ctx, p0, c, c);
  const double fd = oracle::fd_second_derivative<double>(
      [&](double t) {
        const M g = mostow::exp_skew<double>(t * c);
        return 0.5 * (p0.y - (g * ctx.D * g.adjoint() - ctx.D)).squaredNorm();
      },
      {});
  rec("hessian_fd", rel(std::abs(hess - fd), std::abs(hess)));
  const auto basis = algebra::m0_basis(ctx);
  const auto dim = Eigen::Index(basis.size());
  RMatrix<double> H(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j) H(i, j) = mostow::hessian_form(ctx, p0, basis[i], basis[j]);
  Eigen::SelfAdjointEigenSolver<RMatrix<double>> es(0.5 * (H + H.transpose()), Eigen::EigenvaluesOnly);
  rec("hessian_positivity", -es.eigenvalues().minCoeff());

  // pi_* X = [c, x + D]
  const M cx = orbit::project_mx(ctx, fp.x, random_gc(ctx, rng).eval());
  const M cpx = orbit::project_mx(ctx, fp.x, random_gc(ctx, rng).eval());
  const auto curve = oracle::orbit_curve(ctx, y, M(cx + kI * cpx));
  mostow::ProjectOptions<double> warm;
  warm.initial_frame = fp.frame;
  const M dx = oracle::fd_derivative<double, M>(
      [&](double t) { return mostow::project_pi(ctx, curve(t), warm).x; }, {});
  const M push = algebra::commutator<double>(mostow::pi_pushforward(mostow::TangentVecC<double>{y, cx, cpx}),
                                             fp.x + ctx.D);
  rec("pi_pushforward_fd", rel((dx - push).norm(), push.norm()));
}

// ---------------------------------------------------------------- hyperkahler

void hyperkahler_suite(const Ctx& ctx, std::mt19937_64& rng, Recorder& rec) {
  const auto fp = random_fibered(ctx, rng, 1.5);
  const hk::HKFrame<double> frame(ctx, fp);
  const auto report = hk::quaternion_report(frame);
  for (const auto& [name, value] : report.residuals()) rec(name, value);
  rec("omega_c_constant", std::hypot(report.omega_c_constant_re - 1, report.omega_c_constant_im));
  rec("gram_positivity", -report.min_eigenvalue);

  const M zero = M::Zero(ctx.n, ctx.n);
  const auto compact = mostow::fibered_point(ctx, fp.x, zero);
  const hk::HKFrame<double> cframe(ctx, compact);
  const M c = orbit::project_mx(ctx, fp.x, random_gc(ctx, rng).eval());
  const M d = orbit::project_mx(ctx, fp.x, random_gc(ctx, rng).eval());
  const double g = cframe.metric(cframe.vector(c, zero), cframe.vector(d, zero));
  const double expect = orbit::kahler_metric_O(ctx, fp.x, c, d);
  rec("restriction_compact", rel(std::abs(g - expect), std::abs(expect)));

  const M a0 = random_m0(ctx, rng, uniform(rng, 0.05, 1.5));
  const M yfiber = mostow::forward(ctx, zero, a0);
  rec("potential_fiber", std::abs(hk::potential_K(ctx, yfiber)));

  const M u = algebra::random_unitary<double>(ctx.n, rng);
  const auto conj = [&](const M& m) -> M { return u * m * u.adjoint(); };
  const auto moved = mostow::fibered_point(ctx, M(conj(fp.x + ctx.D) - ctx.D), conj(fp.a));
  const hk::HKFrame<double> mframe(ctx, moved);
  const M cp = orbit::project_mx(ctx, fp.x, random_gc(ctx, rng).eval());
  const M dp = orbit::project_mx(ctx, fp.x, random_gc(ctx, rng).eval());
  const double g1 = frame.metric(frame.vector(c, cp), frame.vector(d, dp));
  const double g2 = mframe.metric(mframe.vector(conj(c), conj(cp)), mframe.vector(conj(d), conj(dp)));
  rec("g_invariance", rel(std::abs(g1 - g2), std::abs(g1)));
}

// ---------------------------------------------------------------- tangent

speccalc::AdKernel<double> sqrt1p_minus_one_over_x2() {
  // (sqrt(1 + s^2) - 1)/s^2 = 1/(1 + sqrt(1 + s^2))
  return {"sqrt1p_minus_one_over_x2",
          [](double s) { return 1.0 / (1.0 + std::sqrt(1.0 + s * s)); }, {}, true};
}

tangent::TBVector<double> random_tb_vector(const Ctx& ctx, const M& x, std::mt19937_64& rng) {
  return {orbit::project_mx(ctx, x, random_gc(ctx, rng).eval()),
          kI * orbit::project_mx(ctx, x, random_gc(ctx, rng).eval())};
}

double tb_norm(const tangent::TBVector<double>& X) {
  return std::sqrt(X.h.squaredNorm() + X.v.squaredNorm());
}

void tangent_suite(const Ctx& ctx, std::mt19937_64& rng, Recorder& rec) {
  using algebra::commutator;
  const auto I = [&](const M& m) { return algebra::complex_structure_I(ctx, m); };
  const M zero = M::Zero(ctx.n, ctx.n);
  const double c3 = ctx.c * ctx.c * ctx.c;

  const M a = random_m0(ctx, rng, uniform(rng, 0.05, 3.0));
  rec("f2_f1_roundtrip", rel((tangent::f2(ctx, tangent::f1(ctx, a)) - a).norm(), a.norm()));
  const M v = random_m0(ctx, rng, uniform(rng, 0.05, 3.0));
  rec("f1_f2_roundtrip", rel((tangent::f1(ctx, tangent::f2(ctx, v)) - v).norm(), v.norm()));

  const auto fp = random_fibered(ctx, rng, 2.0);
  const auto q = tangent::upsilon(ctx, fp.y);
  mostow::ProjectOptions<double> cold;
  cold.initial_frame = algebra::random_unitary<double>(ctx.n, rng);
  rec("p_upsilon", (q.x - mostow::project_pi(ctx, fp.y, cold).x).norm());
  rec("upsilon_roundtrip",
      rel((tangent::upsilon_inverse(ctx, q) - fp.y).norm(), (fp.y + ctx.D).norm()));

  const M al = random_m0(ctx, rng, uniform(rng, 0.05, 1.5));
  const M vl = tangent::f1(ctx, al);
  const M lhs = speccalc::apply_ad_function(speccalc::coshm1_over_x2_kernel<double>(), al,
                                            commutator(I(al), al));
  const M rhs = speccalc::apply_ad_function(sqrt1p_minus_one_over_x2(), vl, commutator(I(vl), vl));
  rec("coshm1_image", rel((lhs - rhs).norm(), lhs.norm()));

  const auto basis = algebra::m0_basis(ctx);
  const RMatrix<double> sinh_op = speccalc::assemble_operator<double>(
      [&](const M& w) { return speccalc::apply_ad_function(speccalc::sinh_over_x_kernel<double>(), al, w); },
      basis);
  rec("sinh_bound", 1.0 - speccalc::self_adjoint_spectrum(sinh_op).values.minCoeff());

  // eigen-case on the first strongly orthogonal root, transported by a random frame
  const auto sos = roots::build_sos(ctx);
  const M u = algebra::random_unitary<double>(ctx.n, rng);
  const M xu = compact_point(ctx, u);
  const auto conj = [&](const M& m) -> M { return u * m * u.adjoint(); };
  for (double vv : {0.1, 0.5, 2.0}) {
    for (const auto& [base, frame] : {std::pair<M, M>{zero, M::Identity(ctx.n, ctx.n)}, {xu, u}}) {
      const auto conjf = [&](const M& m) -> M { return frame * m * frame.adjoint(); };
      const tangent::TangentBundlePoint<double> tq{base, conjf(vv * sos[0].x), frame};
      const tangent::AOperator<double> A(ctx, tq);
      const M x1 = conjf(sos[0].x);
      rec("a_eigen_case", (A.apply(x1) - std::sqrt(1 + 4 * vv * vv) * x1).norm() / x1.norm());
      double other = 0;
      for (std::size_t b = 1; b < sos.size(); ++b) {
        const M xb = conjf(sos[b].x);
        other = max(other, (A.apply(xb) - xb).norm() / xb.norm());
      }
      rec("a_orthogonal_root", other);
    }
  }

  const tangent::TangentBundlePoint<double> rq{
      xu, conj(random_m0(ctx, rng, uniform(rng, 0.05, 3.0))), u};
  const tangent::AOperator<double> RA(ctx, rq);
  rec("a_self_adjoint", RA.self_adjoint_residual());
  rec("a_positivity", -RA.spectrum().minCoeff());

  // pullback of g~ along Upsilon, with Upsilon_* by finite differences
  const auto pp = random_fibered(ctx, rng, 1.5);
  const hk::HKFrame<double> frame(ctx, pp);
  const auto pq = tangent::upsilon(ctx, pp);
  const tangent::AOperator<double> PA(ctx, pq);
  const auto rand_mx = [&] { return orbit::project_mx(ctx, pp.x, random_gc(ctx, rng).eval()); };
  const auto X = frame.vector(rand_mx(), rand_mx());
  const auto Y = frame.vector(rand_mx(), rand_mx());
  const auto UX = oracle::upsilon_pushforward(ctx, pp, X);
  const auto UY = oracle::upsilon_pushforward(ctx, pp, Y);
  const double scale = std::sqrt(frame.metric(X, X) * frame.metric(Y, Y));
  rec("pullback", rel(std::abs(tangent::metric_gtilde(ctx, PA, UX, UY) - frame.metric(X, Y)), scale));
  rec("pullback", rel(std::abs(tangent::metric_gtilde(ctx, PA, UX, UX) - frame.metric(X, X)),
                      frame.metric(X, X)));

  const M ch = rand_mx();
  const auto H = oracle::upsilon_pushforward(ctx, pp, frame.vector(ch, zero));
  rec("upsilon_horizontal", rel((H.h - ch).norm() + H.v.norm(), ch.norm()));
  const M cv = rand_mx();
  const auto Vv = oracle::upsilon_pushforward(ctx, pp, frame.vector(zero, cv));
  rec("upsilon_vertical", rel(Vv.h.norm(), cv.norm()));

  const auto T1 = random_tb_vector(ctx, pq.x, rng);
  const auto T2 = random_tb_vector(ctx, pq.x, rng);
  const tangent::TBVector<double> hor{T1.h, zero}, ver{zero, T2.v};
  rec("hor_ver_orthogonality", std::abs(tangent::metric_gtilde(ctx, PA, hor, ver)) /
                                   max(1.0, c3 * tb_norm(T1) * tb_norm(T2)));

  const tangent::TangentBundlePoint<double> zq{pq.x, zero, pq.frame};
  const tangent::AOperator<double> ZA(ctx, zq);
  const tangent::TBVector<double> h1{T1.h, zero}, h2{T2.h, zero}, v1{zero, T1.v}, v2{zero, T2.v};
  const double gh = tangent::metric_gtilde(ctx, ZA, h1, h2);
  const double gv = tangent::metric_gtilde(ctx, ZA, v1, v2);
  const double eh = orbit::kahler_metric_O(ctx, pq.x, T1.h, T2.h);
  const double ev = c3 * algebra::real_inner(T1.v, T2.v);
  rec("zero_section_restriction",
      max(rel(std::abs(gh - eh), std::abs(eh)), rel(std::abs(gv - ev), std::abs(ev))));

  const auto J = tangent::J3(PA, T1);
  const auto JJ = tangent::J3(PA, J);
  rec("j3_square", std::sqrt((JJ.h + T1.h).squaredNorm() + (JJ.v + T1.v).squaredNorm()) / tb_norm(T1));
  const double norm12 = max(1.0, c3 * tb_norm(T1) * tb_norm(T2));
  rec("j3_omega3",
      std::abs(tangent::metric_gtilde(ctx, PA, J, T2) - tangent::liouville_Omega3(ctx, T1, T2)) / norm12);
  rec("omega3_alternating",
      max(std::abs(tangent::liouville_Omega3(ctx, T1, T1)),
          std::abs(tangent::liouville_Omega3(ctx, T1, T2) + tangent::liouville_Omega3(ctx, T2, T1))) /
          norm12);
  // c^3 Re(<i c', d> - <i d', c>) with raw traces
  const std::complex<double> t1 = (M(kI * T1.v).adjoint() * T2.h).trace();
  const std::complex<double> t2 = (M(kI * T2.v).adjoint() * T1.h).trace();
  rec("omega3_liouville",
      std::abs(c3 * (t1.real() - t2.real()) - tangent::liouville_Omega3(ctx, T1, T2)) / norm12);
}

// ---------------------------------------------------------------- closedness

/// Memoized Mostow decomposition along a holomorphic chart, warm-started at the origin.
class ChartPoints {
 public:
  ChartPoints(const Ctx& ctx, const orbit::HolomorphicChart<double>& chart, const M& frame)
      : ctx_(ctx), chart_(chart) {
    opts_.initial_frame = frame;
  }

  const mostow::FiberedPoint<double>& at(const Vec& z) {
    std::string key(reinterpret_cast<const char*>(z.data()), sizeof(std::complex<double>) * z.size());
    auto it = cache_.find(key);
    if (it == cache_.end())
      it = cache_.emplace(std::move(key), mostow::decompose(ctx_, chart_.point(z), opts_)).first;
    return it->second;
  }

 private:
  const Ctx& ctx_;
  const orbit::HolomorphicChart<double>& chart_;
  mostow::ProjectOptions<double> opts_;
  std::unordered_map<std::string, mostow::FiberedPoint<double>> cache_;
};

void closedness_suite(const Ctx& ctx, std::mt19937_64& rng, Recorder& rec) {
  const auto fp = random_fibered(ctx, rng, 1.0);
  const orbit::HolomorphicChart<double> chart(ctx, orbit::OrbitPoint<double>{fp.y});
  ChartPoints points(ctx, chart, fp.frame);
  const int dim = chart.dim();
  const Vec z0 = Vec::Zero(dim);

  const auto tangent_at = [&](const Vec& z, const mostow::FiberedPoint<double>& p, const Vec& dir) {
    return mostow::rho_inverse(ctx, p, chart.differential(z, dir));
  };
  // [Re omega_c, Im omega_c, omega1, omega2, omega3]
  const oracle::ChartForm<double, Eigen::VectorXd> forms = [&](const Vec& z, const Vec& xi,
                                                               const Vec& eta) {
    const auto& p = points.at(z);
    const hk::HKFrame<double> frame(ctx, p);
    const auto X = tangent_at(z, p, xi);
    const auto Y = tangent_at(z, p, eta);
    const std::complex<double> wc = frame.omega_c(X, Y);
    Eigen::VectorXd out(5);
    out << wc.real(), wc.imag(), frame.omega1(X, Y), frame.omega2(X, Y), frame.omega3(X, Y);
    return out;
  };
  const Vec A = random_chart_vector(dim, rng), B = random_chart_vector(dim, rng),
            C = random_chart_vector(dim, rng);
  const Eigen::VectorXd d = oracle::fd_exterior_derivative<double, Eigen::VectorXd>(forms, z0, A, B, C);
  const Eigen::VectorXd s =
      forms(z0, A, B).cwiseAbs() + forms(z0, B, C).cwiseAbs() + forms(z0, A, C).cwiseAbs();
  rec("d_omega_c", rel(std::hypot(d(0), d(1)), std::hypot(s(0), s(1))));
  rec("d_omega1", rel(std::abs(d(2)), s(2)));
  rec("d_omega2", rel(std::abs(d(3)), s(3)));
  rec("d_omega3", rel(std::abs(d(4)), s(4)));

  const oracle::ChartFunction<double> K = [&](const Vec& z) { return hk::potential_K(ctx, points.at(z)); };
  const oracle::ChartFunction<double> K_affine = [&](const Vec& z) {
    return hk::affine_potential(ctx, points.at(z));
  };
  const auto& p0 = points.at(z0);
  const hk::HKFrame<double> frame0(ctx, p0);
  for (int pair = 0; pair < 2; ++pair) {
    const Vec xi = random_chart_vector(dim, rng), eta = random_chart_vector(dim, rng);
    const auto X = tangent_at(z0, p0, xi);
    const auto Y = tangent_at(z0, p0, eta);
    const double w1 = frame0.omega1(X, Y);
    const double scale = std::sqrt(frame0.metric(X, X) * frame0.metric(Y, Y));
    rec("ddc_potential", rel(std::abs(oracle::fd_ddc(K, z0, xi, eta) - w1), scale));
    rec("ddc_affine_potential", rel(std::abs(oracle::fd_ddc(K_affine, z0, xi, eta) - w1), scale));
    if (pair == 0) {
      oracle::FDConfig<double> coarse{1e-2, false}, fine{5e-3, false};
      const double e1 = std::abs(oracle::fd_ddc(K_affine, z0, xi, eta, coarse) - w1);
      const double e2 = std::abs(oracle::fd_ddc(K_affine, z0, xi, eta, fine) - w1);
      rec("fd_order_ddc", 1.9 - oracle::observed_order(e1, e2));

      const M exact = chart.differential(z0, xi);
      const std::function<M(double)> path = [&](double t) { return chart.point(Vec(z0 + t * xi)); };
      const double f1 = (oracle::fd_derivative<double, M>(path, coarse) - exact).norm();
      const double f2 = (oracle::fd_derivative<double, M>(path, fine) - exact).norm();
      rec("fd_order_first", 1.9 - oracle::observed_order(f1, f2));
    }
  }
}

}  // namespace

std::vector<Measurement> run_suite_trial(const std::string& suite, const RunConfig& config,
                                         std::uint64_t seed) {
  const auto ctx = algebra::build_context<double>(config.n, config.k, config.kappa);
  std::mt19937_64 rng(seed);
  Recorder rec;
  if (suite == "algebra") algebra_suite(ctx, rng, rec);
  else if (suite == "roots") roots_suite(ctx, rng, rec);
  else if (suite == "mostow") mostow_suite(ctx, rng, rec);
  else if (suite == "hyperkahler") hyperkahler_suite(ctx, rng, rec);
  else if (suite == "tangent") tangent_suite(ctx, rng, rec);
  else if (suite == "closedness") closedness_suite(ctx, rng, rec);
  else throw Error(ErrorKind::InvalidArgument, "unknown suite '" + suite + "'");
  return rec.out;
}

}  // namespace hkorbit::verify
