#include "doctest.h"
#include "helpers.hpp"

using namespace hkorbit;
using namespace hkorbit::testing;

namespace {

const Complex<double> I{0, 1};

/// Frame point from chart coordinates, with its fibered point (warm-started).
struct ChartEval {
  const Ctx& ctx;
  const orbit::HolomorphicChart<double>& chart;
  mutable M frame = M::Identity(chart.origin().P.rows(), chart.origin().P.rows());

  mostow::FiberedPoint<double> operator()(const CVector<double>& z) const {
    mostow::ProjectOptions<double> opts;
    opts.initial_frame = frame;
    return mostow::decompose(ctx, chart.point(z), opts);
  }
};

}  // namespace

TEST_CASE("series oracle") {
  const auto ctx = algebra::build_context(4, 2, 1.0);
  const auto ex = speccalc::exp_kernel<double>();
  const M a = algebra::random_element(ctx, SpaceTag::g, 1, 0.5).mat;
  const M y = algebra::random_element(ctx, SpaceTag::gC, 2, 1.0).mat;
  const M h = I * a;
  CHECK(dist(oracle::series_ad_function(ex, h, y, 1), M(y + algebra::commutator(h, y))) < 1e-15);
  CHECK(dist(oracle::series_ad_function(speccalc::cosh_kernel<double>(), h, y, 0), y) == 0);
  for (const char* name : {"exp", "cosh", "cos", "sinh_over_x", "coshm1_over_x2"}) {
    const auto k = speccalc::kernel_by_name<double>(name);
    const M s = oracle::series_ad_function(k, h, y, 15);
    CHECK(dist(s, speccalc::apply_ad_function(k, a, y)) <= 1e-9 * std::max(1.0, s.norm()));
  }
  CHECK_THROWS_AS(oracle::series_ad_function(ex, h, y, -1), Error);
  CHECK_THROWS_AS(oracle::series_ad_function(ex, h, y, 1000), Error);
}

TEST_CASE("finite differences") {
  oracle::FDConfig<double> bad;
  bad.step = 1.0;
  CHECK_THROWS_AS(bad.validate(), Error);

  const oracle::FDConfig<double> cfg;
  const double d = oracle::fd_derivative<double, double>([](double t) { return std::sin(1 + t); }, cfg);
  CHECK(d == doctest::Approx(std::cos(1.0)).epsilon(1e-11));
  const double d2 = oracle::fd_second_derivative<double>([](double t) { return std::exp(t); }, cfg);
  CHECK(d2 == doctest::Approx(1.0).epsilon(1e-6));

  oracle::FDConfig<double> coarse{1e-2, false}, fine{5e-3, false};
  auto f = [](double t) { return std::exp(2 * t); };
  const double e1 = std::abs(oracle::fd_derivative<double, double>(f, coarse) - 2);
  const double e2 = std::abs(oracle::fd_derivative<double, double>(f, fine) - 2);
  CHECK(oracle::observed_order(e1, e2) >= 1.9);

  // identity pushforward returns the velocity
  const std::function<M(const M&)> identity = [](const M& m) { return m; };
  const M v = M::Random(3, 3);
  const std::function<M(double)> line = [&](double t) -> M { return t * v; };
  CHECK(dist(oracle::fd_pushforward<double, M, M>(identity, line), v) < 1e-10);
}

TEST_CASE("dd^c of test potentials") {
  const int dim = 3;
  std::mt19937_64 rng(3);
  const M H0 = algebra::random_complex<double>(dim, dim, rng);
  const M H = H0 + H0.adjoint();
  const M S = algebra::random_complex<double>(dim, dim, rng);
  // Hermitian form plus a pluriharmonic term Re(z^T S z)
  const oracle::ChartFunction<double> K = [&](const CVector<double>& z) {
    return (z.adjoint() * H * z).value().real() + (z.transpose() * S * z).value().real();
  };
  const CVector<double> z = CVector<double>::Random(dim);
  const CVector<double> xi = CVector<double>::Random(dim);
  const CVector<double> eta = CVector<double>::Random(dim);
  // dd^c of z* H z is 4 Im(xi* H eta); second differences are exact up to rounding
  const double expect = 4 * (xi.adjoint() * H * eta).value().imag();
  const oracle::FDConfig<double> wide{1e-2, true};
  CHECK(std::abs(oracle::fd_ddc(K, z, xi, eta, wide) - expect) <= 1e-10 * std::max(1.0, std::abs(expect)));

  // constant two-form is closed
  const oracle::ChartForm<double> constant = [&](const CVector<double>&, const CVector<double>& a,
                                                 const CVector<double>& b) {
    return (a.adjoint() * H * b).value().imag();
  };
  CHECK(std::abs(oracle::fd_exterior_derivative(constant, z, xi, eta, CVector<double>(I * xi))) < 1e-9);
}

TEST_CASE("dd^c of the affine potential matches omega1") {
  const auto ctx = algebra::build_context(2, 1, 1.0);
  const orbit::HolomorphicChart<double> chart(ctx, orbit::OrbitPoint<double>{M(M::Zero(2, 2))});
  const ChartEval eval{ctx, chart};
  const oracle::ChartFunction<double> K = [&](const CVector<double>& z) {
    return hk::affine_potential(ctx, eval(z));
  };
  for (int t = 0; t < 3; ++t) {
    const CVector<double> z = 0.3 * CVector<double>::Random(chart.dim());
    const CVector<double> xi = CVector<double>::Random(chart.dim());
    const CVector<double> eta = CVector<double>::Random(chart.dim());
    const auto p = eval(z);
    eval.frame = p.frame;
    const hk::HKFrame<double> frame(ctx, p);
    const auto X = mostow::rho_inverse(ctx, p, chart.differential(z, xi));
    const auto Y = mostow::rho_inverse(ctx, p, chart.differential(z, eta));
    const double w1 = frame.omega1(X, Y);
    const double scale = std::sqrt(frame.metric(X, X) * frame.metric(Y, Y));
    CHECK(std::abs(oracle::fd_ddc(K, z, xi, eta) - w1) <= 1e-4 * std::max(1.0, scale));
  }
}

TEST_CASE("probes of the compact orbit") {
  const auto ctx = algebra::build_context(4, 2, 1.0);
  CHECK_THROWS_AS(oracle::probe_min_distance(ctx, M(M::Zero(4, 4)), 0, 1), Error);
  const double a = oracle::probe_min_distance(ctx, M(M::Zero(4, 4)), 1, 42);
  CHECK(a == oracle::probe_min_distance(ctx, M(M::Zero(4, 4)), 1, 42));

  std::mt19937_64 rng(5);
  const M x = compact_point(ctx, rng);
  const M frame = orbit::compact_frame(ctx, x);
  CHECK(oracle::probe_min_distance_near(ctx, x, frame, 1e-6, 4, 1) < 1e-5);

  const auto fp = random_fibered(ctx, rng, 1.0);
  const double proj = (fp.y - mostow::project_pi(ctx, fp.y).x).norm();
  CHECK(oracle::probe_min_distance(ctx, fp.y, 200, 7) >= proj - 1e-9);
}
