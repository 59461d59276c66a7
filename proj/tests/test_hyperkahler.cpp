#include "doctest.h"
#include "helpers.hpp"

using namespace hkorbit;
using namespace hkorbit::testing;

TEST_CASE("potential values") {
  const auto ctx = algebra::build_context(4, 2, 1.0);
  const M zero = M::Zero(4, 4);
  CHECK(hk::potential_K(ctx, zero) == doctest::Approx(0.0));
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const M a = algebra::random_element(ctx, SpaceTag::m0, seed, 0.4 * double(seed)).mat;
    const auto fp = mostow::fibered_point(ctx, zero, a);
    CHECK(std::abs(hk::potential_K(ctx, fp)) < 1e-10);
    CHECK(std::abs(hk::affine_potential(ctx, fp)) < 1e-10);
  }
  std::mt19937_64 rng(1);
  const M x = compact_point(ctx, rng);
  CHECK(hk::potential_K(ctx, x) == doctest::Approx(ctx.c * x.squaredNorm()));
}

TEST_CASE("metric at the base point") {
  const auto ctx = algebra::build_context(2, 1, 1.0);
  const auto sos = roots::build_sos(ctx);
  const M zero = M::Zero(2, 2);
  const auto p = mostow::fibered_point(ctx, zero, zero);
  const auto X = mostow::rho(ctx, p, sos[0].x, zero);
  CHECK(hk::metric_g(ctx, p, X, X) == doctest::Approx(16.0));

  const auto ctx4 = algebra::build_context(4, 2, 0.5);
  const M z4 = M::Zero(4, 4);
  const auto p4 = mostow::fibered_point(ctx4, z4, z4);
  const M c = algebra::random_element(ctx4, SpaceTag::m0, 1, 1.0).mat;
  const M d = algebra::random_element(ctx4, SpaceTag::m0, 2, 1.0).mat;
  const double c3 = std::pow(ctx4.c, 3);
  CHECK(hk::metric_g(ctx4, p4, mostow::rho(ctx4, p4, c, z4), mostow::rho(ctx4, p4, d, z4)) ==
        doctest::Approx(c3 * algebra::real_inner(c, d)));
}

TEST_CASE("metric on a fiber point") {
  const auto ctx = algebra::build_context(4, 2, 1.0);
  const M zero = M::Zero(4, 4);
  const M a = algebra::random_element(ctx, SpaceTag::m0, 3, 1.1).mat;
  const auto p = mostow::fibered_point(ctx, zero, a);
  const M c = algebra::random_element(ctx, SpaceTag::m0, 4, 1.0).mat;
  const M d = algebra::random_element(ctx, SpaceTag::m0, 5, 1.0).mat;
  // horizontal and vertical directions are orthogonal
  CHECK(std::abs(hk::metric_g(ctx, p, mostow::rho(ctx, p, c, zero), mostow::rho(ctx, p, zero, d))) < 1e-12);
  // c times the Hessian of the distance function on the fiber over 0
  CHECK(hk::metric_g(ctx, p, mostow::rho(ctx, p, c, zero), mostow::rho(ctx, p, d, zero)) ==
        doctest::Approx(ctx.c * mostow::hessian_form(ctx, p, c, d)));
  const auto X = mostow::rho(ctx, p, c, d);
  CHECK(std::abs(hk::omega1(ctx, p, X, X)) < 1e-12);
  const hk::HKFrame<double> frame(ctx, p);
  const auto Y = mostow::rho(ctx, p, d, c);
  CHECK(hk::omega1(ctx, p, X, Y) == doctest::Approx(frame.metric(frame.I1(X), Y)));
}

TEST_CASE("second complex structure") {
  const auto ctx = algebra::build_context(2, 1, 1.0);
  const auto sos = roots::build_sos(ctx);
  const M zero = M::Zero(2, 2);
  const auto p = mostow::fibered_point(ctx, zero, zero);
  const auto h = hk::I2(ctx, p, mostow::rho(ctx, p, sos[0].x, zero));
  CHECK(dist(h.c, sos[0].y) < 1e-15);
  CHECK(h.c_prime.norm() == 0);
  const auto v = hk::I2(ctx, p, mostow::rho(ctx, p, zero, sos[0].x));
  CHECK(dist(v.c_prime, M(-sos[0].y)) < 1e-15);
  const auto X = mostow::rho(ctx, p, sos[0].x, sos[0].y);
  const auto XX = hk::I2(ctx, p, hk::I2(ctx, p, X));
  CHECK(dist(XX.c, M(-X.c)) < 1e-15);
  CHECK(dist(XX.c_prime, M(-X.c_prime)) < 1e-15);
}

TEST_CASE("quaternionic identities") {
  const auto ctx = algebra::build_context(4, 2, 1.0);
  const M zero = M::Zero(4, 4);
  const auto r0 = hk::quaternion_report(ctx, mostow::fibered_point(ctx, zero, zero));
  CHECK(r0.max_residual() <= 1e-10);
  CHECK(r0.omega_c_constant_re == doctest::Approx(1.0));

  std::mt19937_64 rng(6);
  for (int t = 0; t < 6; ++t) {
    const auto p = random_fibered(ctx, rng, 0.25 * (t + 1));
    const auto r = hk::quaternion_report(ctx, p);
    for (const auto& [name, value] : r.residuals()) {
      INFO(name);
      CHECK(value <= 1e-8);
    }
    CHECK(r.min_eigenvalue > 0);
    CHECK(std::abs(r.omega_c_constant_re - 1) < 1e-8);
  }

  // restriction to the compact orbit
  const M x = compact_point(ctx, rng);
  const hk::HKFrame<double> frame(ctx, mostow::fibered_point(ctx, x, M(M::Zero(4, 4))));
  const M c = random_mx(ctx, x, 7, 1.0), d = random_mx(ctx, x, 8, 1.0);
  CHECK(frame.metric(frame.vector(c, zero), frame.vector(d, zero)) ==
        doctest::Approx(orbit::kahler_metric_O(ctx, x, c, d)));
  const mostow::TangentVecC<double> elsewhere{M(M::Zero(4, 4)), c, zero};
  CHECK_THROWS_AS(frame.metric(elsewhere, frame.vector(d, zero)), Error);
}
