#include "doctest.h"
#include "helpers.hpp"

using namespace hkorbit;
using namespace hkorbit::testing;

TEST_CASE("strongly orthogonal system") {
  const Complex<double> I{0, 1};
  const auto ctx = algebra::build_context(2, 1, 1.0);
  const auto sos = roots::build_sos(ctx);
  REQUIRE(sos.size() == 1);
  M x(2, 2), y(2, 2), h(2, 2);
  x << 0, 1, -1, 0;
  y << 0, I, I, 0;
  h << 1, 0, 0, -1;
  CHECK(dist(sos[0].x, x) == 0);
  CHECK(dist(sos[0].y, y) == 0);
  CHECK(dist(sos[0].h, h) == 0);

  const auto sos4 = roots::build_sos(algebra::build_context(4, 2, 1.0));
  REQUIRE(sos4.size() == 2);
  CHECK((sos4[0].x.cwiseAbs().array() * sos4[1].x.cwiseAbs().array()).sum() == 0);
  CHECK(roots::build_sos(algebra::build_context(3, 1, 1.0)).size() == 1);
  CHECK(roots::build_sos(algebra::build_context(8, 3, 1.0)).size() == 3);
}

TEST_CASE("normal form of m0 elements") {
  const auto ctx = algebra::build_context(2, 1, 1.0);
  const auto sos = roots::build_sos(ctx);
  const auto c = roots::to_abelian_coords(ctx, sos, M(0.7 * sos[0].x));
  CHECK(c.coeffs(0) == doctest::Approx(0.7));
  CHECK(dist(roots::reconstruct(sos, c), M(0.7 * sos[0].x)) < 1e-14);

  const auto ctx4 = algebra::build_context(4, 2, 1.0);
  const auto sos4 = roots::build_sos(ctx4);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const M v = algebra::random_element(ctx4, SpaceTag::m0, seed, 1.5).mat;
    const auto coords = roots::to_abelian_coords(ctx4, sos4, v);
    CHECK(dist(roots::reconstruct(sos4, coords), v) < 1e-10);
    CHECK(dist(coords.conjugator * coords.conjugator.adjoint(), M::Identity(4, 4)) < 1e-12);
  }
  const auto zero = roots::to_abelian_coords(ctx4, sos4, M(M::Zero(4, 4)));
  CHECK(zero.coeffs.norm() == 0);
}

TEST_CASE("curvature on root vectors") {
  const auto ctx = algebra::build_context(4, 2, 1.0);
  const auto sos = roots::build_sos(ctx);
  const M x1 = sos[0].x, x2 = sos[1].x;
  const M ix1 = algebra::complex_structure_I(ctx, x1);
  const M ix2 = algebra::complex_structure_I(ctx, x2);
  CHECK(dist(roots::curvature_R(x1, ix1, x1), M(4.0 * ix1)) < 1e-14);
  CHECK(roots::curvature_R(x1, ix1, x2).norm() < 1e-14);
  CHECK(roots::curvature_R(x1, x2, ix1).norm() < 1e-14);
  CHECK(roots::curvature_R(x1, ix2, x1).norm() < 1e-14);
}
