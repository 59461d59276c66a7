#include "doctest.h"
#include "helpers.hpp"

using namespace hkorbit;
using namespace hkorbit::testing;

namespace {

const Complex<double> I{0, 1};

}  // namespace

TEST_CASE("build_context sets D and c") {
  const auto a = algebra::build_context(2, 1, 1.0);
  M d(2, 2);
  d << I, 0, 0, -I;
  CHECK(dist(a.D, d) == 0);
  CHECK(a.c == doctest::Approx(2.0));

  const auto b = algebra::build_context(4, 2, 0.5);
  M e = M::Zero(4, 4);
  e.diagonal() << 0.5 * I, 0.5 * I, -0.5 * I, -0.5 * I;
  CHECK(dist(b.D, e) == 0);
  CHECK(b.c == doctest::Approx(1.0));
  CHECK(b.m_dim() == 8);
  CHECK(b.rank() == 2);
}

TEST_CASE("build_context rejects bad arguments") {
  CHECK_THROWS_AS(algebra::build_context(2, 2, 1.0), Error);
  CHECK_THROWS_AS(algebra::build_context(1, 0, 1.0), Error);
  CHECK_THROWS_AS(algebra::build_context(4, 0, 1.0), Error);
  CHECK_THROWS_AS(algebra::build_context(4, 2, 0.0), Error);
  try {
    algebra::build_context(2, 2, 1.0);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidArgument);
  }
}

TEST_CASE("bracket of the basic root pair and tag rules") {
  const auto ctx = algebra::build_context(2, 1, 1.0);
  const auto sos = roots::build_sos(ctx);
  const Element<double> x1{sos[0].x, SpaceTag::m0}, y1{sos[0].y, SpaceTag::m0};
  const auto b = algebra::bracket(ctx, x1, y1);
  CHECK(dist(b.mat, M(2.0 * I * sos[0].h)) < 1e-14);
  CHECK(b.tag == SpaceTag::k0);
  CHECK(algebra::bracket(ctx, x1, x1).mat.norm() == 0);

  const auto ctx4 = algebra::build_context(4, 2, 1.0);
  const auto k = algebra::random_element(ctx4, SpaceTag::k0, 1, 1.0);
  const auto m = algebra::random_element(ctx4, SpaceTag::m0, 2, 1.0);
  const auto km = algebra::bracket(ctx4, k, m);
  CHECK(km.tag == SpaceTag::m0);
  CHECK(algebra::tag_residual(ctx4, km.mat, SpaceTag::m0) < 1e-14);
  CHECK(algebra::bracket(ctx4, m, m).tag == SpaceTag::k0);
  CHECK_THROWS_AS(algebra::bracket(ctx4, k, Element<double>{M::Zero(2, 2), SpaceTag::gC}), Error);
}

TEST_CASE("trace inner product") {
  const auto ctx = algebra::build_context(2, 1, 1.0);
  const auto sos = roots::build_sos(ctx);
  CHECK(std::abs(algebra::inner(sos[0].x, sos[0].x) - Complex<double>(2)) < 1e-15);
  CHECK(std::abs(algebra::inner(sos[0].x, sos[0].y)) < 1e-15);

  const auto ctx5 = algebra::build_context(5, 2, 1.0);
  std::mt19937_64 rng(7);
  for (int t = 0; t < 10; ++t) {
    const M x = algebra::random_complex<double>(5, 5, rng);
    const M y = algebra::random_complex<double>(5, 5, rng);
    const M z = algebra::random_complex<double>(5, 5, rng);
    const auto lhs = algebra::inner(algebra::commutator(x, y), z);
    const auto rhs = algebra::inner(y, algebra::commutator(M(x.adjoint()), z));
    CHECK(std::abs(lhs - rhs) < 1e-12 * x.norm() * y.norm() * z.norm());
  }
}

TEST_CASE("projections onto the subspaces") {
  const auto ctx = algebra::build_context(2, 1, 1.0);
  const auto sos = roots::build_sos(ctx);
  const M k = I * sos[0].h;
  CHECK(algebra::project(ctx, k, SpaceTag::m0).norm() == 0);
  CHECK(dist(algebra::project(ctx, M(sos[0].x + k), SpaceTag::k0), k) < 1e-15);
  const M z = sos[0].x - I * sos[0].y;
  const M plus = algebra::project(ctx, z, SpaceTag::mPlus);
  const M minus = algebra::project(ctx, z, SpaceTag::mMinus);
  CHECK(dist(plus + minus, z) < 1e-15);
  CHECK_THROWS_AS(algebra::make_element(ctx, M(sos[0].h), SpaceTag::m0), Error);
  CHECK_THROWS_AS(algebra::make_element(ctx, M(M::Zero(3, 3)), SpaceTag::m0), Error);
}

TEST_CASE("complex structure on m0") {
  const auto ctx = algebra::build_context(2, 1, 1.0);
  const auto sos = roots::build_sos(ctx);
  const M ix = algebra::complex_structure_I(ctx, sos[0].x);
  CHECK(dist(ix, sos[0].y) < 1e-15);
  CHECK(dist(algebra::complex_structure_I(ctx, ix), M(-sos[0].x)) < 1e-15);
  CHECK(algebra::complex_structure_I(ctx, M(M::Zero(2, 2))).norm() == 0);
  CHECK_THROWS_AS(algebra::complex_structure_I(ctx, Element<double>{M(I * sos[0].h), SpaceTag::k0}),
                  Error);
}

TEST_CASE("random elements") {
  const auto ctx = algebra::build_context(4, 2, 1.0);
  const auto a = algebra::random_element(ctx, SpaceTag::m0, 1, 1.0);
  CHECK(a.mat.norm() == doctest::Approx(1.0));
  CHECK(algebra::tag_residual(ctx, a.mat, SpaceTag::m0) < 1e-15);
  CHECK(algebra::skew_residual(a.mat) < 1e-15);
  const auto b = algebra::random_element(ctx, SpaceTag::m0, 1, 1.0);
  CHECK(dist(a.mat, b.mat) == 0);
  const auto k = algebra::random_element(ctx, SpaceTag::k0, 2, 1.0);
  CHECK(algebra::tag_residual(ctx, k.mat, SpaceTag::k0) < 1e-15);
  CHECK(k.mat.topRightCorner(2, 2).norm() == 0);
  CHECK_THROWS_AS(algebra::random_element(ctx, SpaceTag::m0, 1, 0.0), Error);

  std::mt19937_64 rng(3);
  const M u = algebra::random_unitary<double>(5, rng);
  CHECK(dist(u * u.adjoint(), M::Identity(5, 5)) < 1e-13);
}

TEST_CASE("m0 basis is orthonormal and spans m0") {
  const auto ctx = algebra::build_context(5, 2, 0.5);
  const auto basis = algebra::m0_basis(ctx);
  REQUIRE(int(basis.size()) == ctx.m_dim());
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < basis.size(); ++j)
      CHECK(algebra::real_inner(basis[i], basis[j]) == doctest::Approx(i == j ? 1.0 : 0.0));
  const M a = algebra::random_element(ctx, SpaceTag::m0, 9, 2.0).mat;
  CHECK(dist(algebra::from_coordinates(basis, algebra::coordinates(basis, a)), a) < 1e-14);
}
