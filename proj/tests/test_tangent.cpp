#include "doctest.h"
#include "helpers.hpp"

using namespace hkorbit;
using namespace hkorbit::testing;

TEST_CASE("fiber maps") {
  const auto ctx = algebra::build_context(4, 2, 1.0);
  const auto sos = roots::build_sos(ctx);
  CHECK(tangent::f1(ctx, M(M::Zero(4, 4))).norm() == 0);
  const M a = tangent::f2(ctx, M(0.5 * sos[0].x));
  CHECK(dist(a, M(-0.5 * std::asinh(1.0) * sos[0].x)) < 1e-14);
  CHECK(std::abs(algebra::real_inner(a, sos[0].x)) / 2 == doctest::Approx(0.44069).epsilon(1e-4));
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const M b = algebra::random_element(ctx, SpaceTag::m0, seed, 0.3 * double(seed)).mat;
    CHECK(dist(tangent::f2(ctx, tangent::f1(ctx, b)), b) <= 1e-9);
    CHECK(dist(tangent::f1(ctx, tangent::f2(ctx, b)), b) <= 1e-9 * std::max(1.0, b.norm()));
  }
}

TEST_CASE("tangent bundle coordinates") {
  const auto ctx = algebra::build_context(4, 2, 1.0);
  const auto sos = roots::build_sos(ctx);
  const M zero = M::Zero(4, 4);
  const auto q0 = tangent::upsilon(ctx, zero);
  CHECK(q0.x.norm() < 1e-12);
  CHECK(q0.V.norm() < 1e-12);

  for (double t : {0.3, 0.9}) {
    const auto q = tangent::upsilon(ctx, mostow::fibered_point(ctx, zero, M(t * sos[0].x)));
    CHECK(dist(q.V, M(-0.5 * std::sinh(2 * t) * sos[0].x)) < 1e-12);
  }

  std::mt19937_64 rng(1);
  const M x = compact_point(ctx, rng);
  CHECK(tangent::upsilon(ctx, x).V.norm() < 1e-10);

  for (int t = 0; t < 5; ++t) {
    const auto fp = random_fibered(ctx, rng, 0.5 * (t + 1));
    const auto q = tangent::upsilon(ctx, fp);
    CHECK(dist(q.x, fp.x) <= 1e-7);
    CHECK(dist(tangent::upsilon_inverse(ctx, q), fp.y) <= 1e-7 * std::max(1.0, fp.y.norm()));
  }
  CHECK_THROWS_AS(tangent::make_tb_point(ctx, M(M::Identity(4, 4)), zero), Error);
  CHECK_THROWS_AS(tangent::make_tb_point(ctx, x, M(x + ctx.D)), Error);
}

TEST_CASE("metric operator") {
  const auto ctx2 = algebra::build_context(2, 1, 1.0);
  const auto s2 = roots::build_sos(ctx2);
  const M z2 = M::Zero(2, 2);
  const auto q0 = tangent::make_tb_point(ctx2, z2, z2);
  const tangent::AOperator<double> id(ctx2, q0);
  CHECK((id.matrix() - RMatrix<double>::Identity(2, 2)).norm() < 1e-15);

  for (double v : {0.1, 0.5, 2.0}) {
    const auto q = tangent::make_tb_point(ctx2, z2, M(v * s2[0].x));
    const M got = tangent::A_operator(ctx2, q, s2[0].x);
    CHECK(dist(got, M(std::sqrt(1 + 4 * v * v) * s2[0].x)) <= 1e-10);
  }

  const auto ctx4 = algebra::build_context(4, 2, 1.0);
  const auto s4 = roots::build_sos(ctx4);
  const M z4 = M::Zero(4, 4);
  const auto q = tangent::make_tb_point(ctx4, z4, M(0.7 * s4[0].x));
  CHECK(dist(tangent::A_operator(ctx4, q, s4[1].x), s4[1].x) <= 1e-10);
  CHECK_THROWS_AS(tangent::A_operator(ctx4, q, M(ctx4.D)), Error);

  std::mt19937_64 rng(2);
  const M x = compact_point(ctx4, rng);
  const tangent::AOperator<double> A(ctx4, tangent::make_tb_point(ctx4, x, random_mx(ctx4, x, 3, 2.5)));
  CHECK(A.self_adjoint_residual() <= 1e-10);
  CHECK(A.spectrum().minCoeff() > 0);
  const M w = random_mx(ctx4, x, 4, 1.0);
  CHECK(dist(A.apply_inverse(A.apply(w)), w) < 1e-12);
}

TEST_CASE("tangent bundle metric and third structure") {
  const auto ctx = algebra::build_context(4, 2, 1.0);
  const Complex<double> i{0, 1};
  std::mt19937_64 rng(3);
  const M x = compact_point(ctx, rng);
  const M zero = M::Zero(4, 4);
  const double c3 = std::pow(ctx.c, 3);

  const tangent::AOperator<double> A0(ctx, tangent::make_tb_point(ctx, x, zero));
  const M h1 = random_mx(ctx, x, 1, 1.0), h2 = random_mx(ctx, x, 2, 1.0);
  const M v1 = i * random_mx(ctx, x, 3, 1.0), v2 = i * random_mx(ctx, x, 4, 1.0);
  CHECK(tangent::metric_gtilde(ctx, A0, {h1, zero}, {h2, zero}) ==
        doctest::Approx(c3 * algebra::real_inner(h1, h2)));

  const tangent::AOperator<double> A(ctx, tangent::make_tb_point(ctx, x, random_mx(ctx, x, 5, 1.5)));
  const tangent::TBVector<double> X{h1, v1}, Y{h2, v2};
  CHECK(std::abs(tangent::metric_gtilde(ctx, A, {h1, zero}, {zero, v2})) < 1e-12);

  const auto JJ = tangent::J3(A, tangent::J3(A, X));
  CHECK(dist(JJ.h, M(-X.h)) <= 1e-10);
  CHECK(dist(JJ.v, M(-X.v)) <= 1e-10);
  CHECK(std::abs(tangent::liouville_Omega3(ctx, X, X)) < 1e-12);
  CHECK(tangent::metric_gtilde(ctx, A, tangent::J3(A, X), Y) ==
        doctest::Approx(tangent::liouville_Omega3(ctx, X, Y)));
}
