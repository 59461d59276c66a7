#include "doctest.h"
#include "helpers.hpp"

using namespace hkorbit;
using namespace hkorbit::testing;

namespace {

const Complex<double> I{0, 1};

M random_invertible(int n, std::mt19937_64& rng) {
  return M::Identity(n, n) + 0.3 * algebra::random_complex<double>(n, n, rng);
}

}  // namespace

TEST_CASE("certificate and orbit points") {
  const auto ctx = algebra::build_context(4, 2, 1.0);
  CHECK(orbit::certify(ctx, M(M::Zero(4, 4))).ok());
  CHECK(!orbit::certify(ctx, M(M::Identity(4, 4))).ok());
  CHECK_THROWS_AS(orbit::make_point(ctx, M(M::Identity(4, 4))), Error);
  CHECK_THROWS_AS(orbit::certify(ctx, M(M::Zero(3, 3))), Error);
}

TEST_CASE("affine action") {
  const auto ctx = algebra::build_context(4, 2, 0.5);
  std::mt19937_64 rng(2);
  const orbit::OrbitPoint<double> zero{M::Zero(4, 4)};
  const auto y = orbit::ad_D(ctx, random_invertible(4, rng), zero);
  CHECK(dist(orbit::ad_D(ctx, M(M::Identity(4, 4)), y).y, y.y) < 1e-14);

  const M u = algebra::random_unitary<double>(4, rng);
  const auto x = orbit::ad_D(ctx, u, zero);
  CHECK(orbit::is_compact(x.y));
  CHECK(!orbit::is_compact(y.y));

  const M g1 = random_invertible(4, rng), g2 = random_invertible(4, rng);
  const auto lhs = orbit::ad_D(ctx, g2, orbit::ad_D(ctx, g1, y));
  const auto rhs = orbit::ad_D(ctx, M(g2 * g1), y);
  CHECK(dist(lhs.y, rhs.y) < 1e-10 * std::max(1.0, rhs.y.norm()));
  CHECK_THROWS_AS(orbit::ad_D(ctx, M(M::Zero(4, 4)), y), Error);
}

TEST_CASE("holomorphic symplectic form at the base point") {
  const auto ctx = algebra::build_context(2, 1, 1.0);
  const auto sos = roots::build_sos(ctx);
  CHECK(std::abs(orbit::kks_form(ctx, sos[0].x, sos[0].y) - Complex<double>(4)) < 1e-14);
  CHECK(std::abs(orbit::kks_form(ctx, sos[0].x, sos[0].x)) < 1e-14);

  // nondegenerate on the complexified tangent space m0 + i m0
  const auto ctx4 = algebra::build_context(4, 2, 1.0);
  std::vector<M> basis;
  for (const auto& b : algebra::m0_basis(ctx4)) {
    basis.push_back(b);
    basis.push_back(I * b);
  }
  RMatrix<double> form(basis.size(), basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < basis.size(); ++j)
      form(Eigen::Index(i), Eigen::Index(j)) = orbit::kks_form(ctx4, basis[i], basis[j]).real();
  CHECK(Eigen::FullPivLU<RMatrix<double>>(form).rank() == Eigen::Index(basis.size()));
}

TEST_CASE("Kahler metric of the compact orbit") {
  const auto ctx = algebra::build_context(2, 1, 1.0);
  const auto sos = roots::build_sos(ctx);
  const M zero = M::Zero(2, 2);
  CHECK(orbit::kahler_metric_O(ctx, zero, sos[0].x, sos[0].x) == doctest::Approx(16.0));
  CHECK(orbit::kahler_metric_O(ctx, zero, sos[0].x, sos[0].y) == doctest::Approx(0.0));

  const auto ctx5 = algebra::build_context(5, 2, 0.7);
  std::mt19937_64 rng(4);
  const M x = compact_point(ctx5, rng);
  const M c = random_mx(ctx5, x, 1, 1.0), d = random_mx(ctx5, x, 2, 1.0);
  const M ic = orbit::complex_structure_at(ctx5, x, c), id = orbit::complex_structure_at(ctx5, x, d);
  CHECK(orbit::mx_residual(ctx5, x, ic) < 1e-13);
  CHECK(orbit::kahler_metric_O(ctx5, x, ic, id) ==
        doctest::Approx(orbit::kahler_metric_O(ctx5, x, c, d)));
  CHECK_THROWS_AS(orbit::kahler_metric_O(ctx5, x, M(x + ctx5.D), d), Error);
}

TEST_CASE("subspace pairs") {
  const auto ctx = algebra::build_context(4, 2, 1.0);
  orbit::SubspacePair<double> base{M::Identity(4, 4).leftCols(2), M::Identity(4, 4).rightCols(2)};
  CHECK(orbit::point_from_pair(ctx, base).y.norm() < 1e-15);

  std::mt19937_64 rng(5);
  const M u = algebra::random_unitary<double>(4, rng);
  const auto rotated = orbit::point_from_pair(ctx, {u.leftCols(2), u.rightCols(2)});
  CHECK(orbit::is_compact(rotated.y));

  const M f = random_invertible(4, rng);
  const auto y = orbit::point_from_pair(ctx, {f.leftCols(2), f.rightCols(2)});
  CHECK(orbit::certify(ctx, y.y).ok());
  const auto sp = orbit::pair_from_point(ctx, y);
  CHECK(dist(orbit::point_from_pair(ctx, sp).y, y.y) < 1e-9);

  CHECK_THROWS_AS(orbit::point_from_pair(ctx, {M(M::Zero(4, 2)), M(M::Identity(4, 4).rightCols(2))}),
                  Error);
  CHECK_THROWS_AS(orbit::point_from_pair(ctx, {M(M::Identity(3, 3).leftCols(2)), M(M::Identity(3, 3))}),
                  Error);
}

TEST_CASE("holomorphic chart") {
  const auto ctx = algebra::build_context(4, 2, 1.0);
  std::mt19937_64 rng(6);
  const orbit::HolomorphicChart<double> chart(ctx, orbit::OrbitPoint<double>{M(M::Zero(4, 4))});
  CHECK(chart.dim() == 8);
  const CVector<double> z0 = CVector<double>::Zero(chart.dim());
  CHECK(chart.point(z0).norm() < 1e-14);
  const CVector<double> z = 0.3 * CVector<double>::Random(chart.dim());
  CHECK(orbit::certify(ctx, chart.point(z)).ok());
  // complex-linear differential: d(iv) = i dv
  const CVector<double> v = CVector<double>::Random(chart.dim());
  const M dv = chart.differential(z, v);
  const M div = chart.differential(z, CVector<double>(I * v));
  CHECK(dist(div, M(I * dv)) < 1e-12 * dv.norm());
}
