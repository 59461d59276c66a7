#pragma once

#include "hkorbit/algebra.hpp"

#include <Eigen/SVD>

#include <vector>

namespace hkorbit::roots {

template <typename Scalar>
struct RootTriple {
  CMatrix<Scalar> x;
  CMatrix<Scalar> y;  // I x
  CMatrix<Scalar> h;  // [x, y] = 2i h
};

/// Maximal strongly orthogonal system built from matrix units E_{a, k+a}.
template <typename Scalar>
struct SOSystem {
  std::vector<RootTriple<Scalar>> triples;

  std::size_t size() const { return triples.size(); }
  const RootTriple<Scalar>& operator[](std::size_t i) const { return triples[i]; }
};

template <typename Scalar>
SOSystem<Scalar> build_sos(const algebra::Context<Scalar>& ctx) {
  const int n = ctx.n, k = ctx.k;
  const Complex<Scalar> i = imag_unit<Scalar>();
  SOSystem<Scalar> sos;
  for (int a = 0; a < ctx.rank(); ++a) {
    RootTriple<Scalar> t;
    t.x = CMatrix<Scalar>::Zero(n, n);
    t.x(a, k + a) = 1;
    t.x(k + a, a) = -1;
    t.y = CMatrix<Scalar>::Zero(n, n);
    t.y(a, k + a) = i;
    t.y(k + a, a) = i;
    t.h = CMatrix<Scalar>::Zero(n, n);
    t.h(a, a) = 1;
    t.h(k + a, k + a) = -1;
    sos.triples.push_back(std::move(t));
  }
  return sos;
}

/// V = Ad(conjugator)(sum_a coeffs[a] x_a) with conjugator in K = U(k) x U(n-k).
template <typename Scalar>
struct MaxAbelianCoords {
  CMatrix<Scalar> conjugator;
  RVector<Scalar> coeffs;
};

template <typename Scalar>
CMatrix<Scalar> abelian_element(const SOSystem<Scalar>& sos, const RVector<Scalar>& coeffs) {
  CMatrix<Scalar> out = CMatrix<Scalar>::Zero(sos[0].x.rows(), sos[0].x.cols());
  for (std::size_t a = 0; a < sos.size(); ++a) out += coeffs(Eigen::Index(a)) * sos[a].x;
  return out;
}

template <typename Scalar>
CMatrix<Scalar> reconstruct(const SOSystem<Scalar>& sos, const MaxAbelianCoords<Scalar>& coords) {
  return coords.conjugator * abelian_element(sos, coords.coeffs) * coords.conjugator.adjoint();
}

/// Normal form of V in m0 from the SVD of its top-right block Z = U S W^*.
template <typename Scalar>
MaxAbelianCoords<Scalar> to_abelian_coords(const algebra::Context<Scalar>& ctx,
                                           const SOSystem<Scalar>& sos,
                                           const CMatrix<Scalar>& v) {
  const int n = ctx.n, k = ctx.k;
  const CMatrix<Scalar> z = v.topRightCorner(k, n - k);
  Eigen::JacobiSVD<CMatrix<Scalar>> svd(z, Eigen::ComputeFullU | Eigen::ComputeFullV);
  MaxAbelianCoords<Scalar> out;
  out.conjugator = CMatrix<Scalar>::Zero(n, n);
  out.conjugator.topLeftCorner(k, k) = svd.matrixU();
  out.conjugator.bottomRightCorner(n - k, n - k) = svd.matrixV();
  out.coeffs = svd.singularValues().head(Eigen::Index(sos.size()));
  return out;
}

/// Curvature R(A, B) C = [[A, B], C] on m_x.
template <typename Scalar>
CMatrix<Scalar> curvature_R(const CMatrix<Scalar>& a, const CMatrix<Scalar>& b,
                            const CMatrix<Scalar>& c) {
  return algebra::commutator(algebra::commutator(a, b), c);
}

}  // namespace hkorbit::roots
