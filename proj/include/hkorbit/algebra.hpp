#pragma once

#include "hkorbit/types.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace hkorbit::algebra {

/// Fixed data of one orbit: D = i kappa (p_plus - p_minus) on C^n, with p_plus
/// the projector onto the first k coordinates.
template <typename Scalar>
struct Context {
  int n = 0;
  int k = 0;
  Scalar kappa = 0;
  CMatrix<Scalar> D;
  Scalar c = 0;  // ad(D)^2 = -c^2 on m0
  CMatrix<Scalar> p_plus;
  CMatrix<Scalar> p_minus;

  int rank() const { return std::min(k, n - k); }
  // real dimension of m0
  int m_dim() const { return 2 * k * (n - k); }
};

template <typename Scalar = double>
Context<Scalar> build_context(int n, int k, Scalar kappa) {
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "n must be at least 2");
  if (k < 1 || k > n - 1)
    throw Error(ErrorKind::InvalidArgument, "k must lie in [1, n-1]");
  if (!(kappa > 0)) throw Error(ErrorKind::InvalidArgument, "kappa must be positive");

  Context<Scalar> ctx;
  ctx.n = n;
  ctx.k = k;
  ctx.kappa = kappa;
  ctx.p_plus = CMatrix<Scalar>::Zero(n, n);
  ctx.p_plus.topLeftCorner(k, k).setIdentity();
  ctx.p_minus = CMatrix<Scalar>::Identity(n, n) - ctx.p_plus;
  ctx.D = imag_unit<Scalar>() * kappa * (ctx.p_plus - ctx.p_minus);

  // c is the gap between the two distinct eigenvalues of -iD
  CMatrix<Scalar> herm = -imag_unit<Scalar>() * ctx.D;
  Eigen::SelfAdjointEigenSolver<CMatrix<Scalar>> es(herm, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  ctx.c = ev.maxCoeff() - ev.minCoeff();
  using std::abs;
  if (abs(ctx.c - 2 * kappa) > Scalar(1e-12) * kappa)
    throw Error(ErrorKind::InvalidArgument, "spectral constant disagrees with 2*kappa");
  return ctx;
}

template <typename Scalar>
CMatrix<Scalar> commutator(const CMatrix<Scalar>& x, const CMatrix<Scalar>& y) {
  return x * y - y * x;
}

/// Trace form Tr(x^* y).
template <typename Scalar>
Complex<Scalar> inner(const CMatrix<Scalar>& x, const CMatrix<Scalar>& y) {
  return x.conjugate().cwiseProduct(y).sum();
}

template <typename Scalar>
Scalar real_inner(const CMatrix<Scalar>& x, const CMatrix<Scalar>& y) {
  return inner(x, y).real();
}

template <typename Scalar>
CMatrix<Scalar> skew_part(const CMatrix<Scalar>& x) {
  return Scalar(0.5) * (x - x.adjoint());
}

/// Imaginary part in g^C = g + i g: x = re + i im with re, im skew-Hermitian.
template <typename Scalar>
CMatrix<Scalar> imag_part(const CMatrix<Scalar>& x) {
  return (x + x.adjoint()) / (Scalar(2) * imag_unit<Scalar>());
}

template <typename Scalar>
Scalar skew_residual(const CMatrix<Scalar>& x) {
  return (x + x.adjoint()).norm() / Scalar(2);
}

template <typename Scalar>
CMatrix<Scalar> block_diagonal(const Context<Scalar>& ctx, const CMatrix<Scalar>& x) {
  return ctx.p_plus * x * ctx.p_plus + ctx.p_minus * x * ctx.p_minus;
}

template <typename Scalar>
CMatrix<Scalar> block_off_diagonal(const Context<Scalar>& ctx, const CMatrix<Scalar>& x) {
  return ctx.p_plus * x * ctx.p_minus + ctx.p_minus * x * ctx.p_plus;
}

/// Orthogonal projection (real trace form) onto the named subspace.
template <typename Scalar>
CMatrix<Scalar> project(const Context<Scalar>& ctx, const CMatrix<Scalar>& x, SpaceTag target) {
  const int n = ctx.n, k = ctx.k;
  CMatrix<Scalar> out = CMatrix<Scalar>::Zero(n, n);
  switch (target) {
    case SpaceTag::gC:
      return x;
    case SpaceTag::g:
      return skew_part(x);
    case SpaceTag::k0: {
      CMatrix<Scalar> s = skew_part(x);
      out.topLeftCorner(k, k) = s.topLeftCorner(k, k);
      out.bottomRightCorner(n - k, n - k) = s.bottomRightCorner(n - k, n - k);
      return out;
    }
    case SpaceTag::m0: {
      CMatrix<Scalar> s = skew_part(x);
      out.topRightCorner(k, n - k) = s.topRightCorner(k, n - k);
      out.bottomLeftCorner(n - k, k) = s.bottomLeftCorner(n - k, k);
      return out;
    }
    case SpaceTag::mPlus:
      out.topRightCorner(k, n - k) = x.topRightCorner(k, n - k);
      return out;
    case SpaceTag::mMinus:
      out.bottomLeftCorner(n - k, k) = x.bottomLeftCorner(n - k, k);
      return out;
  }
  return out;
}

/// Distance of x from the named subspace, relative to max(1, |x|).
template <typename Scalar>
Scalar tag_residual(const Context<Scalar>& ctx, const CMatrix<Scalar>& x, SpaceTag tag) {
  return (x - project(ctx, x, tag)).norm() / std::max(Scalar(1), x.norm());
}

template <typename Scalar>
Element<Scalar> make_element(const Context<Scalar>& ctx, CMatrix<Scalar> mat, SpaceTag tag,
                             Scalar tol = Scalar(1e-10)) {
  if (mat.rows() != ctx.n || mat.cols() != ctx.n)
    throw Error(ErrorKind::DimensionMismatch, "element must be n x n");
  if (tag_residual(ctx, mat, tag) > tol)
    throw Error(ErrorKind::NotInSubspace,
                "matrix is not in " + std::string(to_string(tag)));
  return Element<Scalar>{std::move(mat), tag};
}

template <typename Scalar>
Element<Scalar> project(const Context<Scalar>& ctx, const Element<Scalar>& x, SpaceTag target) {
  return Element<Scalar>{project(ctx, x.mat, target), target};
}

template <typename Scalar>
Element<Scalar> bracket(const Context<Scalar>& ctx, const Element<Scalar>& x,
                        const Element<Scalar>& y, Scalar tol = Scalar(1e-10)) {
  if (x.mat.rows() != y.mat.rows() || x.mat.cols() != y.mat.cols())
    throw Error(ErrorKind::DimensionMismatch, "bracket operands differ in size");
  Element<Scalar> out{commutator(x.mat, y.mat), SpaceTag::gC};
  const bool xk = x.tag == SpaceTag::k0, xm = x.tag == SpaceTag::m0;
  const bool yk = y.tag == SpaceTag::k0, ym = y.tag == SpaceTag::m0;
  if (xk && yk)
    out.tag = SpaceTag::k0;
  else if ((xk && ym) || (xm && yk))
    out.tag = SpaceTag::m0;
  else if (xm && ym)
    out.tag = SpaceTag::k0;
  else if (skew_residual(out.mat) <= tol * std::max(Scalar(1), out.mat.norm()))
    out.tag = SpaceTag::g;
  (void)ctx;
  return out;
}

template <typename Scalar>
Complex<Scalar> inner(const Element<Scalar>& x, const Element<Scalar>& y) {
  if (x.mat.rows() != y.mat.rows() || x.mat.cols() != y.mat.cols())
    throw Error(ErrorKind::DimensionMismatch, "inner operands differ in size");
  return inner(x.mat, y.mat);
}

/// I = (1/c) ad(D) on m0: top-right block Z -> iZ, bottom-left W -> -iW.
template <typename Scalar>
CMatrix<Scalar> complex_structure_I(const Context<Scalar>& ctx, const CMatrix<Scalar>& m) {
  return commutator(ctx.D, m) / ctx.c;
}

template <typename Scalar>
Element<Scalar> complex_structure_I(const Context<Scalar>& ctx, const Element<Scalar>& m,
                                    Scalar tol = Scalar(1e-10)) {
  if (project(ctx, m.mat, SpaceTag::k0).norm() > tol * std::max(Scalar(1), m.mat.norm()) ||
      tag_residual(ctx, m.mat, SpaceTag::m0) > tol)
    throw Error(ErrorKind::NotInSubspace, "complex structure is defined on m0 only");
  return Element<Scalar>{complex_structure_I(ctx, m.mat), SpaceTag::m0};
}

template <typename Scalar = double>
CMatrix<Scalar> random_complex(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<Scalar> normal(Scalar(0), Scalar(1));
  CMatrix<Scalar> out(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) {
      const Scalar re = normal(rng);
      const Scalar im = normal(rng);
      out(i, j) = Complex<Scalar>(re, im);
    }
  return out;
}

/// Random element of the named subspace with Frobenius norm `scale`.
template <typename Scalar>
Element<Scalar> random_element(const Context<Scalar>& ctx, SpaceTag tag, std::uint64_t seed,
                               Scalar scale = Scalar(1)) {
  if (!(scale > 0)) throw Error(ErrorKind::InvalidArgument, "scale must be positive");
  std::mt19937_64 rng(seed);
  CMatrix<Scalar> raw = random_complex<Scalar>(ctx.n, ctx.n, rng);
  CMatrix<Scalar> mat = project(ctx, raw, tag);
  mat *= scale / mat.norm();
  return Element<Scalar>{std::move(mat), tag};
}

template <typename Scalar>
CMatrix<Scalar> random_unitary(int n, std::mt19937_64& rng) {
  Eigen::HouseholderQR<CMatrix<Scalar>> qr(random_complex<Scalar>(n, n, rng));
  CMatrix<Scalar> q = qr.householderQ();
  // fix column phases so the distribution is Haar
  const CMatrix<Scalar>& r = qr.matrixQR();
  for (int j = 0; j < n; ++j) {
    using std::abs;
    const Complex<Scalar> d = r(j, j);
    if (abs(d) > 0) q.col(j) *= d / abs(d);
  }
  return q;
}

/// Orthonormal real basis of m0 for Re<.,.>, ordered by (row, column, real/imag).
template <typename Scalar>
std::vector<CMatrix<Scalar>> m0_basis(const Context<Scalar>& ctx) {
  using std::sqrt;
  const Scalar s = Scalar(1) / sqrt(Scalar(2));
  const Complex<Scalar> i = imag_unit<Scalar>();
  std::vector<CMatrix<Scalar>> basis;
  basis.reserve(ctx.m_dim());
  for (int p = 0; p < ctx.k; ++p)
    for (int q = ctx.k; q < ctx.n; ++q) {
      CMatrix<Scalar> e = CMatrix<Scalar>::Zero(ctx.n, ctx.n);
      e(p, q) = s;
      e(q, p) = -s;
      basis.push_back(e);
      e(p, q) = i * s;
      e(q, p) = i * s;
      basis.push_back(std::move(e));
    }
  return basis;
}

template <typename Scalar>
std::vector<CMatrix<Scalar>> conjugate_basis(const std::vector<CMatrix<Scalar>>& basis,
                                             const CMatrix<Scalar>& u) {
  std::vector<CMatrix<Scalar>> out;
  out.reserve(basis.size());
  for (const auto& b : basis) out.push_back(u * b * u.adjoint());
  return out;
}

template <typename Scalar>
RVector<Scalar> coordinates(const std::vector<CMatrix<Scalar>>& basis, const CMatrix<Scalar>& m) {
  RVector<Scalar> out(static_cast<Eigen::Index>(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i) out(Eigen::Index(i)) = real_inner(basis[i], m);
  return out;
}

template <typename Scalar>
CMatrix<Scalar> from_coordinates(const std::vector<CMatrix<Scalar>>& basis,
                                 const RVector<Scalar>& coords) {
  CMatrix<Scalar> out = CMatrix<Scalar>::Zero(basis.front().rows(), basis.front().cols());
  for (std::size_t i = 0; i < basis.size(); ++i) out += coords(Eigen::Index(i)) * basis[i];
  return out;
}

}  // namespace hkorbit::algebra
