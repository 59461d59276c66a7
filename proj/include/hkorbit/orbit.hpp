#pragma once

#include "hkorbit/algebra.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>

#include <limits>
#include <vector>

namespace hkorbit::orbit {

/// A point y of the complex orbit: y + D has eigenvalues i kappa (k times)
/// and -i kappa (n - k times).
template <typename Scalar>
struct OrbitPoint {
  CMatrix<Scalar> y;
};

template <typename Scalar>
struct Certificate {
  Scalar square_residual = 0;  // |(y+D)^2 + kappa^2| / max(1, |y+D|^2)
  Scalar trace_residual = 0;   // |Tr(projector) - k|
  bool ok(Scalar tol = Scalar(1e-8)) const {
    return square_residual <= tol && trace_residual <= tol;
  }
};

/// Spectral projector onto the i kappa eigenspace of s = y + D, along the other one.
template <typename Scalar>
CMatrix<Scalar> eigen_projector(const algebra::Context<Scalar>& ctx, const CMatrix<Scalar>& s) {
  const Eigen::Index n = s.rows();
  return Scalar(0.5) * (CMatrix<Scalar>::Identity(n, n) - imag_unit<Scalar>() * s / ctx.kappa);
}

template <typename Scalar>
Certificate<Scalar> certify(const algebra::Context<Scalar>& ctx, const CMatrix<Scalar>& y) {
  if (y.rows() != ctx.n || y.cols() != ctx.n)
    throw Error(ErrorKind::DimensionMismatch, "orbit point must be n x n");
  const CMatrix<Scalar> s = y + ctx.D;
  const CMatrix<Scalar> sq =
      s * s + ctx.kappa * ctx.kappa * CMatrix<Scalar>::Identity(ctx.n, ctx.n);
  Certificate<Scalar> cert;
  cert.square_residual = sq.norm() / std::max(Scalar(1), s.squaredNorm());
  using std::abs;
  cert.trace_residual = abs(eigen_projector(ctx, s).trace() - Complex<Scalar>(Scalar(ctx.k)));
  return cert;
}

template <typename Scalar>
OrbitPoint<Scalar> make_point(const algebra::Context<Scalar>& ctx, CMatrix<Scalar> y,
                              Scalar tol = Scalar(1e-8)) {
  if (!certify(ctx, y).ok(tol))
    throw Error(ErrorKind::CertificateFailure, "y + D does not have the orbit spectrum");
  return OrbitPoint<Scalar>{std::move(y)};
}

template <typename Scalar>
bool is_compact(const CMatrix<Scalar>& y, Scalar tol = Scalar(1e-10)) {
  return algebra::skew_residual(y) <= tol * std::max(Scalar(1), y.norm());
}

/// g (y + D) g^{-1} - D.
template <typename Scalar>
OrbitPoint<Scalar> ad_D(const algebra::Context<Scalar>& ctx, const CMatrix<Scalar>& g,
                        const OrbitPoint<Scalar>& y) {
  Eigen::FullPivLU<CMatrix<Scalar>> lu(g);
  if (!lu.isInvertible()) throw Error(ErrorKind::SingularSystem, "group element is singular");
  CMatrix<Scalar> out = g * (y.y + ctx.D) * lu.inverse() - ctx.D;
  return make_point(ctx, std::move(out));
}

/// Unitary u with x + D = u D u^* for a point x of the compact orbit.
template <typename Scalar>
CMatrix<Scalar> compact_frame(const algebra::Context<Scalar>& ctx, const CMatrix<Scalar>& x) {
  CMatrix<Scalar> h = -imag_unit<Scalar>() * (x + ctx.D);
  h = Scalar(0.5) * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix<Scalar>> es(h);
  const int n = ctx.n, k = ctx.k;
  CMatrix<Scalar> u(n, n);
  // ascending eigenvalues: the top k belong to +kappa
  u.leftCols(k) = es.eigenvectors().rightCols(k);
  u.rightCols(n - k) = es.eigenvectors().leftCols(n - k);
  return u;
}

/// The involution (x + D)/(i kappa) at a compact point.
template <typename Scalar>
CMatrix<Scalar> involution(const algebra::Context<Scalar>& ctx, const CMatrix<Scalar>& x) {
  return (x + ctx.D) / (imag_unit<Scalar>() * ctx.kappa);
}

/// Orthogonal projection onto m_x = {a skew-Hermitian, a anticommutes with x + D}.
template <typename Scalar>
CMatrix<Scalar> project_mx(const algebra::Context<Scalar>& ctx, const CMatrix<Scalar>& x,
                           const CMatrix<Scalar>& a) {
  const CMatrix<Scalar> s = involution(ctx, x);
  const CMatrix<Scalar> skew = algebra::skew_part(a);
  return Scalar(0.5) * (skew - s * skew * s);
}

template <typename Scalar>
Scalar mx_residual(const algebra::Context<Scalar>& ctx, const CMatrix<Scalar>& x,
                   const CMatrix<Scalar>& a) {
  return (a - project_mx(ctx, x, a)).norm() / std::max(Scalar(1), a.norm());
}

/// Complex structure I_x = (1/c) ad(x + D) on m_x.
template <typename Scalar>
CMatrix<Scalar> complex_structure_at(const algebra::Context<Scalar>& ctx,
                                     const CMatrix<Scalar>& x, const CMatrix<Scalar>& m) {
  return algebra::commutator<Scalar>(x + ctx.D, m) / ctx.c;
}

template <typename Scalar>
std::vector<CMatrix<Scalar>> mx_basis(const algebra::Context<Scalar>& ctx,
                                      const CMatrix<Scalar>& frame) {
  return algebra::conjugate_basis(algebra::m0_basis(ctx), frame);
}

/// Holomorphic symplectic form Tr(X [y + D, Y]) on ambient tangent vectors at y.
template <typename Scalar>
Complex<Scalar> kks_form(const algebra::Context<Scalar>& ctx, const CMatrix<Scalar>& y,
                         const CMatrix<Scalar>& X, const CMatrix<Scalar>& Y) {
  return (X * algebra::commutator<Scalar>(y + ctx.D, Y)).trace();
}

template <typename Scalar>
Complex<Scalar> kks_form(const algebra::Context<Scalar>& ctx, const CMatrix<Scalar>& X,
                         const CMatrix<Scalar>& Y) {
  return (X * algebra::commutator(ctx.D, Y)).trace();
}

/// Kahler metric of the compact orbit in m_x coordinates: c^3 Re<c, d>.
template <typename Scalar>
Scalar kahler_metric_O(const algebra::Context<Scalar>& ctx, const CMatrix<Scalar>& x,
                       const CMatrix<Scalar>& c, const CMatrix<Scalar>& d,
                       Scalar tol = Scalar(1e-9)) {
  if (mx_residual(ctx, x, c) > tol || mx_residual(ctx, x, d) > tol)
    throw Error(ErrorKind::NotInSubspace, "metric arguments must lie in m_x");
  return ctx.c * ctx.c * ctx.c * algebra::real_inner(c, d);
}

/// Eigenspaces of y + D: P for i kappa, Q for -i kappa (orthonormal frames).
template <typename Scalar>
struct SubspacePair {
  CMatrix<Scalar> P;
  CMatrix<Scalar> Q;
};

template <typename Scalar>
Scalar pair_condition(const SubspacePair<Scalar>& sp) {
  CMatrix<Scalar> f(sp.P.rows(), sp.P.cols() + sp.Q.cols());
  f << sp.P, sp.Q;
  Eigen::JacobiSVD<CMatrix<Scalar>> svd(f);
  const auto& s = svd.singularValues();
  if (s(s.size() - 1) <= 0) return std::numeric_limits<Scalar>::infinity();
  return s(0) / s(s.size() - 1);
}

template <typename Scalar>
CMatrix<Scalar> orthonormal_range(const CMatrix<Scalar>& m, int rank) {
  Eigen::JacobiSVD<CMatrix<Scalar>> svd(m, Eigen::ComputeThinU);
  return svd.matrixU().leftCols(rank);
}

template <typename Scalar>
SubspacePair<Scalar> pair_from_point(const algebra::Context<Scalar>& ctx,
                                     const OrbitPoint<Scalar>& y) {
  if (!certify(ctx, y.y).ok())
    throw Error(ErrorKind::CertificateFailure, "y + D does not have the orbit spectrum");
  const CMatrix<Scalar> proj = eigen_projector<Scalar>(ctx, y.y + ctx.D);
  const CMatrix<Scalar> comp = CMatrix<Scalar>::Identity(ctx.n, ctx.n) - proj;
  SubspacePair<Scalar> sp{orthonormal_range(proj, ctx.k), orthonormal_range(comp, ctx.n - ctx.k)};
  if (pair_condition(sp) > Scalar(1e8))
    throw Error(ErrorKind::CertificateFailure, "eigenspaces are nearly degenerate");
  return sp;
}

/// y with y + D = i kappa (pi_P - pi_Q), pi_P the projection onto P along Q.
template <typename Scalar>
OrbitPoint<Scalar> point_from_pair(const algebra::Context<Scalar>& ctx,
                                   const SubspacePair<Scalar>& sp) {
  const int n = ctx.n, k = ctx.k;
  if (sp.P.rows() != n || sp.P.cols() != k || sp.Q.rows() != n || sp.Q.cols() != n - k)
    throw Error(ErrorKind::DimensionMismatch, "subspace pair has the wrong shape");
  if (pair_condition(sp) > Scalar(1e8))
    throw Error(ErrorKind::CertificateFailure, "subspaces are not transverse");
  CMatrix<Scalar> f(n, n);
  f << sp.P, sp.Q;
  Eigen::PartialPivLU<CMatrix<Scalar>> lu(f);
  CMatrix<Scalar> e = CMatrix<Scalar>::Zero(n, n);
  e.topLeftCorner(k, k).setIdentity();
  const CMatrix<Scalar> pi_p = f * e * lu.inverse();
  CMatrix<Scalar> y = imag_unit<Scalar>() * ctx.kappa *
                          (Scalar(2) * pi_p - CMatrix<Scalar>::Identity(n, n)) -
                      ctx.D;
  return OrbitPoint<Scalar>{std::move(y)};
}

/// Holomorphic chart around a subspace pair (P0, Q0):
/// (Z, W) -> span(P0 + Q0 Z), span(Q0 + P0 W), with Z of size (n-k) x k and
/// W of size k x (n-k). Coordinates are stored as one complex vector, Z then W,
/// each column-major.
template <typename Scalar>
class HolomorphicChart {
 public:
  HolomorphicChart(const algebra::Context<Scalar>& ctx, SubspacePair<Scalar> origin)
      : ctx_(ctx), origin_(std::move(origin)) {}

  HolomorphicChart(const algebra::Context<Scalar>& ctx, const OrbitPoint<Scalar>& y)
      : HolomorphicChart(ctx, pair_from_point(ctx, y)) {}

  int dim() const { return 2 * ctx_.k * (ctx_.n - ctx_.k); }

  CMatrix<Scalar> frame(const CVector<Scalar>& z) const {
    const int n = ctx_.n, k = ctx_.k, m = n - k;
    check(z);
    const Eigen::Map<const CMatrix<Scalar>> zb(z.data(), m, k);
    const Eigen::Map<const CMatrix<Scalar>> wb(z.data() + m * k, k, m);
    CMatrix<Scalar> f(n, n);
    f.leftCols(k) = origin_.P + origin_.Q * zb;
    f.rightCols(m) = origin_.Q + origin_.P * wb;
    return f;
  }

  CMatrix<Scalar> point(const CVector<Scalar>& z) const { return evaluate(z).y; }

  /// Ambient differential dy(z)[dz].
  CMatrix<Scalar> differential(const CVector<Scalar>& z, const CVector<Scalar>& dz) const {
    const auto ev = evaluate(z);
    const CMatrix<Scalar> df = frame_direction(dz);
    const CMatrix<Scalar> dpi = df * selector() * ev.f_inv - ev.pi_p * df * ev.f_inv;
    return Scalar(2) * imag_unit<Scalar>() * ctx_.kappa * dpi;
  }

  const SubspacePair<Scalar>& origin() const { return origin_; }

 private:
  struct Evaluation {
    CMatrix<Scalar> y;
    CMatrix<Scalar> pi_p;
    CMatrix<Scalar> f_inv;
  };

  void check(const CVector<Scalar>& z) const {
    if (z.size() != dim()) throw Error(ErrorKind::DimensionMismatch, "chart coordinate size");
  }

  CMatrix<Scalar> selector() const {
    CMatrix<Scalar> e = CMatrix<Scalar>::Zero(ctx_.n, ctx_.n);
    e.topLeftCorner(ctx_.k, ctx_.k).setIdentity();
    return e;
  }

  // derivative of the frame along dz (the frame is affine in z)
  CMatrix<Scalar> frame_direction(const CVector<Scalar>& dz) const {
    const int n = ctx_.n, k = ctx_.k, m = n - k;
    check(dz);
    const Eigen::Map<const CMatrix<Scalar>> zb(dz.data(), m, k);
    const Eigen::Map<const CMatrix<Scalar>> wb(dz.data() + m * k, k, m);
    CMatrix<Scalar> f(n, n);
    f.leftCols(k) = origin_.Q * zb;
    f.rightCols(m) = origin_.P * wb;
    return f;
  }

  Evaluation evaluate(const CVector<Scalar>& z) const {
    const CMatrix<Scalar> f = frame(z);
    Eigen::FullPivLU<CMatrix<Scalar>> lu(f);
    if (!lu.isInvertible() || lu.rcond() < Scalar(1e-8))
      throw Error(ErrorKind::SingularSystem, "chart breaks down: subspaces not transverse");
    Evaluation ev;
    ev.f_inv = lu.inverse();
    ev.pi_p = f * selector() * ev.f_inv;
    ev.y = imag_unit<Scalar>() * ctx_.kappa *
               (Scalar(2) * ev.pi_p - CMatrix<Scalar>::Identity(ctx_.n, ctx_.n)) -
           ctx_.D;
    return ev;
  }

  algebra::Context<Scalar> ctx_;
  SubspacePair<Scalar> origin_;
};

}  // namespace hkorbit::orbit
