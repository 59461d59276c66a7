#pragma once

#include "hkorbit/fiber_maps.hpp"
#include "hkorbit/mostow.hpp"
#include "hkorbit/orbit.hpp"
#include "hkorbit/speccalc.hpp"

#include <vector>

namespace hkorbit::tangent {

/// A point (x, V) of the tangent bundle of the compact orbit, V in m_x.
template <typename Scalar>
struct TangentBundlePoint {
  CMatrix<Scalar> x;
  CMatrix<Scalar> V;
  CMatrix<Scalar> frame;  // x + D = frame D frame^*
};

/// Split tangent vector: horizontal h in m_x, vertical v in i m_x.
template <typename Scalar>
struct TBVector {
  CMatrix<Scalar> h;
  CMatrix<Scalar> v;
};

template <typename Scalar>
TangentBundlePoint<Scalar> make_tb_point(const algebra::Context<Scalar>& ctx,
                                         const CMatrix<Scalar>& x, const CMatrix<Scalar>& V,
                                         Scalar tol = Scalar(1e-9)) {
  if (!orbit::is_compact(x, tol) || !orbit::certify(ctx, x).ok())
    throw Error(ErrorKind::CertificateFailure, "base point is not in the compact orbit");
  if (orbit::mx_residual(ctx, x, V) > tol)
    throw Error(ErrorKind::NotInSubspace, "tangent vector must lie in m_x");
  return {x, V, orbit::compact_frame(ctx, x)};
}

/// y -> (pi(y), -(1/c) I_{pi(y)} Im y).
template <typename Scalar>
TangentBundlePoint<Scalar> upsilon(const algebra::Context<Scalar>& ctx,
                                   const mostow::FiberedPoint<Scalar>& p) {
  const CMatrix<Scalar> im = orbit::project_mx(ctx, p.x, algebra::imag_part(p.y));
  CMatrix<Scalar> V = -orbit::complex_structure_at(ctx, p.x, im) / ctx.c;
  return {p.x, std::move(V), p.frame};
}

template <typename Scalar>
TangentBundlePoint<Scalar> upsilon(const algebra::Context<Scalar>& ctx, const CMatrix<Scalar>& y) {
  return upsilon(ctx, mostow::decompose(ctx, y));
}

/// Inverse of upsilon: (x, V) -> forward(x, frame f2(frame^* V frame) frame^*).
template <typename Scalar>
CMatrix<Scalar> upsilon_inverse(const algebra::Context<Scalar>& ctx,
                                const TangentBundlePoint<Scalar>& q) {
  const CMatrix<Scalar> v0 = q.frame.adjoint() * q.V * q.frame;
  const CMatrix<Scalar> a0 = f2(ctx, algebra::project(ctx, v0, SpaceTag::m0));
  return mostow::forward(ctx, q.x, CMatrix<Scalar>(q.frame * a0 * q.frame.adjoint()));
}

/// The metric operator A_V = Id + I R_{I V', V'} on m_x, V' = phi(I R_{IV,V})(V),
/// assembled once per point together with its spectral inverse.
template <typename Scalar>
class AOperator {
 public:
  AOperator(const algebra::Context<Scalar>& ctx, const TangentBundlePoint<Scalar>& q)
      : ctx_(ctx), q_(q), basis_(orbit::mx_basis(ctx, q.frame)) {
    using algebra::commutator;
    const CMatrix<Scalar> iv = I(q_.V);
    speccalc::LinearMap<Scalar> curv = [&](const CMatrix<Scalar>& w) -> CMatrix<Scalar> {
      return I(commutator(commutator(iv, q_.V), w));
    };
    v_prime_ = speccalc::apply_operator_function(speccalc::phi_bg_kernel<Scalar>(), curv, q_.V,
                                                 basis_);
    shift_ = commutator<Scalar>(I(v_prime_), v_prime_);
    matrix_ = speccalc::assemble_operator<Scalar>([this](const CMatrix<Scalar>& w) { return apply(w); },
                                                  basis_);
    spectrum_ = speccalc::self_adjoint_spectrum(matrix_);
    if (spectrum_.values.minCoeff() <= 0)
      throw Error(ErrorKind::NegativeSpectrum, "metric operator is not positive-definite");
    inverse_ = spectrum_.vectors * spectrum_.values.cwiseInverse().asDiagonal() *
               spectrum_.vectors.transpose();
  }

  /// A_V w for w in m_x.
  CMatrix<Scalar> apply(const CMatrix<Scalar>& w) const {
    return w + I(algebra::commutator(shift_, w));
  }

  /// A_V^{-1} w for w in m_x.
  CMatrix<Scalar> apply_inverse(const CMatrix<Scalar>& w) const {
    return algebra::from_coordinates(
        basis_, RVector<Scalar>(inverse_ * algebra::coordinates(basis_, w)));
  }

  /// Complex-linear extensions to i m_x.
  CMatrix<Scalar> apply_vertical(const CMatrix<Scalar>& v) const {
    const Complex<Scalar> i = imag_unit<Scalar>();
    return i * apply(CMatrix<Scalar>(-i * v));
  }

  CMatrix<Scalar> apply_inverse_vertical(const CMatrix<Scalar>& v) const {
    const Complex<Scalar> i = imag_unit<Scalar>();
    return i * apply_inverse(CMatrix<Scalar>(-i * v));
  }

  const CMatrix<Scalar>& v_prime() const { return v_prime_; }
  const RMatrix<Scalar>& matrix() const { return matrix_; }
  const RVector<Scalar>& spectrum() const { return spectrum_.values; }
  const std::vector<CMatrix<Scalar>>& mx_basis() const { return basis_; }
  const TangentBundlePoint<Scalar>& point() const { return q_; }

  Scalar self_adjoint_residual() const {
    return (matrix_ - matrix_.transpose()).norm() / std::max(Scalar(1), matrix_.norm());
  }

 private:
  CMatrix<Scalar> I(const CMatrix<Scalar>& m) const {
    return orbit::complex_structure_at(ctx_, q_.x, m);
  }

  algebra::Context<Scalar> ctx_;
  TangentBundlePoint<Scalar> q_;
  std::vector<CMatrix<Scalar>> basis_;
  CMatrix<Scalar> v_prime_;
  CMatrix<Scalar> shift_;
  RMatrix<Scalar> matrix_;
  RMatrix<Scalar> inverse_;
  speccalc::OperatorSpectrum<Scalar> spectrum_;
};

template <typename Scalar>
CMatrix<Scalar> A_operator(const algebra::Context<Scalar>& ctx,
                           const TangentBundlePoint<Scalar>& q, const CMatrix<Scalar>& w,
                           Scalar tol = Scalar(1e-9)) {
  if (orbit::mx_residual(ctx, q.x, w) > tol)
    throw Error(ErrorKind::NotInSubspace, "argument must lie in m_x");
  return AOperator<Scalar>(ctx, q).apply(w);
}

/// c^3 (Re<A h, h'> + Re<A^{-1} v, v'>).
template <typename Scalar>
Scalar metric_gtilde(const algebra::Context<Scalar>& ctx, const AOperator<Scalar>& A,
                     const TBVector<Scalar>& X, const TBVector<Scalar>& Y) {
  const Scalar c3 = ctx.c * ctx.c * ctx.c;
  return c3 * (algebra::real_inner(A.apply(X.h), Y.h) +
               algebra::real_inner(A.apply_inverse_vertical(X.v), Y.v));
}

/// (h, v) -> (i A^{-1} v, i A h).
template <typename Scalar>
TBVector<Scalar> J3(const AOperator<Scalar>& A, const TBVector<Scalar>& X) {
  const Complex<Scalar> i = imag_unit<Scalar>();
  return {i * A.apply_inverse_vertical(X.v), i * A.apply(X.h)};
}

/// Liouville form c^3 Re(<i v_X, h_Y> - <i v_Y, h_X>).
template <typename Scalar>
Scalar liouville_Omega3(const algebra::Context<Scalar>& ctx, const TBVector<Scalar>& X,
                        const TBVector<Scalar>& Y) {
  const Scalar c3 = ctx.c * ctx.c * ctx.c;
  const Complex<Scalar> i = imag_unit<Scalar>();
  return c3 * (algebra::real_inner(CMatrix<Scalar>(i * X.v), Y.h) -
               algebra::real_inner(CMatrix<Scalar>(i * Y.v), X.h));
}

}  // namespace hkorbit::tangent
