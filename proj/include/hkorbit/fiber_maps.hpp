#pragma once

#include "hkorbit/algebra.hpp"
#include "hkorbit/speccalc.hpp"

namespace hkorbit::tangent {

/// Fiber coordinate a in m0 -> tangent vector -(1/c) I Im(e^{ia} D e^{-ia} - D):
/// I (sinh(ad(ia))/ad(ia)) (I a).
template <typename Scalar>
CMatrix<Scalar> f1(const algebra::Context<Scalar>& ctx, const CMatrix<Scalar>& a) {
  const CMatrix<Scalar> ia = algebra::complex_structure_I(ctx, a);
  return algebra::complex_structure_I(
      ctx, speccalc::apply_ad_function(speccalc::sinh_over_x_kernel<Scalar>(), a, ia));
}

/// Inverse of f1: I (argsinh(ad(iV))/ad(iV)) (I V).
template <typename Scalar>
CMatrix<Scalar> f2(const algebra::Context<Scalar>& ctx, const CMatrix<Scalar>& v) {
  const CMatrix<Scalar> iv = algebra::complex_structure_I(ctx, v);
  return algebra::complex_structure_I(
      ctx, speccalc::apply_ad_function(speccalc::argsinh_over_x_kernel<Scalar>(), v, iv));
}

}  // namespace hkorbit::tangent
