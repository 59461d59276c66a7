#pragma once

#include "hkorbit/algebra.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <functional>
#include <string>
#include <vector>

namespace hkorbit::speccalc {

/// A real-analytic scalar function f used as f(ad(h)) for Hermitian h.
/// `taylor[j]` is the coefficient of s^j of f around 0.
template <typename Scalar>
struct AdKernel {
  std::string name;
  std::function<Scalar(Scalar)> eval;
  std::vector<Scalar> taylor;
  bool even = false;

  Scalar operator()(Scalar s) const { return eval(s); }
};

inline constexpr int kTaylorOrder = 48;

namespace detail {

template <typename Scalar>
std::vector<Scalar> series_sqrt(const std::vector<Scalar>& f) {
  using std::sqrt;
  if (f.empty() || !(f[0] > 0))
    throw Error(ErrorKind::InvalidArgument, "series square root needs f(0) > 0");
  std::vector<Scalar> g(f.size(), Scalar(0));
  g[0] = sqrt(f[0]);
  for (std::size_t j = 1; j < f.size(); ++j) {
    Scalar acc = f[j];
    for (std::size_t i = 1; i < j; ++i) acc -= g[i] * g[j - i];
    g[j] = acc / (2 * g[0]);
  }
  return g;
}

// coefficients of s^j from coefficients of x^m with x = s^2
template <typename Scalar>
std::vector<Scalar> substitute_square(const std::vector<Scalar>& in, int order) {
  std::vector<Scalar> out(order + 1, Scalar(0));
  for (std::size_t m = 0; 2 * m <= std::size_t(order) && m < in.size(); ++m) out[2 * m] = in[m];
  return out;
}

template <typename Scalar>
Scalar factorial(int j) {
  Scalar f = 1;
  for (int i = 2; i <= j; ++i) f *= Scalar(i);
  return f;
}

}  // namespace detail

template <typename Scalar = double>
AdKernel<Scalar> exp_kernel() {
  std::vector<Scalar> t(kTaylorOrder + 1);
  for (int j = 0; j <= kTaylorOrder; ++j) t[j] = Scalar(1) / detail::factorial<Scalar>(j);
  return {"exp", [](Scalar s) { using std::exp; return exp(s); }, std::move(t), false};
}

template <typename Scalar = double>
AdKernel<Scalar> cosh_kernel() {
  std::vector<Scalar> t(kTaylorOrder + 1, Scalar(0));
  for (int j = 0; j <= kTaylorOrder; j += 2) t[j] = Scalar(1) / detail::factorial<Scalar>(j);
  return {"cosh", [](Scalar s) { using std::cosh; return cosh(s); }, std::move(t), true};
}

template <typename Scalar = double>
AdKernel<Scalar> cos_kernel() {
  std::vector<Scalar> t(kTaylorOrder + 1, Scalar(0));
  for (int j = 0; j <= kTaylorOrder; j += 2)
    t[j] = ((j / 2) % 2 ? Scalar(-1) : Scalar(1)) / detail::factorial<Scalar>(j);
  return {"cos", [](Scalar s) { using std::cos; return cos(s); }, std::move(t), true};
}

/// sinh(s)/s, equal to 1 at 0.
template <typename Scalar = double>
AdKernel<Scalar> sinh_over_x_kernel() {
  std::vector<Scalar> t(kTaylorOrder + 1, Scalar(0));
  for (int j = 0; j <= kTaylorOrder; j += 2) t[j] = Scalar(1) / detail::factorial<Scalar>(j + 1);
  auto eval = [](Scalar s) {
    using std::abs;
    using std::sinh;
    if (abs(s) < Scalar(1e-8)) return Scalar(1);
    return sinh(s) / s;
  };
  return {"sinh_over_x", eval, std::move(t), true};
}

/// (cosh(s) - 1)/s^2, equal to 1/2 at 0.
template <typename Scalar = double>
AdKernel<Scalar> coshm1_over_x2_kernel() {
  std::vector<Scalar> t(kTaylorOrder + 1, Scalar(0));
  for (int j = 0; j <= kTaylorOrder; j += 2) t[j] = Scalar(1) / detail::factorial<Scalar>(j + 2);
  auto eval = [](Scalar s) {
    using std::abs;
    using std::sinh;
    if (abs(s) < Scalar(1e-8)) return Scalar(0.5);
    // cosh(s) - 1 = 2 sinh(s/2)^2 without cancellation
    const Scalar h = sinh(s / 2);
    return 2 * h * h / (s * s);
  };
  return {"coshm1_over_x2", eval, std::move(t), true};
}

/// argsinh(s)/s, equal to 1 at 0. Taylor radius of convergence is 1.
template <typename Scalar = double>
AdKernel<Scalar> argsinh_over_x_kernel() {
  std::vector<Scalar> t(kTaylorOrder + 1, Scalar(0));
  // argsinh(x) = sum_m (-1)^m (2m)! / (4^m (m!)^2 (2m+1)) x^(2m+1)
  Scalar central = 1;  // (2m)! / (4^m (m!)^2)
  for (int m = 0; 2 * m <= kTaylorOrder; ++m) {
    if (m > 0) central *= Scalar(2 * m - 1) / Scalar(2 * m);
    t[2 * m] = (m % 2 ? Scalar(-1) : Scalar(1)) * central / Scalar(2 * m + 1);
  }
  auto eval = [](Scalar s) {
    using std::abs;
    using std::log;
    using std::sqrt;
    const Scalar x = abs(s);
    if (x < Scalar(1e-4)) {
      const Scalar x2 = x * x;
      return Scalar(1) - x2 / 6 + Scalar(3) * x2 * x2 / 40;
    }
    return log(x + sqrt(1 + x * x)) / x;
  };
  return {"argsinh_over_x", eval, std::move(t), true};
}

/// phi(s^2) with phi(x) = ((sqrt(1+x) - 1)/x)^(1/2); phi(0) = sqrt(1/2).
/// Taylor radius of convergence in s is 1.
template <typename Scalar = double>
AdKernel<Scalar> phi_bg_kernel() {
  // (sqrt(1+x) - 1)/x = sum_m binom(1/2, m+1) x^m
  const int half = kTaylorOrder / 2;
  std::vector<Scalar> inner(half + 1);
  Scalar binom = Scalar(0.5);  // binom(1/2, 1)
  for (int m = 0; m <= half; ++m) {
    inner[m] = binom;
    binom *= (Scalar(0.5) - Scalar(m + 1)) / Scalar(m + 2);
  }
  std::vector<Scalar> phi = detail::series_sqrt(inner);
  auto eval = [](Scalar s) {
    using std::sqrt;
    // (sqrt(1+x) - 1)/x = 1/(1 + sqrt(1+x))
    return sqrt(Scalar(1) / (Scalar(1) + sqrt(Scalar(1) + s * s)));
  };
  return {"phi_bg", eval, detail::substitute_square(phi, kTaylorOrder), true};
}

/// Pointwise square root of a kernel with f(0) > 0.
template <typename Scalar>
AdKernel<Scalar> sqrt_of(const AdKernel<Scalar>& f) {
  auto eval = [g = f.eval](Scalar s) {
    using std::sqrt;
    return sqrt(g(s));
  };
  return {"sqrt_of(" + f.name + ")", eval, detail::series_sqrt(f.taylor), f.even};
}

template <typename Scalar = double>
AdKernel<Scalar> one_plus_square_kernel() {
  std::vector<Scalar> t(kTaylorOrder + 1, Scalar(0));
  t[0] = 1;
  t[2] = 1;
  return {"one_plus_square", [](Scalar s) { return Scalar(1) + s * s; }, std::move(t), true};
}

/// sqrt(1 + s^2). Taylor radius of convergence is 1.
template <typename Scalar = double>
AdKernel<Scalar> sqrt_one_plus_square_kernel() {
  AdKernel<Scalar> k = sqrt_of(one_plus_square_kernel<Scalar>());
  k.name = "sqrt_of";
  return k;
}

template <typename Scalar = double>
std::vector<AdKernel<Scalar>> catalogue() {
  return {coshm1_over_x2_kernel<Scalar>(), sinh_over_x_kernel<Scalar>(),
          cos_kernel<Scalar>(),            cosh_kernel<Scalar>(),
          argsinh_over_x_kernel<Scalar>(), phi_bg_kernel<Scalar>(),
          sqrt_one_plus_square_kernel<Scalar>(), exp_kernel<Scalar>()};
}

template <typename Scalar = double>
AdKernel<Scalar> kernel_by_name(const std::string& name) {
  for (auto& k : catalogue<Scalar>())
    if (k.name == name) return k;
  throw Error(ErrorKind::InvalidArgument, "unknown kernel '" + name + "'");
}

/// f(ad(h)) y for Hermitian h, by eigen-differences in an eigenbasis of h.
template <typename Scalar>
CMatrix<Scalar> apply_hermitian_function(const AdKernel<Scalar>& kernel, const CMatrix<Scalar>& h,
                                         const CMatrix<Scalar>& y) {
  Eigen::SelfAdjointEigenSolver<CMatrix<Scalar>> es(h);
  const auto& mu = es.eigenvalues();
  const CMatrix<Scalar>& u = es.eigenvectors();
  CMatrix<Scalar> t = u.adjoint() * y * u;
  const Scalar at_zero = kernel(Scalar(0));
  using std::abs;
  for (Eigen::Index j = 0; j < t.rows(); ++j)
    for (Eigen::Index k = 0; k < t.cols(); ++k) {
      const Scalar d = mu(j) - mu(k);
      // limit value at near-zero differences, even kernels only
      t(j, k) *= abs(d) < Scalar(1e-8) && kernel.even ? at_zero : kernel(d);
    }
  return u * t * u.adjoint();
}

/// f(ad(ia)) y for skew-Hermitian a.
template <typename Scalar>
CMatrix<Scalar> apply_ad_function(const AdKernel<Scalar>& kernel, const CMatrix<Scalar>& a,
                                  const CMatrix<Scalar>& y, Scalar tol = Scalar(1e-10)) {
  if (algebra::skew_residual(a) > tol * std::max(Scalar(1), a.norm()))
    throw Error(ErrorKind::NotInSubspace, "ad-function generator must be skew-Hermitian");
  CMatrix<Scalar> h = imag_unit<Scalar>() * a;
  h = Scalar(0.5) * (h + h.adjoint());
  return apply_hermitian_function(kernel, h, y);
}

template <typename Scalar>
Element<Scalar> apply_ad_function(const AdKernel<Scalar>& kernel, const Element<Scalar>& a,
                                  const Element<Scalar>& y) {
  return Element<Scalar>{apply_ad_function(kernel, a.mat, y.mat), y.tag};
}

template <typename Scalar>
using LinearMap = std::function<CMatrix<Scalar>(const CMatrix<Scalar>&)>;

/// Matrix of a real-linear map in an orthonormal basis, M(i,j) = Re<b_i, op(b_j)>.
template <typename Scalar>
RMatrix<Scalar> assemble_operator(const LinearMap<Scalar>& op,
                                  const std::vector<CMatrix<Scalar>>& basis) {
  const auto m = static_cast<Eigen::Index>(basis.size());
  RMatrix<Scalar> out(m, m);
  for (Eigen::Index j = 0; j < m; ++j) out.col(j) = algebra::coordinates(basis, op(basis[j]));
  return out;
}

/// Eigendecomposition of a self-adjoint operator given in an orthonormal basis.
template <typename Scalar>
struct OperatorSpectrum {
  RVector<Scalar> values;
  RMatrix<Scalar> vectors;
};

template <typename Scalar>
OperatorSpectrum<Scalar> self_adjoint_spectrum(const RMatrix<Scalar>& op,
                                               Scalar asym_tol = Scalar(1e-8)) {
  const Scalar scale = std::max(Scalar(1), op.norm());
  if ((op - op.transpose()).norm() > asym_tol * scale)
    throw Error(ErrorKind::InvalidArgument, "operator is not self-adjoint");
  RMatrix<Scalar> sym = Scalar(0.5) * (op + op.transpose());
  Eigen::SelfAdjointEigenSolver<RMatrix<Scalar>> es(sym);
  return {es.eigenvalues(), es.eigenvectors()};
}

/// kernel(sqrt(L)) V for a positive semi-definite operator L on the span of `basis`.
template <typename Scalar>
CMatrix<Scalar> apply_operator_function(const AdKernel<Scalar>& kernel, const LinearMap<Scalar>& op,
                                        const CMatrix<Scalar>& v,
                                        const std::vector<CMatrix<Scalar>>& basis,
                                        Scalar tol = Scalar(1e-8)) {
  const RMatrix<Scalar> mat = assemble_operator(op, basis);
  const auto spec = self_adjoint_spectrum(mat);
  const Scalar floor = -tol * std::max(Scalar(1), mat.norm());
  RVector<Scalar> f(spec.values.size());
  using std::max;
  using std::sqrt;
  for (Eigen::Index i = 0; i < f.size(); ++i) {
    if (spec.values(i) < floor)
      throw Error(ErrorKind::NegativeSpectrum, "operator has a negative eigenvalue");
    f(i) = kernel(sqrt(max(spec.values(i), Scalar(0))));
  }
  const RVector<Scalar> coords = algebra::coordinates(basis, v);
  const RVector<Scalar> out =
      spec.vectors * f.asDiagonal() * (spec.vectors.transpose() * coords);
  return algebra::from_coordinates(basis, out);
}

}  // namespace hkorbit::speccalc
