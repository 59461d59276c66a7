#pragma once

#include "hkorbit/algebra.hpp"
#include "hkorbit/hyperkahler.hpp"
#include "hkorbit/mostow.hpp"
#include "hkorbit/orbit.hpp"
#include "hkorbit/speccalc.hpp"
#include "hkorbit/tangent.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>

// Brute-force and finite-difference cross-checks. Nothing here calls the
// spectral or projection engines it is meant to verify, except where a map
// under test is passed in explicitly.
namespace hkorbit::oracle {

namespace detail {

template <typename Scalar>
CMatrix<Scalar> lie_bracket(const CMatrix<Scalar>& a, const CMatrix<Scalar>& b) {
  const Eigen::Index n = a.rows();
  CMatrix<Scalar> out = CMatrix<Scalar>::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      Complex<Scalar> acc(0);
      for (Eigen::Index l = 0; l < n; ++l) acc += a(i, l) * b(l, j) - b(i, l) * a(l, j);
      out(i, j) = acc;
    }
  return out;
}

}  // namespace detail

/// sum_{j <= terms} f_j ad(h)^j y, straight from the Taylor coefficients.
template <typename Scalar>
CMatrix<Scalar> series_ad_function(const speccalc::AdKernel<Scalar>& kernel,
                                   const CMatrix<Scalar>& h, const CMatrix<Scalar>& y,
                                   int terms) {
  if (terms < 0) throw Error(ErrorKind::InvalidArgument, "terms must be non-negative");
  if (kernel.taylor.empty())
    throw Error(ErrorKind::InvalidArgument, "kernel has no stored Taylor coefficients");
  if (std::size_t(terms) >= kernel.taylor.size())
    throw Error(ErrorKind::InvalidArgument, "not enough stored Taylor coefficients");
  CMatrix<Scalar> power = y;
  CMatrix<Scalar> out = kernel.taylor[0] * y;
  for (int j = 1; j <= terms; ++j) {
    power = detail::lie_bracket(h, power);
    if (kernel.taylor[j] != Scalar(0)) out += kernel.taylor[j] * power;
  }
  return out;
}

template <typename Scalar = double>
struct FDConfig {
  Scalar step = Scalar(1e-4);
  bool richardson = true;

  void validate() const {
    if (!(step >= Scalar(1e-7) && step <= Scalar(1e-2)))
      throw Error(ErrorKind::InvalidArgument, "finite-difference step must lie in [1e-7, 1e-2]");
  }
};

/// Central first derivative of a vector-valued path at 0.
template <typename Scalar, typename Value>
Value fd_derivative(const std::function<Value(Scalar)>& path, const FDConfig<Scalar>& cfg) {
  cfg.validate();
  auto central = [&](Scalar h) -> Value { return (path(h) - path(-h)) / (2 * h); };
  if (!cfg.richardson) return central(cfg.step);
  const Value coarse = central(cfg.step);
  const Value fine = central(cfg.step / 2);
  return (Scalar(4) * fine - coarse) / Scalar(3);
}

/// Central second derivative of a scalar function at 0.
template <typename Scalar>
Scalar fd_second_derivative(const std::function<Scalar(Scalar)>& f, const FDConfig<Scalar>& cfg) {
  cfg.validate();
  const Scalar f0 = f(Scalar(0));
  auto central = [&](Scalar h) { return (f(h) - 2 * f0 + f(-h)) / (h * h); };
  if (!cfg.richardson) return central(cfg.step);
  return (Scalar(4) * central(cfg.step / 2) - central(cfg.step)) / Scalar(3);
}

template <typename Scalar>
using ChartFunction = std::function<Scalar(const CVector<Scalar>&)>;

/// dd^c K (xi, eta) = 2i d d-bar K (xi, eta) at z, with d^c = i(d-bar - d), from
/// second differences of the Levi form L(zeta) = (d_t^2 K(z + t zeta) + d_t^2 K(z + i t zeta)) / 4.
template <typename Scalar>
Scalar fd_ddc(const ChartFunction<Scalar>& K, const CVector<Scalar>& z, const CVector<Scalar>& xi,
              const CVector<Scalar>& eta, const FDConfig<Scalar>& cfg = {}) {
  const Complex<Scalar> i = imag_unit<Scalar>();
  auto levi = [&](const CVector<Scalar>& zeta) {
    const CVector<Scalar> izeta = i * zeta;
    const Scalar along = fd_second_derivative<Scalar>(
        [&](Scalar t) { return K(CVector<Scalar>(z + t * zeta)); }, cfg);
    const Scalar across = fd_second_derivative<Scalar>(
        [&](Scalar t) { return K(CVector<Scalar>(z + t * izeta)); }, cfg);
    return (along + across) / 4;
  };
  const CVector<Scalar> minus = xi - i * eta;
  const CVector<Scalar> plus = xi + i * eta;
  return levi(minus) - levi(plus);
}

/// A 2-form on the chart: (z, xi, eta) -> value, with xi, eta constant chart fields.
template <typename Scalar, typename Value = Scalar>
using ChartForm =
    std::function<Value(const CVector<Scalar>&, const CVector<Scalar>&, const CVector<Scalar>&)>;

/// d omega (X, Y, Z) for constant chart fields X, Y, Z.
template <typename Scalar, typename Value = Scalar>
Value fd_exterior_derivative(const ChartForm<Scalar, Value>& form, const CVector<Scalar>& z,
                             const CVector<Scalar>& X, const CVector<Scalar>& Y,
                             const CVector<Scalar>& Z, const FDConfig<Scalar>& cfg = {}) {
  auto along = [&](const CVector<Scalar>& dir, const CVector<Scalar>& a,
                   const CVector<Scalar>& b) {
    return fd_derivative<Scalar, Value>(
        [&](Scalar t) { return form(CVector<Scalar>(z + t * dir), a, b); }, cfg);
  };
  return along(X, Y, Z) - along(Y, X, Z) + along(Z, X, Y);
}

/// Smallest distance from y to Haar-random points of the compact orbit.
template <typename Scalar>
Scalar probe_min_distance(const algebra::Context<Scalar>& ctx, const CMatrix<Scalar>& y,
                          int samples, std::uint64_t seed) {
  if (samples < 1) throw Error(ErrorKind::InvalidArgument, "samples must be at least 1");
  std::mt19937_64 rng(seed);
  Scalar best = std::numeric_limits<Scalar>::infinity();
  for (int s = 0; s < samples; ++s) {
    const CMatrix<Scalar> u = algebra::random_unitary<Scalar>(ctx.n, rng);
    const CMatrix<Scalar> x = u * ctx.D * u.adjoint() - ctx.D;
    best = std::min(best, (y - x).norm());
  }
  return best;
}

/// Points of the compact orbit near a frame: frame e^{b} with b in m0 of norm radius.
template <typename Scalar>
Scalar probe_min_distance_near(const algebra::Context<Scalar>& ctx, const CMatrix<Scalar>& y,
                               const CMatrix<Scalar>& frame, Scalar radius, int samples,
                               std::uint64_t seed) {
  if (samples < 1) throw Error(ErrorKind::InvalidArgument, "samples must be at least 1");
  Scalar best = std::numeric_limits<Scalar>::infinity();
  for (int s = 0; s < samples; ++s) {
    const CMatrix<Scalar> b =
        algebra::random_element(ctx, SpaceTag::m0, seed + std::uint64_t(s), radius).mat;
    const CMatrix<Scalar> u = frame * mostow::exp_skew(b);
    const CMatrix<Scalar> x = u * ctx.D * u.adjoint() - ctx.D;
    best = std::min(best, (y - x).norm());
  }
  return best;
}

/// Derivative of map(curve(t)) at t = 0.
template <typename Scalar, typename Point, typename Value>
Value fd_pushforward(const std::function<Value(const Point&)>& map,
                     const std::function<Point(Scalar)>& curve, const FDConfig<Scalar>& cfg = {}) {
  return fd_derivative<Scalar, Value>([&](Scalar t) { return map(curve(t)); }, cfg);
}

/// Curve t -> e^{tZ} (y + D) e^{-tZ} - D in the complex orbit, velocity [Z, y + D].
template <typename Scalar>
std::function<CMatrix<Scalar>(Scalar)> orbit_curve(const algebra::Context<Scalar>& ctx,
                                                   const CMatrix<Scalar>& y,
                                                   const CMatrix<Scalar>& Z) {
  return [ctx, y, Z](Scalar t) -> CMatrix<Scalar> {
    const CMatrix<Scalar> g = (t * Z).exp();
    const CMatrix<Scalar> ginv = (-t * Z).exp();
    return g * (y + ctx.D) * ginv - ctx.D;
  };
}

/// Upsilon_* X by finite differences, split into horizontal and vertical parts:
/// h = (1/c) I_x dx/dt and v = -i P_{m_x}(dV/dt).
template <typename Scalar>
tangent::TBVector<Scalar> upsilon_pushforward(const algebra::Context<Scalar>& ctx,
                                              const mostow::FiberedPoint<Scalar>& p,
                                              const mostow::TangentVecC<Scalar>& X,
                                              const FDConfig<Scalar>& cfg = {}) {
  const auto curve = orbit_curve(ctx, p.y, CMatrix<Scalar>(X.c + imag_unit<Scalar>() * X.c_prime));
  mostow::ProjectOptions<Scalar> opts;
  opts.initial_frame = p.frame;
  const Eigen::Index n = ctx.n;
  // stack x and V into one n x 2n matrix so one difference stencil serves both
  std::function<CMatrix<Scalar>(Scalar)> path = [&](Scalar t) -> CMatrix<Scalar> {
    const auto q = tangent::upsilon(ctx, mostow::decompose(ctx, curve(t), opts));
    CMatrix<Scalar> out(n, 2 * n);
    out << q.x, q.V;
    return out;
  };
  const CMatrix<Scalar> d = fd_derivative<Scalar, CMatrix<Scalar>>(path, cfg);
  const CMatrix<Scalar> dx = d.leftCols(n);
  const CMatrix<Scalar> dV = d.rightCols(n);
  tangent::TBVector<Scalar> out;
  out.h = orbit::project_mx(ctx, p.x, CMatrix<Scalar>(orbit::complex_structure_at(ctx, p.x, dx) / ctx.c));
  out.v = -imag_unit<Scalar>() * orbit::project_mx(ctx, p.x, dV);
  return out;
}

/// Observed order log2(e(h) / e(h/2)) from errors at two steps.
template <typename Scalar>
Scalar observed_order(Scalar coarse_error, Scalar fine_error) {
  using std::log2;
  return log2(coarse_error / fine_error);
}

}  // namespace hkorbit::oracle
