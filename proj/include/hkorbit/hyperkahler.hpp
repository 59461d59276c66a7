#pragma once

#include "hkorbit/mostow.hpp"
#include "hkorbit/orbit.hpp"

#include <Eigen/Eigenvalues>

#include <string>
#include <utility>
#include <vector>

namespace hkorbit::hk {

using mostow::FiberedPoint;
using mostow::TangentVecC;

/// K(y) = c Re<y, pi(y)>.
template <typename Scalar>
Scalar potential_K(const algebra::Context<Scalar>& ctx, const FiberedPoint<Scalar>& p) {
  return ctx.c * algebra::real_inner(p.y, p.x);
}

template <typename Scalar>
Scalar potential_K(const algebra::Context<Scalar>& ctx, const CMatrix<Scalar>& y) {
  return potential_K(ctx, mostow::decompose(ctx, y));
}

/// c Re<y + D, pi(y)>. Differs from potential_K by c Re<D, pi(y)>, which is not
/// pluriharmonic; this one satisfies omega1 = dd^c K and still vanishes on the
/// fiber over 0.
template <typename Scalar>
Scalar affine_potential(const algebra::Context<Scalar>& ctx, const FiberedPoint<Scalar>& p) {
  return ctx.c * algebra::real_inner(CMatrix<Scalar>(p.y + ctx.D), p.x);
}

/// Metric, symplectic forms and complex structures on the tangent space at one
/// point, acting on rho-coordinates (c, c') in m_x x m_x.
template <typename Scalar>
class HKFrame {
 public:
  HKFrame(const algebra::Context<Scalar>& ctx, FiberedPoint<Scalar> p)
      : ctx_(ctx), p_(std::move(p)), basis_(orbit::mx_basis(ctx_, p_.frame)) {}

  const FiberedPoint<Scalar>& point() const { return p_; }
  const algebra::Context<Scalar>& context() const { return ctx_; }
  const std::vector<CMatrix<Scalar>>& mx_basis() const { return basis_; }

  TangentVecC<Scalar> vector(const CMatrix<Scalar>& c, const CMatrix<Scalar>& c_prime) const {
    return TangentVecC<Scalar>{p_.y, c, c_prime};
  }

  /// c Re<[c, y + D], [d, x + D]>.
  Scalar pairing(const CMatrix<Scalar>& c, const CMatrix<Scalar>& d) const {
    using algebra::commutator;
    return ctx_.c * algebra::real_inner(commutator<Scalar>(c, p_.y + ctx_.D),
                                        commutator<Scalar>(d, p_.x + ctx_.D));
  }

  Scalar metric(const TangentVecC<Scalar>& X, const TangentVecC<Scalar>& Y) const {
    check(X);
    check(Y);
    return pairing(X.c, Y.c) + pairing(X.c_prime, Y.c_prime);
  }

  Scalar omega1(const TangentVecC<Scalar>& X, const TangentVecC<Scalar>& Y) const {
    check(X);
    check(Y);
    return pairing(Y.c_prime, X.c) - pairing(X.c_prime, Y.c);
  }

  Complex<Scalar> omega_c(const TangentVecC<Scalar>& X, const TangentVecC<Scalar>& Y) const {
    check(X);
    check(Y);
    return orbit::kks_form(ctx_, p_.y, X.ambient(ctx_), Y.ambient(ctx_));
  }

  /// Multiplication by i: (c, c') -> (-c', c).
  TangentVecC<Scalar> I1(const TangentVecC<Scalar>& X) const {
    return TangentVecC<Scalar>{X.base, -X.c_prime, X.c};
  }

  /// (c, c') -> (I_x c, -I_x c').
  TangentVecC<Scalar> I2(const TangentVecC<Scalar>& X) const {
    return TangentVecC<Scalar>{X.base, orbit::complex_structure_at(ctx_, p_.x, X.c),
                               -orbit::complex_structure_at(ctx_, p_.x, X.c_prime)};
  }

  /// I1 I2: (c, c') -> (I_x c', I_x c).
  TangentVecC<Scalar> I3(const TangentVecC<Scalar>& X) const { return I1(I2(X)); }

  Scalar omega2(const TangentVecC<Scalar>& X, const TangentVecC<Scalar>& Y) const {
    return metric(I2(X), Y);
  }

  Scalar omega3(const TangentVecC<Scalar>& X, const TangentVecC<Scalar>& Y) const {
    return metric(I3(X), Y);
  }

  /// Real basis of the tangent space: (b_i, 0) then (0, b_i).
  std::vector<TangentVecC<Scalar>> tangent_basis() const {
    std::vector<TangentVecC<Scalar>> out;
    const CMatrix<Scalar> zero = CMatrix<Scalar>::Zero(ctx_.n, ctx_.n);
    for (const auto& b : basis_) out.push_back(vector(b, zero));
    for (const auto& b : basis_) out.push_back(vector(zero, b));
    return out;
  }

  RVector<Scalar> coordinates(const TangentVecC<Scalar>& X) const {
    const auto m = static_cast<Eigen::Index>(basis_.size());
    RVector<Scalar> out(2 * m);
    out.head(m) = algebra::coordinates(basis_, X.c);
    out.tail(m) = algebra::coordinates(basis_, X.c_prime);
    return out;
  }

  TangentVecC<Scalar> from_coordinates(const RVector<Scalar>& v) const {
    const auto m = static_cast<Eigen::Index>(basis_.size());
    return vector(algebra::from_coordinates(basis_, RVector<Scalar>(v.head(m))),
                  algebra::from_coordinates(basis_, RVector<Scalar>(v.tail(m))));
  }

  template <typename Form>
  auto form_matrix(Form&& form) const {
    const auto tb = tangent_basis();
    const auto d = static_cast<Eigen::Index>(tb.size());
    using Value = decltype(form(tb[0], tb[0]));
    Eigen::Matrix<Value, Eigen::Dynamic, Eigen::Dynamic> out(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index j = 0; j < d; ++j) out(i, j) = form(tb[i], tb[j]);
    return out;
  }

  template <typename Map>
  RMatrix<Scalar> map_matrix(Map&& map) const {
    const auto tb = tangent_basis();
    const auto d = static_cast<Eigen::Index>(tb.size());
    RMatrix<Scalar> out(d, d);
    for (Eigen::Index j = 0; j < d; ++j) out.col(j) = coordinates(map(tb[j]));
    return out;
  }

  RMatrix<Scalar> gram() const {
    return form_matrix([this](const auto& X, const auto& Y) { return metric(X, Y); });
  }

 private:
  void check(const TangentVecC<Scalar>& X) const {
    if ((X.base - p_.y).norm() > Scalar(1e-9) * std::max(Scalar(1), p_.y.norm()))
      throw Error(ErrorKind::InvalidArgument, "tangent vector is based at another point");
  }

  algebra::Context<Scalar> ctx_;
  FiberedPoint<Scalar> p_;
  std::vector<CMatrix<Scalar>> basis_;
};

template <typename Scalar>
Scalar metric_g(const algebra::Context<Scalar>& ctx, const FiberedPoint<Scalar>& p,
                const TangentVecC<Scalar>& X, const TangentVecC<Scalar>& Y) {
  return HKFrame<Scalar>(ctx, p).metric(X, Y);
}

template <typename Scalar>
Scalar omega1(const algebra::Context<Scalar>& ctx, const FiberedPoint<Scalar>& p,
              const TangentVecC<Scalar>& X, const TangentVecC<Scalar>& Y) {
  return HKFrame<Scalar>(ctx, p).omega1(X, Y);
}

template <typename Scalar>
TangentVecC<Scalar> I2(const algebra::Context<Scalar>& ctx, const FiberedPoint<Scalar>& p,
                       const TangentVecC<Scalar>& X) {
  return HKFrame<Scalar>(ctx, p).I2(X);
}

/// Named residuals of the hyperkahler identities at one point, evaluated on a
/// full real basis of the tangent space.
template <typename Scalar>
struct QuaternionReport {
  Scalar i1_square = 0;
  Scalar i2_square = 0;
  Scalar i3_square = 0;
  Scalar anticommute = 0;
  Scalar i1_isometry = 0;
  Scalar i2_isometry = 0;
  Scalar i3_isometry = 0;
  Scalar metric_symmetry = 0;
  Scalar omega1_compatibility = 0;  // omega1 vs g(I1 ., .)
  Scalar holomorphic_compatibility = 0;  // g vs Re omega_c(., I2 .)
  Scalar omega_c_constant_re = 0;  // fitted lambda in omega2 + i omega3 = lambda omega_c
  Scalar omega_c_constant_im = 0;
  Scalar omega_c_residual = 0;
  Scalar min_eigenvalue = 0;

  std::vector<std::pair<std::string, Scalar>> residuals() const {
    return {{"i1_square", i1_square},
            {"i2_square", i2_square},
            {"i3_square", i3_square},
            {"anticommute", anticommute},
            {"i1_isometry", i1_isometry},
            {"i2_isometry", i2_isometry},
            {"i3_isometry", i3_isometry},
            {"metric_symmetry", metric_symmetry},
            {"omega1_compatibility", omega1_compatibility},
            {"holomorphic_compatibility", holomorphic_compatibility},
            {"omega_c_residual", omega_c_residual}};
  }

  Scalar max_residual() const {
    Scalar m = 0;
    for (const auto& [name, value] : residuals()) m = std::max(m, value);
    return m;
  }
};

template <typename Scalar>
QuaternionReport<Scalar> quaternion_report(const HKFrame<Scalar>& frame) {
  using Mat = RMatrix<Scalar>;
  const Mat g = frame.gram();
  const Mat i1 = frame.map_matrix([&](const auto& X) { return frame.I1(X); });
  const Mat i2 = frame.map_matrix([&](const auto& X) { return frame.I2(X); });
  const Mat i3 = frame.map_matrix([&](const auto& X) { return frame.I3(X); });
  const Mat w1 = frame.form_matrix([&](const auto& X, const auto& Y) { return frame.omega1(X, Y); });
  const CMatrix<Scalar> wc =
      frame.form_matrix([&](const auto& X, const auto& Y) { return frame.omega_c(X, Y); });
  const auto d = g.rows();
  const Mat id = Mat::Identity(d, d);
  const Scalar gs = std::max(Scalar(1), g.norm());

  QuaternionReport<Scalar> r;
  r.i1_square = (i1 * i1 + id).norm();
  r.i2_square = (i2 * i2 + id).norm();
  r.i3_square = (i3 * i3 + id).norm();
  r.anticommute = (i1 * i2 + i2 * i1).norm();
  r.i1_isometry = (i1.transpose() * g * i1 - g).norm() / gs;
  r.i2_isometry = (i2.transpose() * g * i2 - g).norm() / gs;
  r.i3_isometry = (i3.transpose() * g * i3 - g).norm() / gs;
  r.metric_symmetry = (g - g.transpose()).norm() / gs;
  r.omega1_compatibility = (w1 - i1.transpose() * g).norm() / gs;
  r.holomorphic_compatibility = (g - Mat(wc.real() * i2)).norm() / gs;

  // omega2 + i omega3 against omega_c
  const CMatrix<Scalar> w23 = (i2.transpose() * g).template cast<Complex<Scalar>>() +
                              imag_unit<Scalar>() * (i3.transpose() * g).template cast<Complex<Scalar>>();
  const Complex<Scalar> lambda = algebra::inner(wc, w23) / algebra::inner(wc, wc);
  r.omega_c_constant_re = lambda.real();
  r.omega_c_constant_im = lambda.imag();
  r.omega_c_residual = (w23 - wc).norm() / gs;

  Eigen::SelfAdjointEigenSolver<Mat> es(Scalar(0.5) * (g + g.transpose()), Eigen::EigenvaluesOnly);
  r.min_eigenvalue = es.eigenvalues().minCoeff();
  return r;
}

template <typename Scalar>
QuaternionReport<Scalar> quaternion_report(const algebra::Context<Scalar>& ctx,
                                           const FiberedPoint<Scalar>& p) {
  return quaternion_report(HKFrame<Scalar>(ctx, p));
}

}  // namespace hkorbit::hk
