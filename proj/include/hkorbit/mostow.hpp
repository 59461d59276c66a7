#pragma once

#include "hkorbit/algebra.hpp"
#include "hkorbit/fiber_maps.hpp"
#include "hkorbit/orbit.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include <cmath>
#include <numbers>
#include <optional>

namespace hkorbit::mostow {

/// e^{s h} for Hermitian h.
template <typename Scalar>
CMatrix<Scalar> exp_hermitian(const CMatrix<Scalar>& h, Scalar s = Scalar(1)) {
  Eigen::SelfAdjointEigenSolver<CMatrix<Scalar>> es(Scalar(0.5) * (h + h.adjoint()));
  RVector<Scalar> e = (s * es.eigenvalues().array()).exp();
  return es.eigenvectors() * e.template cast<Complex<Scalar>>().asDiagonal() *
         es.eigenvectors().adjoint();
}

/// e^{b} for skew-Hermitian b (unitary).
template <typename Scalar>
CMatrix<Scalar> exp_skew(const CMatrix<Scalar>& b) {
  CMatrix<Scalar> h = imag_unit<Scalar>() * b;
  h = Scalar(0.5) * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix<Scalar>> es(h);
  CVector<Scalar> e(es.eigenvalues().size());
  for (Eigen::Index j = 0; j < e.size(); ++j)
    e(j) = std::exp(-imag_unit<Scalar>() * es.eigenvalues()(j));
  return es.eigenvectors() * e.asDiagonal() * es.eigenvectors().adjoint();
}

/// Nearest unitary (polar factor).
template <typename Scalar>
CMatrix<Scalar> polar_unitary(const CMatrix<Scalar>& m) {
  Eigen::JacobiSVD<CMatrix<Scalar>> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

/// e^{ia} (x + D) e^{-ia} - D for a in m_x.
template <typename Scalar>
CMatrix<Scalar> forward(const algebra::Context<Scalar>& ctx, const CMatrix<Scalar>& x,
                        const CMatrix<Scalar>& a, Scalar tol = Scalar(1e-9)) {
  if (orbit::mx_residual(ctx, x, a) > tol)
    throw Error(ErrorKind::NotInSubspace, "fiber coordinate must lie in m_x");
  const CMatrix<Scalar> h = imag_unit<Scalar>() * a;
  return exp_hermitian(h) * (x + ctx.D) * exp_hermitian(h, Scalar(-1)) - ctx.D;
}

/// Half squared distance 1/2 |y - x|^2.
template <typename Scalar>
Scalar distance_function(const CMatrix<Scalar>& y, const CMatrix<Scalar>& x) {
  return Scalar(0.5) * (y - x).squaredNorm();
}

/// Gradient of w -> 1/2 |w - D|^2 along w -> e^{-b} w e^{b}, b in m0.
template <typename Scalar>
CMatrix<Scalar> base_gradient(const algebra::Context<Scalar>& ctx, const CMatrix<Scalar>& w) {
  const CMatrix<Scalar> r = w - ctx.D;
  return algebra::project(ctx, CMatrix<Scalar>(w.adjoint() * r - r * w.adjoint()),
                          SpaceTag::m0);
}

/// Hessian of the same function in the orthonormal m0 basis.
template <typename Scalar>
RMatrix<Scalar> base_hessian(const algebra::Context<Scalar>& ctx, const CMatrix<Scalar>& w,
                             const std::vector<CMatrix<Scalar>>& basis) {
  using algebra::commutator;
  const CMatrix<Scalar> r = w - ctx.D;
  const CMatrix<Scalar> ws = w.adjoint();
  speccalc::LinearMap<Scalar> op = [&](const CMatrix<Scalar>& b) -> CMatrix<Scalar> {
    const CMatrix<Scalar> wb = commutator(w, b);
    return commutator(ws, wb) +
           Scalar(0.5) * (commutator<Scalar>(wb.adjoint(), r) +
                          commutator<Scalar>(ws, commutator(b, r)));
  };
  RMatrix<Scalar> h = speccalc::assemble_operator(op, basis);
  return Scalar(0.5) * (h + h.transpose());
}

template <typename Scalar>
struct ProjectionDiagnostics {
  int iterations = 0;
  int newton_steps = 0;
  Scalar gradient_norm = 0;
  Scalar distance = 0;
  bool converged = false;
};

template <typename Scalar>
struct ProjectOptions {
  int max_iterations = 1000;
  Scalar tolerance = Scalar(1e-10);     // relative to max(1, |y + D|^2)
  int polish_steps = 2;
  std::optional<CMatrix<Scalar>> initial_frame;
};

template <typename Scalar>
struct Projection {
  CMatrix<Scalar> x;
  CMatrix<Scalar> frame;  // x + D = frame D frame^*
  ProjectionDiagnostics<Scalar> diagnostics;
};

/// Starting frame: orthonormalized i kappa eigenspace of y + D completed to a unitary.
template <typename Scalar>
CMatrix<Scalar> initial_frame(const algebra::Context<Scalar>& ctx, const CMatrix<Scalar>& y) {
  const CMatrix<Scalar> proj = orbit::eigen_projector<Scalar>(ctx, y + ctx.D);
  Eigen::JacobiSVD<CMatrix<Scalar>> svd(proj, Eigen::ComputeFullU);
  return svd.matrixU();
}

/// Nearest point of the compact orbit to y, by Riemannian Newton on the frame.
template <typename Scalar>
Projection<Scalar> project_pi(const algebra::Context<Scalar>& ctx, const CMatrix<Scalar>& y,
                              const ProjectOptions<Scalar>& opts = {}) {
  if (!orbit::certify(ctx, y).ok())
    throw Error(ErrorKind::CertificateFailure, "y + D does not have the orbit spectrum");
  const CMatrix<Scalar> s = y + ctx.D;
  const Scalar scale = std::max(Scalar(1), s.squaredNorm());
  const Scalar tol = opts.tolerance * scale;
  const Scalar step_cap = std::numbers::pi_v<Scalar> / 4;
  const auto basis = algebra::m0_basis(ctx);

  CMatrix<Scalar> u = opts.initial_frame ? polar_unitary(*opts.initial_frame)
                                         : initial_frame(ctx, y);
  auto base_of = [&](const CMatrix<Scalar>& frame) -> CMatrix<Scalar> {
    return frame.adjoint() * s * frame;
  };
  auto value_of = [&](const CMatrix<Scalar>& w) { return Scalar(0.5) * (w - ctx.D).squaredNorm(); };

  CMatrix<Scalar> w = base_of(u);
  Scalar f = value_of(w);
  CMatrix<Scalar> grad = base_gradient(ctx, w);
  Scalar gnorm = grad.norm();
  int polish = 0;
  ProjectionDiagnostics<Scalar> diag;

  for (int it = 0; it < opts.max_iterations; ++it) {
    diag.iterations = it;
    if (gnorm <= tol) {
      diag.converged = true;
      if (polish >= opts.polish_steps) break;
    }
    // Newton with the Hessian spectrum reflected and floored, so saddles repel
    const RMatrix<Scalar> h = base_hessian(ctx, w, basis);
    Eigen::SelfAdjointEigenSolver<RMatrix<Scalar>> eig(h);
    const RVector<Scalar>& lambda = eig.eigenvalues();
    const Scalar floor = std::max(Scalar(1e-3) * lambda.cwiseAbs().maxCoeff(), Scalar(1e-12) * scale);
    const bool newton = lambda.minCoeff() > floor;
    const RVector<Scalar> g = eig.eigenvectors().transpose() * algebra::coordinates(basis, grad);
    const RVector<Scalar> shifted = lambda.cwiseAbs().cwiseMax(floor);
    const RVector<Scalar> sol = -(eig.eigenvectors() * g.cwiseQuotient(shifted));
    const CMatrix<Scalar> dir = algebra::from_coordinates(basis, sol);
    const Scalar slope = algebra::real_inner(grad, dir);
    const Scalar dnorm = dir.norm();
    Scalar t = 1;
    if (t * dnorm > step_cap) t = step_cap / dnorm;

    bool accepted = false;
    CMatrix<Scalar> u_new, w_new, grad_new;
    Scalar f_new = f;
    for (int bt = 0; bt < 60; ++bt) {
      u_new = u * exp_skew<Scalar>(t * dir);
      w_new = base_of(u_new);
      f_new = value_of(w_new);
      if (f_new <= f + Scalar(1e-4) * t * slope) {
        accepted = true;
        break;
      }
      if (newton) {
        // at rounding level the value stalls; accept on gradient decrease
        grad_new = base_gradient(ctx, w_new);
        if (grad_new.norm() < gnorm) {
          accepted = true;
          break;
        }
      }
      t *= Scalar(0.5);
    }
    if (!accepted) break;
    grad_new = base_gradient(ctx, w_new);
    const Scalar gnorm_new = grad_new.norm();
    if (diag.converged) {
      // polishing: keep only strict gradient improvements
      if (!(gnorm_new < gnorm)) break;
      ++polish;
    }
    if (newton) ++diag.newton_steps;
    u = polar_unitary(u_new);
    w = base_of(u);
    f = value_of(w);
    grad = base_gradient(ctx, w);
    gnorm = grad.norm();
  }
  if (gnorm <= tol) diag.converged = true;
  diag.gradient_norm = gnorm;
  if (!diag.converged)
    throw Error(ErrorKind::NotConverged,
                "projection did not converge (gradient " + std::to_string(double(gnorm)) + ")");

  Projection<Scalar> out;
  out.frame = u;
  out.x = u * ctx.D * u.adjoint() - ctx.D;
  out.x = algebra::skew_part(out.x);
  diag.distance = (y - out.x).norm();
  out.diagnostics = diag;
  return out;
}

/// a in m_x with forward(x, a) = y, by the closed-form inverse of the fiber map.
template <typename Scalar>
CMatrix<Scalar> fiber_coordinate(const algebra::Context<Scalar>& ctx, const CMatrix<Scalar>& y,
                                 const CMatrix<Scalar>& x, const CMatrix<Scalar>& frame,
                                 Scalar tol = Scalar(1e-8)) {
  const CMatrix<Scalar> y0 = frame.adjoint() * (y + ctx.D) * frame - ctx.D;
  const CMatrix<Scalar> im = algebra::project(ctx, algebra::imag_part(y0), SpaceTag::m0);
  const CMatrix<Scalar> v0 = -algebra::complex_structure_I(ctx, im) / ctx.c;
  CMatrix<Scalar> a0 = tangent::f2(ctx, v0);
  CMatrix<Scalar> a = frame * a0 * frame.adjoint();
  a = orbit::project_mx(ctx, x, a);
  const Scalar residual =
      (forward(ctx, x, a) - y).norm() / std::max(Scalar(1), (y + ctx.D).norm());
  if (residual > tol)
    throw Error(ErrorKind::NotInSubspace, "y is not in the fiber over x");
  return a;
}

template <typename Scalar>
CMatrix<Scalar> fiber_coordinate(const algebra::Context<Scalar>& ctx, const CMatrix<Scalar>& y,
                                 const CMatrix<Scalar>& x) {
  if (!orbit::is_compact(x, Scalar(1e-9)))
    throw Error(ErrorKind::InvalidArgument, "base point must be in the compact orbit");
  return fiber_coordinate(ctx, y, x, orbit::compact_frame(ctx, x));
}

/// Mostow coordinates of a point y: compact base x, fiber coordinate a in m_x,
/// and a unitary frame with x + D = frame D frame^*.
template <typename Scalar>
struct FiberedPoint {
  CMatrix<Scalar> y;
  CMatrix<Scalar> x;
  CMatrix<Scalar> a;
  CMatrix<Scalar> frame;
  ProjectionDiagnostics<Scalar> diagnostics;

  /// Fiber coordinate in base coordinates (in m0).
  CMatrix<Scalar> base_a() const { return frame.adjoint() * a * frame; }
};

template <typename Scalar>
FiberedPoint<Scalar> decompose(const algebra::Context<Scalar>& ctx, const CMatrix<Scalar>& y,
                               const ProjectOptions<Scalar>& opts = {}) {
  Projection<Scalar> proj = project_pi(ctx, y, opts);
  FiberedPoint<Scalar> fp{y, proj.x, {}, proj.frame, proj.diagnostics};
  try {
    fp.a = fiber_coordinate(ctx, y, fp.x, fp.frame);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotInSubspace) throw;
    ProjectOptions<Scalar> again = opts;
    again.initial_frame = proj.frame;
    proj = project_pi(ctx, y, again);
    fp.x = proj.x;
    fp.frame = proj.frame;
    fp.diagnostics = proj.diagnostics;
    fp.a = fiber_coordinate(ctx, y, fp.x, fp.frame);
  }
  return fp;
}

/// Point built directly from Mostow coordinates (no projection needed).
template <typename Scalar>
FiberedPoint<Scalar> fibered_point(const algebra::Context<Scalar>& ctx, const CMatrix<Scalar>& x,
                                   const CMatrix<Scalar>& a) {
  FiberedPoint<Scalar> fp;
  fp.x = x;
  fp.a = a;
  fp.frame = orbit::compact_frame(ctx, x);
  fp.y = forward(ctx, x, a);
  return fp;
}

/// Tangent vector rho(c + i c') = [c + i c', y + D] with c, c' in m_x.
template <typename Scalar>
struct TangentVecC {
  CMatrix<Scalar> base;
  CMatrix<Scalar> c;
  CMatrix<Scalar> c_prime;

  CMatrix<Scalar> ambient(const algebra::Context<Scalar>& ctx) const {
    const CMatrix<Scalar> z = c + imag_unit<Scalar>() * c_prime;
    return algebra::commutator<Scalar>(z, base + ctx.D);
  }
};

template <typename Scalar>
TangentVecC<Scalar> rho(const algebra::Context<Scalar>& ctx, const FiberedPoint<Scalar>& p,
                        const CMatrix<Scalar>& c, const CMatrix<Scalar>& c_prime,
                        Scalar tol = Scalar(1e-9)) {
  if (orbit::mx_residual(ctx, p.x, c) > tol || orbit::mx_residual(ctx, p.x, c_prime) > tol)
    throw Error(ErrorKind::NotInSubspace, "tangent coordinates must lie in m_x");
  return TangentVecC<Scalar>{p.y, c, c_prime};
}

/// Recovers (c, c') from an ambient tangent vector at p.
template <typename Scalar>
TangentVecC<Scalar> rho_inverse(const algebra::Context<Scalar>& ctx, const FiberedPoint<Scalar>& p,
                                const CMatrix<Scalar>& X, Scalar tol = Scalar(1e-9)) {
  const auto basis = orbit::mx_basis(ctx, p.frame);
  const auto m = static_cast<Eigen::Index>(basis.size());
  const Eigen::Index nn = ctx.n * ctx.n;
  const CMatrix<Scalar> s = p.y + ctx.D;
  RMatrix<Scalar> sys(2 * nn, 2 * m);
  auto put = [&](Eigen::Index col, const CMatrix<Scalar>& mat) {
    const Eigen::Map<const CVector<Scalar>> v(mat.data(), nn);
    sys.col(col).head(nn) = v.real();
    sys.col(col).tail(nn) = v.imag();
  };
  for (Eigen::Index j = 0; j < m; ++j) {
    put(j, algebra::commutator(basis[j], s));
    put(m + j, algebra::commutator<Scalar>(imag_unit<Scalar>() * basis[j], s));
  }
  RVector<Scalar> rhs(2 * nn);
  const Eigen::Map<const CVector<Scalar>> xv(X.data(), nn);
  rhs.head(nn) = xv.real();
  rhs.tail(nn) = xv.imag();
  Eigen::ColPivHouseholderQR<RMatrix<Scalar>> qr(sys);
  if (qr.rank() < 2 * m) throw Error(ErrorKind::SingularSystem, "tangent map is singular");
  const RVector<Scalar> sol = qr.solve(rhs);
  const Scalar residual = (sys * sol - rhs).norm() / std::max(Scalar(1), rhs.norm());
  if (residual > tol) throw Error(ErrorKind::NotInSubspace, "vector is not tangent to the orbit");
  return TangentVecC<Scalar>{p.y, algebra::from_coordinates(basis, RVector<Scalar>(sol.head(m))),
                             algebra::from_coordinates(basis, RVector<Scalar>(sol.tail(m)))};
}

/// Differential of the projection: the horizontal part c.
template <typename Scalar>
CMatrix<Scalar> pi_pushforward(const TangentVecC<Scalar>& X) {
  return X.c;
}

/// Re<[c, y + D], [d, x + D]>; on the fiber over 0 this is the Hessian of the
/// distance function at its minimum.
template <typename Scalar>
Scalar hessian_form(const algebra::Context<Scalar>& ctx, const FiberedPoint<Scalar>& p,
                    const CMatrix<Scalar>& c, const CMatrix<Scalar>& d) {
  using algebra::commutator;
  return algebra::real_inner(commutator<Scalar>(c, p.y + ctx.D), commutator<Scalar>(d, p.x + ctx.D));
}

}  // namespace hkorbit::mostow
