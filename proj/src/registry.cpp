#include "hkorbit/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hkorbit::verify {

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"algebra", "roots", "mostow",
                                                 "hyperkahler", "tangent", "closedness"};
  return names;
}

const std::vector<CheckSpec>& check_registry() {
  static const std::vector<CheckSpec> registry = [] {
    std::vector<CheckSpec> r = {
        // algebra and spectral calculus
        {"algebra", "lstar_axiom", 1e-10, "<[x,y],z> - <y,[x*,z]>, relative to |x||y||z|"},
        {"algebra", "jacobi", 1e-10, "Jacobi identity, relative"},
        {"algebra", "ad_D_square", 1e-10, "ad(D)^2 + c^2 on m0, relative"},
        {"algebra", "bracket_identities", 1e-10, "[a,Ib] + [Ia,b] and [Ia,Ib] - [a,b]"},
        {"algebra", "bracket_norm_identity", 1e-10, "<[a,Ia],[b,Ib]> vs |[a,b]|^2 + |[a,Ib]|^2"},
        {"algebra", "bracket_transport", 1e-9, "f(ad(ia))[a,Ia] vs [a',Ia'], a' = sqrt f(ad(iIa)) a"},
        {"algebra", "curvature_operator_function", 1e-9, "f(ad(iIV)) V vs f applied to the operator I R_{IV,V}"},
        {"algebra", "hermiticity_transport", 1e-10, "<f(ad) x, y> - <x, f(ad) y>"},
        {"algebra", "algebra_errors", 0, "trials that raised an error"},
    };
    for (const auto& name : {"coshm1_over_x2", "sinh_over_x", "cos", "cosh", "argsinh_over_x",
                             "phi_bg", "sqrt_of", "exp"})
      r.push_back({"algebra", std::string("series_") + name, 1e-9,
                   "spectral vs 15-term series, |a| <= 1, relative"});
    const std::vector<CheckSpec> rest = {
        // roots
        {"roots", "root_curvature", 1e-12, "curvature identities on the strongly orthogonal system"},
        {"roots", "normal_form_reconstruction", 1e-10, "Ad(g)(sum v_a x_a) - V, relative"},
        {"roots", "abelian_diagonalization", 1e-9, "ad(iIV)^2 V and (1 + ad^2) V in abelian coordinates"},
        {"roots", "roots_errors", 0, "trials that raised an error"},
        // mostow
        {"mostow", "orbit_certificate", 1e-8, "spectral certificate of forward(x, a)"},
        {"mostow", "roundtrip_x", 1e-7, "|pi(forward(x,a)) - x|, |a| <= 2"},
        {"mostow", "roundtrip_a", 1e-7, "|fiber coordinate - a|, |a| <= 2"},
        {"mostow", "multistart_agreement", 1e-6, "spread of pi over 10 random initial frames"},
        {"mostow", "equivariance", 1e-7, "pi(u y u*) - u pi(y) u*"},
        {"mostow", "probe_margin", 1e-9, "|y - pi(y)| - min over 1000 orbit probes"},
        {"mostow", "convexity_deficit", 1e-9, "t^2 c^2/4 - (f(t) - f(0)), |t| <= 1/2, relative"},
        {"mostow", "geodesic_monotonicity", 1e-10, "largest decrease of f on (0, min(1, pi/2|b|))"},
        {"mostow", "hessian_fd", 1e-4, "hessian form vs second difference of the distance"},
        {"mostow", "hessian_positivity", 0, "minus the smallest Hessian eigenvalue"},
        {"mostow", "pi_pushforward_fd", 1e-4, "FD derivative of pi vs [c, x + D]"},
        {"mostow", "mostow_errors", 0, "trials that raised an error"},
    };
    r.insert(r.end(), rest.begin(), rest.end());
    for (const auto& name : {"i1_square", "i2_square", "i3_square", "anticommute", "i1_isometry",
                             "i2_isometry", "i3_isometry", "metric_symmetry",
                             "omega1_compatibility", "holomorphic_compatibility",
                             "omega_c_residual"})
      r.push_back({"hyperkahler", name, 1e-8, "quaternionic identity residual, |a| <= 1.5"});
    const std::vector<CheckSpec> tail = {
        {"hyperkahler", "omega_c_constant", 1e-8, "|lambda - 1| for omega2 + i omega3 = lambda omega_c"},
        {"hyperkahler", "gram_positivity", 0, "minus the smallest Gram eigenvalue"},
        {"hyperkahler", "restriction_compact", 1e-10, "g vs c^3 Re<.,.> on the compact orbit"},
        {"hyperkahler", "potential_fiber", 1e-10, "|K| on the fiber over 0"},
        {"hyperkahler", "g_invariance", 1e-8, "g under unitary conjugation"},
        {"hyperkahler", "hyperkahler_errors", 0, "trials that raised an error"},
        // tangent bundle
        {"tangent", "f2_f1_roundtrip", 1e-9, "f2(f1(a)) - a, |a| <= 3"},
        {"tangent", "f1_f2_roundtrip", 1e-9, "f1(f2(V)) - V, |V| <= 3"},
        {"tangent", "p_upsilon", 1e-7, "base of Upsilon(y) vs an independent projection"},
        {"tangent", "upsilon_roundtrip", 1e-7, "Upsilon^-1(Upsilon(y)) - y, relative"},
        {"tangent", "coshm1_image", 1e-9, "coshm1 kernel on [Ia,a] vs its image for V = f1(a)"},
        {"tangent", "sinh_bound", 1e-12, "1 - smallest eigenvalue of sinh(ad(ia))/ad(ia) on m0"},
        {"tangent", "a_eigen_case", 1e-10, "A_{v x1} x1 - sqrt(1 + 4v^2) x1, v in {0.1, 0.5, 2}"},
        {"tangent", "a_orthogonal_root", 1e-10, "A_{v x1} x_b - x_b for b != 1"},
        {"tangent", "a_self_adjoint", 1e-10, "asymmetry of A_V, |V| <= 3"},
        {"tangent", "a_positivity", 0, "minus the smallest eigenvalue of A_V"},
        {"tangent", "pullback", 1e-4, "g~(Upsilon_* X, Upsilon_* Y) - g(X, Y), relative"},
        {"tangent", "upsilon_horizontal", 1e-4, "Upsilon_* rho(c, 0) - (c, 0)"},
        {"tangent", "upsilon_vertical", 1e-4, "horizontal part of Upsilon_* rho(0, c')"},
        {"tangent", "hor_ver_orthogonality", 1e-12, "g~ between horizontal and vertical vectors"},
        {"tangent", "zero_section_restriction", 1e-10, "g~ at V = 0 vs c^3 Re<.,.>"},
        {"tangent", "j3_square", 1e-10, "J3 J3 X + X"},
        {"tangent", "j3_omega3", 1e-9, "g~(J3 X, Y) - Omega3(X, Y)"},
        {"tangent", "omega3_alternating", 1e-12, "Omega3(X, X) and Omega3(X, Y) + Omega3(Y, X)"},
        {"tangent", "omega3_liouville", 1e-12, "Omega3 vs the trace expression of the Liouville form"},
        {"tangent", "tangent_errors", 0, "trials that raised an error"},
        // closedness and potentials by finite differences in a holomorphic chart
        {"closedness", "d_omega_c", 1e-3, "d omega_c by finite differences"},
        {"closedness", "d_omega1", 1e-3, "d omega1 by finite differences"},
        {"closedness", "d_omega2", 1e-3, "d omega2 by finite differences"},
        {"closedness", "d_omega3", 1e-3, "d omega3 by finite differences"},
        {"closedness", "ddc_potential", 1e-4, "dd^c of c Re<y, pi(y)> vs omega1"},
        {"closedness", "ddc_affine_potential", 1e-4, "dd^c of c Re<y + D, pi(y)> vs omega1"},
        {"closedness", "fd_order_first", 0, "1.9 - observed order of central first differences"},
        {"closedness", "fd_order_ddc", 0, "1.9 - observed order of the dd^c stencil"},
        {"closedness", "closedness_errors", 0, "trials that raised an error"},
    };
    r.insert(r.end(), tail.begin(), tail.end());
    return r;
  }();
  return registry;
}

const CheckSpec& find_check(const std::string& name) {
  for (const auto& c : check_registry())
    if (c.name == name) return c;
  throw Error(ErrorKind::InvalidArgument, "unknown check '" + name + "'");
}

std::vector<std::string> RunConfig::selected_suites() const {
  if (suites.empty()) return suite_names();
  std::vector<std::string> out;
  for (const auto& s : suite_names())
    if (std::find(suites.begin(), suites.end(), s) != suites.end()) out.push_back(s);
  return out;
}

double RunConfig::tolerance(const std::string& check) const {
  if (auto it = tolerances.find(check); it != tolerances.end()) return it->second;
  return find_check(check).tolerance;
}

void RunConfig::validate() const {
  std::vector<std::string> problems;
  if (case_name != "grassmannian") problems.push_back("case must be 'grassmannian'");
  if (n < 2) problems.push_back("n must be at least 2");
  if (k < 1 || k >= n) problems.push_back("k must satisfy 1 <= k <= n - 1");
  if (!(kappa > 0) || !std::isfinite(kappa)) problems.push_back("kappa must be positive");
  if (trials < 0) problems.push_back("trials must be non-negative");
  if (jobs < 1) problems.push_back("jobs must be at least 1");
  for (const auto& s : suites)
    if (std::find(suite_names().begin(), suite_names().end(), s) == suite_names().end())
      problems.push_back("unknown suite '" + s + "'");
  for (const auto& [name, tol] : tolerances) {
    bool known = false;
    for (const auto& c : check_registry()) known = known || c.name == name;
    if (!known) problems.push_back("unknown tolerance '" + name + "'");
    if (!(tol >= 0) || !std::isfinite(tol))
      problems.push_back("tolerance '" + name + "' must be finite and non-negative");
  }
  if (problems.empty()) return;
  std::ostringstream msg;
  msg << "invalid config:";
  for (const auto& p : problems) msg << ' ' << p << ';';
  throw Error(ErrorKind::InvalidArgument, msg.str());
}

std::uint64_t trial_seed(std::uint64_t master, int trial) {
  std::uint64_t z = master ^ std::uint64_t(trial);
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace hkorbit::verify
