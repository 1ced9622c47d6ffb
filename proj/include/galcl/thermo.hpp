#pragma once
/*
 * Rest-frame entropy closures and their convex duality.
 *
 * A closure is a strictly convex function sigma of the rest invariants:
 * one argument xi for two-component systems, two arguments (alpha, beta)
 * for three-component ones. The Moreau/Legendre conjugate sigma* feeds
 * the mechanical pressure of every system family, and for the ideal-gas
 * closure the slopes (A, B) = d(sigma) encode classical thermodynamics
 * via A = mu/T, B = -1/T, sigma* = p/T.
 */

#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "galcl/group.hpp"
#include "galcl/smallvec.hpp"

namespace galcl {

// Declared signs of d(sigma)/d(alpha) and d(sigma)/d(beta) on the
// admissible domain: -1, +1, or 0 for unconstrained.
struct SignProfile {
  int dalpha = 0;
  int dbeta = 0;
};

struct Grad2 {
  double A = 0.0;  // d(sigma)/d(alpha), or sigma' for one-argument closures
  double B = 0.0;  // d(sigma)/d(beta); 0 for one-argument closures
};

struct Hess2 {
  double aa = 0.0;
  double ab = 0.0;
  double bb = 0.0;
};

struct EntropyClosure {
  std::string name;
  int arity = 1;       // 1: sigma(xi); 2: sigma(alpha, beta)
  double gamma = 0.0;  // adiabatic exponent for gas-type closures, else 0
  SignProfile signs;
  std::function<bool(double, double)> in_domain;
  std::function<double(double, double)> value;
  std::function<Grad2(double, double)> grad;
  std::function<Hess2(double, double)> hess;
  // Sampling box, strictly interior to the domain; randomized checks draw
  // rest invariants from here.
  double alpha_lo = 0.5, alpha_hi = 5.0;
  double beta_lo = 0.5, beta_hi = 5.0;
};

// Built-in closures. Each factory validates convexity and the declared
// sign profile on a deterministic grid over its sampling box.
EntropyClosure closure_inverse();         // sigma(xi) = 1/xi        (sigma' < 0)
EntropyClosure closure_square();          // sigma(xi) = xi^2        (sigma' > 0)
EntropyClosure closure_inverse_square();  // sigma = 1/alpha + beta^2 (d/dalpha < 0)
EntropyClosure closure_sum_squares();     // sigma = alpha^2 + beta^2 (d/dalpha > 0)
EntropyClosure closure_ideal_gas(double gamma);  // -alpha log[(g-1)beta/alpha^g]
// Same formula as the gas closure, restricted to the region where
// d(sigma)/d(alpha) > 0 so it suits an elliptic three-component system.
EntropyClosure closure_cemracs(double gamma);

// Lookup by factory name ("inverse", "square", "inverse-square",
// "sum-squares", "ideal-gas", "cemracs"); gamma applies to gas closures.
std::optional<EntropyClosure> closure_by_name(std::string_view name,
                                              double gamma);
std::string known_closure_names();

// Grid check: domain membership, Hessian SPD, declared sign profile.
// Throws DomainViolation naming the offending point on failure.
void validate_closure(const EntropyClosure& c);

struct DualPoint {
  int arity = 1;
  double A = 0.0, B = 0.0;  // slopes
  double value = 0.0;       // sigma*(A[, B])
};

// Exact Legendre transform at a gradient point of a convex function:
// slopes = d(sigma)(x), value = x . d(sigma)(x) - sigma(x).
DualPoint conjugate_at_gradient(const EntropyClosure& c, double alpha,
                                double beta = 0.0);

struct ConjugateResult {
  DualPoint dual;
  double alpha = 0.0, beta = 0.0;  // recovered primal point
  int iterations = 0;
};

// Solve d(sigma)(x) = slopes by damped Newton (bisection fallback for
// one-argument closures), then apply conjugate_at_gradient. Converged
// when the slope residual max-norm is below 1e-12.
ConjugateResult conjugate_general(const EntropyClosure& c, double A,
                                  double B = 0.0);

// Mechanical pressure at a rest point, per system family:
//   Hyp2  -sigma*(sigma') / (beta sigma')     Ell2  +sigma*(sigma') / (beta sigma')
//   Hyp3  -sigma*(A,B) / (b A)                Ell3  +sigma*(A,B) / (b A)
//   Nil3  -sigma*(A,B) / (b B)
//   Cemracs closed form (g-1) theta / (g - log[(g-1) psi / theta^g])
// r1, r2 are the rest invariants; b_param is beta (m=2) or b (m=3).
double mech_pressure(Family f, const EntropyClosure& c, double r1, double r2,
                     double b_param);

// Classical thermodynamics of the ideal-gas closure.
struct GasPhysical {
  double T = 0.0, p = 0.0, mu = 0.0;  // temperature, pressure, chem. potential
};
struct GasDual {
  double A = 0.0, B = 0.0;  // closure slopes: A = mu/T, B = -1/T
  double sigma_star = 0.0;  // conjugate value: p/T
};

GasDual gas_dual_from_physical(const GasPhysical& ph);
GasPhysical gas_physical_from_dual(const GasDual& d);
// Evaluate (T, p, mu) for a gas closure at rest invariants (rho, psi).
GasPhysical gas_physical_at(const EntropyClosure& gas, double rho, double psi);

}  // namespace galcl
