#pragma once
/*
 * The invariant systems of conservation laws themselves.
 *
 * A GalileanSystem couples a group representation (boost structure) with a
 * rest-frame entropy closure. Everything observable follows: the admissible
 * cone, the velocity field u, the thermodynamic flux j, the full flux
 * f = u W + j, the entropy eta with its gradient phi and Hessian, and the
 * characteristic speeds.
 *
 * Seven named systems are registered:
 *   hyp2, ell2          two components, rotational boosts
 *   hyp3, ell3          three components, rotational boosts + scalar
 *   nil3                three components, shear boosts
 *   eulergas            nil3 with unit parameters and the ideal-gas closure
 *                       (classical 1-D compressible Euler equations)
 *   cemracs             ell3 with unit parameters and the gas-type closure
 * plus "corrupted-fixture", a deliberately broken eulergas variant whose
 * thermodynamic flux is scaled by 1.01, used to prove the verifier can fail.
 */

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "galcl/group.hpp"
#include "galcl/thermo.hpp"

namespace galcl {

struct GalileanSystem {
  Family family;
  int m = 0;
  double p1 = 1.0, p2 = 1.0;  // alpha, beta (m=2) or a, b (m=3)
  GroupRep rep;
  EntropyClosure closure;
  std::string name;
  // Mutation knobs for negative tests; exactly 1.0 in every genuine system.
  double j_scale = 1.0;
  double u_scale = 1.0;
};

// Couple a family with a closure. Closure arity must be m-1; fixed-parameter
// families require p1 = p2 = 1. Family/closure sign mismatches are allowed
// here on purpose (the verifier exposes them as Hessian failures).
GalileanSystem make_system(Family f, const EntropyClosure& closure,
                           double p1 = 1.0, double p2 = 1.0);
// The family with its default built-in closure (gamma = 1.4 for gas types).
GalileanSystem make_system_default(Family f);

std::optional<GalileanSystem> make_system_by_name(std::string_view name,
                                                  double gamma = 1.4,
                                                  double p1 = 1.0,
                                                  double p2 = 1.0);
std::vector<std::string> registry_names();

// ---- admissible cone -------------------------------------------------------

bool cone_contains(const GalileanSystem& s, const State& w);
// Empty string when inside; otherwise names the violated inequality.
std::string cone_violation(const GalileanSystem& s, const State& w);
void require_in_cone(const GalileanSystem& s, const State& w);

// Rest invariants: the closure arguments seen from the co-moving frame.
// r2 is 0 for two-component systems.
struct RestPoint {
  double r1 = 0.0;
  double r2 = 0.0;
};
RestPoint rest_invariants(const GalileanSystem& s, const State& w);

// ---- pointwise fields ------------------------------------------------------

double velocity(const GalileanSystem& s, const State& w);
Vec thermo_flux(const GalileanSystem& s, const State& w);  // j = f - u W
Vec flux(const GalileanSystem& s, const State& w);         // f = u W + j
State rest_projection(const GalileanSystem& s, const State& w);  // Y(u(W)) W
double mech_pressure_at(const GalileanSystem& s, const State& w);

// Display name of state component i ("rho"/"q"/"epsilon" for the gas
// system, "theta"/"zeta"/"psi" otherwise); used in diagnostics and CSV
// headers.
const char* component_name(const GalileanSystem& s, int i);
double entropy(const GalileanSystem& s, const State& w);
Vec entropy_variables(const GalileanSystem& s, const State& w);  // phi = d(eta)
double entropy_dual(const GalileanSystem& s, const State& w);    // phi.W - eta

// ---- closed-form differential data ----------------------------------------

Vec velocity_gradient_closed(const GalileanSystem& s, const State& w);
Mat entropy_hessian_closed(const GalileanSystem& s, const State& w);
double entropy_hessian_det_closed(const GalileanSystem& s, const State& w);

// ---- boost branch policy ---------------------------------------------------

// For elliptic-generator systems the velocity is additive under boosts only
// on the principal branch sqrt(p1 p2) (|u(W)| + |v|) < pi/2 - margin; other
// kinds are unrestricted. Margin fixed at 1e-3.
bool boost_within_branch(const GalileanSystem& s, const State& w, double v);

// ---- characteristic analysis -----------------------------------------------

// Flux Jacobian d f(W) by central finite differences (stencil kept inside
// the cone; step shrunk at most twice).
Mat jacobian(const GalileanSystem& s, const State& w);

// True for the ideal-gas systems (eulergas, nil3 with unit parameters and
// the gas closure) and cemracs, whose speeds have closed forms.
bool has_analytic_speeds(const GalileanSystem& s);

// Ascending characteristic speeds: closed form where available, otherwise
// eigenvalues of the finite-difference Jacobian. Complex eigenvalues beyond
// |Im| <= 1e-8 max(1, |lambda|) raise HyperbolicityViolation.
Vec char_speeds(const GalileanSystem& s, const State& w);
Vec char_speeds_numeric(const GalileanSystem& s, const State& w);

// Wave-speed bound for the solver: max |char speed|, analytic where
// available, otherwise the numeric spectral radius with a 10% safety factor.
double max_wave_speed(const GalileanSystem& s, const State& w);

// ---- quasilinear form of the cemracs system --------------------------------

struct QuasilinearState {
  double theta = 0.0;
  double xi = 0.0;   // zeta / theta
  double phi = 0.0;  // Pi / sqrt(1 + xi^2)
  double y = 0.0;    // phi / theta
};

QuasilinearState cemracs_quasilinear_state(const GalileanSystem& s,
                                           const State& w);
// The 3x3 coefficient matrix of the quasilinear system in the variables
// (theta, xi, phi); eigenvalues are {0, +-sqrt(y - 2y^2 + gamma/(gamma-1) y^3)}.
Mat cemracs_quasilinear(const QuasilinearState& v, double gamma);

}  // namespace galcl
