#include "galcl/system.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "galcl/errors.hpp"
#include "galcl/fd.hpp"

namespace galcl {

namespace {

Kind kind_of(const GalileanSystem& s) { return generator_kind(s.family); }

// Signed coefficient q in the rest-radius formula xi^2 = theta^2 + q zeta^2
// for the rotational (non-nilpotent) kinds: -p2/p1 hyperbolic, +p2/p1
// elliptic.
double signed_ratio(const GalileanSystem& s) {
  double p = s.p2 / s.p1;
  return kind_of(s) == Kind::Hyperbolic ? -p : p;
}

std::string num(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

void require_dim(const GalileanSystem& s, const State& w) {
  if (w.m != s.m)
    throw DomainViolation("system '" + s.name + "' expects " +
                          std::to_string(s.m) + " components, state has " +
                          std::to_string(w.m));
}

EntropyClosure default_closure(Family f) {
  switch (f) {
    case Family::Hyp2:
      return closure_inverse();
    case Family::Ell2:
      return closure_square();
    case Family::Hyp3:
      return closure_inverse_square();
    case Family::Ell3:
      return closure_sum_squares();
    case Family::Nil3:
    case Family::EulerGas:
      return closure_ideal_gas(1.4);
    case Family::Cemracs:
      return closure_cemracs(1.4);
  }
  throw DomainViolation("unknown family");
}

}  // namespace

GalileanSystem make_system(Family f, const EntropyClosure& closure, double p1,
                           double p2) {
  GalileanSystem s;
  s.family = f;
  s.rep = make_group_rep(f, p1, p2);  // validates params
  s.m = s.rep.m;
  s.p1 = p1;
  s.p2 = p2;
  s.closure = closure;
  s.name = family_name(f);
  if (closure.arity != s.m - 1)
    throw DomainViolation("system '" + s.name + "' needs a closure of " +
                          std::to_string(s.m - 1) + " argument(s); '" +
                          closure.name + "' has " +
                          std::to_string(closure.arity));
  return s;
}

GalileanSystem make_system_default(Family f) {
  return make_system(f, default_closure(f));
}

std::optional<GalileanSystem> make_system_by_name(std::string_view name,
                                                  double gamma, double p1,
                                                  double p2) {
  if (name == "corrupted-fixture") {
    GalileanSystem s = make_system(Family::EulerGas, closure_ideal_gas(gamma));
    s.name = "corrupted-fixture";
    s.j_scale = 1.01;
    return s;
  }
  auto fam = family_from_name(name);
  if (!fam) return std::nullopt;
  EntropyClosure c = default_closure(*fam);
  if (c.gamma != 0.0 && gamma != c.gamma)
    c = *closure_by_name(c.name, gamma);
  return make_system(*fam, c, p1, p2);
}

std::vector<std::string> registry_names() {
  return {"hyp2", "ell2",     "hyp3",    "ell3",
          "nil3", "eulergas", "cemracs", "corrupted-fixture"};
}

// ---- cone -------------------------------------------------------------

RestPoint rest_invariants(const GalileanSystem& s, const State& w) {
  require_dim(s, w);
  RestPoint r;
  if (kind_of(s) == Kind::Nilpotent) {
    r.r1 = w[0];
    r.r2 = w[2] - 0.5 * (s.p2 / s.p1) * w[1] * w[1] / w[0];
  } else {
    double arg = w[0] * w[0] + signed_ratio(s) * w[1] * w[1];
    r.r1 = arg > 0.0 ? std::sqrt(arg) : -1.0;  // flagged by cone checks
    r.r2 = s.m == 3 ? w[2] : 0.0;
  }
  return r;
}

std::string cone_violation(const GalileanSystem& s, const State& w) {
  require_dim(s, w);
  for (int i = 0; i < w.m; ++i)
    if (!std::isfinite(w[i]))
      return std::string("component ") + component_name(s, i) + " is not finite";
  if (!(w[0] > 0.0))
    return std::string(component_name(s, 0)) + " must be positive (got " +
           num(w[0]) + ")";
  if (kind_of(s) == Kind::Hyperbolic) {
    double bound = std::sqrt(s.p1 / s.p2) * w[0];
    if (!(std::abs(w[1]) < bound))
      return "|" + std::string(component_name(s, 1)) + "| < sqrt(" +
             (s.m == 2 ? "alpha/beta" : "a/b") + ") " + component_name(s, 0) +
             " violated (" + num(std::abs(w[1])) + " >= " + num(bound) + ")";
  }
  RestPoint r = rest_invariants(s, w);
  if (!s.closure.in_domain(r.r1, r.r2)) {
    if (s.family == Family::EulerGas)
      return "internal energy epsilon - q^2/(2 rho) must be positive (got " +
             num(r.r2) + ")";
    return "rest invariants (" + num(r.r1) +
           (s.m == 3 ? ", " + num(r.r2) : "") + ") outside the domain of closure '" +
           s.closure.name + "'";
  }
  return {};
}

bool cone_contains(const GalileanSystem& s, const State& w) {
  return cone_violation(s, w).empty();
}

void require_in_cone(const GalileanSystem& s, const State& w) {
  std::string why = cone_violation(s, w);
  if (!why.empty())
    throw ConeViolation("system '" + s.name + "', state " + format_state(w) +
                        ": " + why);
}

// ---- pointwise fields --------------------------------------------------

double velocity(const GalileanSystem& s, const State& w) {
  require_in_cone(s, w);
  double u;
  switch (kind_of(s)) {
    case Kind::Hyperbolic:
      u = std::atanh(std::sqrt(s.p2 / s.p1) * w[1] / w[0]) /
          std::sqrt(s.p1 * s.p2);
      break;
    case Kind::Elliptic:
      u = std::atan(std::sqrt(s.p2 / s.p1) * w[1] / w[0]) /
          std::sqrt(s.p1 * s.p2);
      break;
    case Kind::Nilpotent:
      u = w[1] / (s.p1 * w[0]);
      break;
    default:
      u = 0.0;
  }
  return s.u_scale * u;
}

// Component names for diagnostics: the gas system uses physical names.
const char* component_name(const GalileanSystem& s, int i) {
  static const char* generic[3] = {"theta", "zeta", "psi"};
  static const char* gas[3] = {"rho", "q", "epsilon"};
  return s.family == Family::EulerGas ? gas[i] : generic[i];
}

double mech_pressure_at(const GalileanSystem& s, const State& w) {
  RestPoint r = rest_invariants(s, w);
  return mech_pressure(s.family, s.closure, r.r1, r.r2, s.p2);
}

Vec thermo_flux(const GalileanSystem& s, const State& w) {
  require_in_cone(s, w);
  RestPoint r = rest_invariants(s, w);
  double pi = mech_pressure(s.family, s.closure, r.r1, r.r2, s.p2);
  Vec j = Vec::zero(s.m);
  if (kind_of(s) == Kind::Nilpotent) {
    double p = s.p2 / s.p1;
    j[1] = pi;
    j[2] = pi * p * w[1] / w[0];
  } else {
    double q = signed_ratio(s);
    j[0] = -pi * q * w[1] / r.r1;
    j[1] = pi * w[0] / r.r1;
    // third component stays 0 for m = 3
  }
  return s.j_scale * j;
}

Vec flux(const GalileanSystem& s, const State& w) {
  return velocity(s, w) * w + thermo_flux(s, w);
}

State rest_projection(const GalileanSystem& s, const State& w) {
  return apply(boost(s.rep, velocity(s, w)), w);
}

double entropy(const GalileanSystem& s, const State& w) {
  require_in_cone(s, w);
  RestPoint r = rest_invariants(s, w);
  return s.closure.value(r.r1, r.r2);
}

Vec entropy_variables(const GalileanSystem& s, const State& w) {
  require_in_cone(s, w);
  RestPoint r = rest_invariants(s, w);
  Grad2 g = s.closure.grad(r.r1, r.r2);
  Vec phi = Vec::zero(s.m);
  if (kind_of(s) == Kind::Nilpotent) {
    double p = s.p2 / s.p1;
    double qh = w[1] / w[0];
    phi[0] = g.A + 0.5 * p * qh * qh * g.B;
    phi[1] = -p * qh * g.B;
    phi[2] = g.B;
  } else {
    double q = signed_ratio(s);
    phi[0] = g.A * w[0] / r.r1;
    phi[1] = g.A * q * w[1] / r.r1;
    if (s.m == 3) phi[2] = g.B;
  }
  return phi;
}

double entropy_dual(const GalileanSystem& s, const State& w) {
  return dot(entropy_variables(s, w), w) - entropy(s, w);
}

// ---- closed-form differential data -------------------------------------

Vec velocity_gradient_closed(const GalileanSystem& s, const State& w) {
  require_in_cone(s, w);
  Vec du = Vec::zero(s.m);
  if (kind_of(s) == Kind::Nilpotent) {
    du[0] = -w[1] / (s.p1 * w[0] * w[0]);
    du[1] = 1.0 / (s.p1 * w[0]);
  } else {
    double xi2 = w[0] * w[0] + signed_ratio(s) * w[1] * w[1];
    du[0] = -w[1] / (s.p1 * xi2);
    du[1] = w[0] / (s.p1 * xi2);
  }
  return s.u_scale * du;
}

Mat entropy_hessian_closed(const GalileanSystem& s, const State& w) {
  require_in_cone(s, w);
  RestPoint r = rest_invariants(s, w);
  Grad2 g = s.closure.grad(r.r1, r.r2);
  Hess2 h = s.closure.hess(r.r1, r.r2);
  Mat out = Mat::zero(s.m);

  if (kind_of(s) == Kind::Nilpotent) {
    double p = s.p2 / s.p1;
    double th = w[0], qh = w[1] / w[0];
    double k = 0.5 * p * qh * qh;   // d(rest internal)/d(theta)
    double rr = p * qh;             // -d(rest internal)/d(zeta)
    out.at(0, 0) = h.aa + 2.0 * k * h.ab + k * k * h.bb - 2.0 * k * g.B / th;
    out.at(0, 1) = -rr * (h.ab + k * h.bb) + rr * g.B / th;
    out.at(0, 2) = h.ab + k * h.bb;
    out.at(1, 1) = -p * g.B / th + rr * rr * h.bb;
    out.at(1, 2) = -rr * h.bb;
    out.at(2, 2) = h.bb;
  } else {
    double q = signed_ratio(s);
    double xi = r.r1, th = w[0], ze = w[1];
    out.at(0, 0) = h.aa * th * th / (xi * xi) +
                   g.A * q * ze * ze / (xi * xi * xi);
    out.at(0, 1) = q * th * ze * (h.aa / (xi * xi) - g.A / (xi * xi * xi));
    out.at(1, 1) = h.aa * q * q * ze * ze / (xi * xi) +
                   g.A * q * th * th / (xi * xi * xi);
    if (s.m == 3) {
      out.at(0, 2) = h.ab * th / xi;
      out.at(1, 2) = h.ab * q * ze / xi;
      out.at(2, 2) = h.bb;
    }
  }
  for (int i = 0; i < s.m; ++i)
    for (int j = 0; j < i; ++j) out.at(i, j) = out.at(j, i);
  return out;
}

namespace {

double det3(const Mat& h) {
  return h.at(0, 0) * (h.at(1, 1) * h.at(2, 2) - h.at(1, 2) * h.at(2, 1)) -
         h.at(0, 1) * (h.at(1, 0) * h.at(2, 2) - h.at(1, 2) * h.at(2, 0)) +
         h.at(0, 2) * (h.at(1, 0) * h.at(2, 1) - h.at(1, 1) * h.at(2, 0));
}

}  // namespace

double entropy_hessian_det_closed(const GalileanSystem& s, const State& w) {
  require_in_cone(s, w);
  RestPoint r = rest_invariants(s, w);
  if (kind_of(s) == Kind::Nilpotent)
    return det3(entropy_hessian_closed(s, w));
  Grad2 g = s.closure.grad(r.r1, r.r2);
  Hess2 h = s.closure.hess(r.r1, r.r2);
  double q = signed_ratio(s);
  if (s.m == 2) return q * g.A * h.aa / r.r1;
  return (q / r.r1) * g.A * (h.aa * h.bb - h.ab * h.ab);
}

// ---- boosts ------------------------------------------------------------

bool boost_within_branch(const GalileanSystem& s, const State& w, double v) {
  if (!std::isfinite(v))
    throw DomainViolation("boost_within_branch: non-finite velocity");
  if (kind_of(s) != Kind::Elliptic) return true;
  double omega = std::sqrt(s.p1 * s.p2);
  return omega * (std::abs(velocity(s, w)) + std::abs(v)) <
         0.5 * M_PI - 1e-3;
}

// ---- characteristic analysis --------------------------------------------

Mat jacobian(const GalileanSystem& s, const State& w) {
  require_in_cone(s, w);
  return fd_jacobian_matrix([&](const Vec& x) { return flux(s, x); }, w,
                            [&](const Vec& x) { return cone_contains(s, x); });
}

bool has_analytic_speeds(const GalileanSystem& s) {
  if (s.j_scale != 1.0 || s.u_scale != 1.0) return false;
  if (s.family == Family::Cemracs) return true;
  bool gas_unit = s.closure.name == "ideal-gas" && s.p1 == 1.0 && s.p2 == 1.0;
  return (s.family == Family::EulerGas || s.family == Family::Nil3) &&
         gas_unit;
}

Vec char_speeds_numeric(const GalileanSystem& s, const State& w) {
  Mat jac = jacobian(s, w);
  Eigen::MatrixXd a(s.m, s.m);
  for (int i = 0; i < s.m; ++i)
    for (int j = 0; j < s.m; ++j) a(i, j) = jac.at(i, j);
  Eigen::EigenSolver<Eigen::MatrixXd> solver(a);
  Vec out = Vec::zero(s.m);
  for (int i = 0; i < s.m; ++i) {
    std::complex<double> lambda = solver.eigenvalues()(i);
    if (std::abs(lambda.imag()) > 1e-8 * std::max(1.0, std::abs(lambda)))
      throw HyperbolicityViolation(
          "system '" + s.name + "' at " + format_state(w) +
          ": complex characteristic speed " + num(lambda.real()) + " + " +
          num(lambda.imag()) + "i");
    out[i] = lambda.real();
  }
  std::sort(out.a.begin(), out.a.begin() + s.m);
  return out;
}

Vec char_speeds(const GalileanSystem& s, const State& w) {
  if (!has_analytic_speeds(s)) return char_speeds_numeric(s, w);
  require_in_cone(s, w);
  double u = velocity(s, w);
  double c;
  if (s.family == Family::Cemracs) {
    QuasilinearState v = cemracs_quasilinear_state(s, w);
    double g = s.closure.gamma;
    c = std::sqrt(v.y - 2.0 * v.y * v.y + g / (g - 1.0) * v.y * v.y * v.y);
  } else {
    double pi = mech_pressure_at(s, w);
    c = std::sqrt(s.closure.gamma * pi / w[0]);
  }
  Vec out = Vec::zero(3);
  out[0] = u - c;
  out[1] = u;
  out[2] = u + c;
  return out;
}

double max_wave_speed(const GalileanSystem& s, const State& w) {
  if (has_analytic_speeds(s)) {
    Vec sp = char_speeds(s, w);
    return std::max(std::abs(sp[0]), std::abs(sp[s.m - 1]));
  }
  Vec sp = char_speeds_numeric(s, w);
  double r = std::max(std::abs(sp[0]), std::abs(sp[s.m - 1]));
  return 1.1 * r;
}

// ---- quasilinear form ----------------------------------------------------

QuasilinearState cemracs_quasilinear_state(const GalileanSystem& s,
                                           const State& w) {
  if (s.family != Family::Cemracs)
    throw DomainViolation("quasilinear form is defined for the cemracs "
                          "system only (got '" + s.name + "')");
  require_in_cone(s, w);
  QuasilinearState v;
  v.theta = w[0];
  v.xi = w[1] / w[0];
  double pi = mech_pressure_at(s, w);
  v.phi = pi / std::sqrt(1.0 + v.xi * v.xi);
  v.y = v.phi / v.theta;
  if (!(v.y > 0.0))
    throw DomainViolation("quasilinear state at " + format_state(w) +
                          " has non-positive wave parameter y = " + num(v.y));
  return v;
}

Mat cemracs_quasilinear(const QuasilinearState& v, double gamma) {
  if (!(v.theta > 0.0) || !(v.y > 0.0))
    throw DomainViolation(
        "quasilinear matrix needs theta > 0 and y > 0 (got theta = " +
        num(v.theta) + ", y = " + num(v.y) + ")");
  double xi = v.xi, th = v.theta, y = v.y;
  double s2 = 1.0 + xi * xi;
  Mat b = Mat::zero(3);
  b.at(0, 1) = th / s2 - v.phi;
  b.at(0, 2) = -xi;
  b.at(1, 1) = xi * y;
  b.at(1, 2) = s2 / th;
  b.at(2, 1) = (th / s2) *
               (y - (2.0 + xi * xi) * y * y + gamma / (gamma - 1.0) * y * y * y);
  b.at(2, 2) = -xi * y;
  return b;
}

}  // namespace galcl
