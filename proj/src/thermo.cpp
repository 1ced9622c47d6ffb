#include "galcl/thermo.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "galcl/errors.hpp"

namespace galcl {

namespace {

std::string point_str(int arity, double a, double b) {
  std::ostringstream os;
  os << "(" << a;
  if (arity == 2) os << ", " << b;
  os << ")";
  return os.str();
}

void require_in_domain(const EntropyClosure& c, double a, double b) {
  if (!c.in_domain(a, b))
    throw ClosureDomainError("closure '" + c.name + "' is undefined at " +
                             point_str(c.arity, a, b));
}

bool hess_spd(const EntropyClosure& c, const Hess2& h) {
  if (c.arity == 1) return h.aa > 0.0;
  return h.aa > 0.0 && h.aa * h.bb - h.ab * h.ab > 0.0;
}

bool sign_ok(int declared, double v) {
  if (declared > 0) return v > 0.0;
  if (declared < 0) return v < 0.0;
  return true;
}

}  // namespace

void validate_closure(const EntropyClosure& c) {
  const int na = 9;
  const int nb = c.arity == 2 ? 9 : 1;
  for (int i = 0; i < na; ++i) {
    double a = c.alpha_lo + (c.alpha_hi - c.alpha_lo) * i / (na - 1);
    for (int k = 0; k < nb; ++k) {
      double b = c.arity == 2
                     ? c.beta_lo + (c.beta_hi - c.beta_lo) * k / (nb - 1)
                     : 0.0;
      if (!c.in_domain(a, b))
        throw DomainViolation("closure '" + c.name +
                              "': sampling box leaves the domain at " +
                              point_str(c.arity, a, b));
      double v = c.value(a, b);
      Grad2 g = c.grad(a, b);
      Hess2 h = c.hess(a, b);
      if (!std::isfinite(v) || !std::isfinite(g.A) || !std::isfinite(g.B) ||
          !std::isfinite(h.aa) || !std::isfinite(h.ab) || !std::isfinite(h.bb))
        throw DomainViolation("closure '" + c.name +
                              "': non-finite evaluation at " +
                              point_str(c.arity, a, b));
      if (!hess_spd(c, h))
        throw DomainViolation("closure '" + c.name +
                              "': Hessian not positive definite at " +
                              point_str(c.arity, a, b));
      if (!sign_ok(c.signs.dalpha, g.A) || !sign_ok(c.signs.dbeta, g.B))
        throw DomainViolation("closure '" + c.name +
                              "': declared gradient sign violated at " +
                              point_str(c.arity, a, b));
    }
  }
}

EntropyClosure closure_inverse() {
  EntropyClosure c;
  c.name = "inverse";
  c.arity = 1;
  c.signs = {-1, 0};
  c.in_domain = [](double x, double) { return x > 0.0; };
  c.value = [](double x, double) { return 1.0 / x; };
  c.grad = [](double x, double) { return Grad2{-1.0 / (x * x), 0.0}; };
  c.hess = [](double x, double) { return Hess2{2.0 / (x * x * x), 0.0, 0.0}; };
  validate_closure(c);
  return c;
}

EntropyClosure closure_square() {
  EntropyClosure c;
  c.name = "square";
  c.arity = 1;
  c.signs = {+1, 0};
  c.in_domain = [](double x, double) { return x > 0.0; };
  c.value = [](double x, double) { return x * x; };
  c.grad = [](double x, double) { return Grad2{2.0 * x, 0.0}; };
  c.hess = [](double, double) { return Hess2{2.0, 0.0, 0.0}; };
  validate_closure(c);
  return c;
}

EntropyClosure closure_inverse_square() {
  EntropyClosure c;
  c.name = "inverse-square";
  c.arity = 2;
  c.signs = {-1, 0};
  c.in_domain = [](double a, double) { return a > 0.0; };
  c.value = [](double a, double b) { return 1.0 / a + b * b; };
  c.grad = [](double a, double b) { return Grad2{-1.0 / (a * a), 2.0 * b}; };
  c.hess = [](double a, double) {
    return Hess2{2.0 / (a * a * a), 0.0, 2.0};
  };
  validate_closure(c);
  return c;
}

EntropyClosure closure_sum_squares() {
  EntropyClosure c;
  c.name = "sum-squares";
  c.arity = 2;
  c.signs = {+1, 0};
  c.in_domain = [](double a, double) { return a > 0.0; };
  c.value = [](double a, double b) { return a * a + b * b; };
  c.grad = [](double a, double b) { return Grad2{2.0 * a, 2.0 * b}; };
  c.hess = [](double, double) { return Hess2{2.0, 0.0, 2.0}; };
  validate_closure(c);
  return c;
}

namespace {

// Shared body of the two gas-type closures:
//   sigma(a, b) = -a * log[(gamma-1) b / a^gamma].
EntropyClosure gas_like(double gamma, const char* name) {
  if (!std::isfinite(gamma) || gamma <= 1.0)
    throw DomainViolation(std::string("closure '") + name +
                          "': adiabatic exponent must be finite and > 1");
  EntropyClosure c;
  c.name = name;
  c.arity = 2;
  c.gamma = gamma;
  c.value = [gamma](double a, double b) {
    return -a * std::log((gamma - 1.0) * b / std::pow(a, gamma));
  };
  c.grad = [gamma](double a, double b) {
    double log_term = std::log((gamma - 1.0) * b / std::pow(a, gamma));
    return Grad2{gamma - log_term, -a / b};
  };
  c.hess = [gamma](double a, double b) {
    return Hess2{gamma / a, -1.0 / b, a / (b * b)};
  };
  return c;
}

}  // namespace

EntropyClosure closure_ideal_gas(double gamma) {
  EntropyClosure c = gas_like(gamma, "ideal-gas");
  c.signs = {0, -1};
  c.in_domain = [](double a, double b) { return a > 0.0 && b > 0.0; };
  validate_closure(c);
  return c;
}

EntropyClosure closure_cemracs(double gamma) {
  EntropyClosure c = gas_like(gamma, "cemracs");
  c.signs = {+1, -1};
  // Restrict to the region where d(sigma)/d(alpha) > 0, as an elliptic
  // three-component system requires.
  c.in_domain = [gamma](double a, double b) {
    return a > 0.0 && b > 0.0 &&
           gamma - std::log((gamma - 1.0) * b / std::pow(a, gamma)) > 0.0;
  };
  c.alpha_lo = 0.8;
  c.alpha_hi = 3.0;
  c.beta_lo = 0.5;
  c.beta_hi = 2.0;
  validate_closure(c);
  return c;
}

std::optional<EntropyClosure> closure_by_name(std::string_view name,
                                              double gamma) {
  if (name == "inverse") return closure_inverse();
  if (name == "square") return closure_square();
  if (name == "inverse-square") return closure_inverse_square();
  if (name == "sum-squares") return closure_sum_squares();
  if (name == "ideal-gas") return closure_ideal_gas(gamma);
  if (name == "cemracs") return closure_cemracs(gamma);
  return std::nullopt;
}

std::string known_closure_names() {
  return "inverse, square, inverse-square, sum-squares, ideal-gas, cemracs";
}

DualPoint conjugate_at_gradient(const EntropyClosure& c, double alpha,
                                double beta) {
  require_in_domain(c, alpha, beta);
  Grad2 g = c.grad(alpha, beta);
  DualPoint d;
  d.arity = c.arity;
  d.A = g.A;
  d.B = c.arity == 2 ? g.B : 0.0;
  double pairing = alpha * g.A + (c.arity == 2 ? beta * g.B : 0.0);
  d.value = pairing - c.value(alpha, beta);
  return d;
}

namespace {

constexpr double kConjTol = 1e-12;
constexpr int kMaxNewton = 100;

// Monotone bisection for sigma'(x) = target; sigma' is strictly
// increasing since sigma'' > 0 on the domain.
ConjugateResult bisect_arity1(const EntropyClosure& c, double target,
                              double x0) {
  auto g = [&](double x) { return c.grad(x, 0.0).A - target; };
  double lo = x0, hi = x0;
  double glo = g(lo), ghi = glo;
  for (int k = 0; k < 200 && glo > 0.0; ++k) {
    hi = lo;
    ghi = glo;
    lo *= 0.5;
    if (!c.in_domain(lo, 0.0)) break;
    glo = g(lo);
  }
  for (int k = 0; k < 200 && ghi < 0.0; ++k) {
    lo = hi;
    glo = ghi;
    hi *= 2.0;
    if (!c.in_domain(hi, 0.0) || !std::isfinite(g(hi))) break;
    ghi = g(hi);
  }
  if (!(glo <= 0.0 && ghi >= 0.0))
    throw NoSolution("conjugate_general: slope " + std::to_string(target) +
                     " is outside the gradient range of closure '" + c.name +
                     "'");
  for (int k = 0; k < 200; ++k) {
    double mid = 0.5 * (lo + hi);
    double gm = g(mid);
    if (gm < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  double x = 0.5 * (lo + hi);
  if (std::abs(g(x)) > 1e-9)
    throw NoSolution("conjugate_general: bisection failed to reach slope " +
                     std::to_string(target) + " for closure '" + c.name + "'");
  ConjugateResult r;
  r.alpha = x;
  r.iterations = kMaxNewton;
  r.dual = conjugate_at_gradient(c, x);
  return r;
}

}  // namespace

ConjugateResult conjugate_general(const EntropyClosure& c, double A, double B) {
  if (!std::isfinite(A) || (c.arity == 2 && !std::isfinite(B)))
    throw DomainViolation("conjugate_general: non-finite target slopes");

  double x = 0.5 * (c.alpha_lo + c.alpha_hi);
  double y = c.arity == 2 ? 0.5 * (c.beta_lo + c.beta_hi) : 0.0;

  auto residual = [&](double px, double py) {
    Grad2 g = c.grad(px, py);
    double r = std::abs(g.A - A);
    if (c.arity == 2) r = std::max(r, std::abs(g.B - B));
    return r;
  };

  double res = residual(x, y);
  for (int it = 0; it < kMaxNewton; ++it) {
    if (res < kConjTol) {
      ConjugateResult r;
      r.alpha = x;
      r.beta = y;
      r.iterations = it;
      r.dual = conjugate_at_gradient(c, x, y);
      return r;
    }
    Grad2 g = c.grad(x, y);
    Hess2 h = c.hess(x, y);
    double sx, sy = 0.0;
    if (c.arity == 1) {
      if (!(h.aa > 0.0) || !std::isfinite(h.aa))
        throw SingularHessian("conjugate_general: closure '" + c.name +
                              "' has a non-positive second derivative");
      sx = -(g.A - A) / h.aa;
    } else {
      double det = h.aa * h.bb - h.ab * h.ab;
      if (!(std::abs(det) > 0.0) || !std::isfinite(det))
        throw SingularHessian("conjugate_general: singular Hessian of '" +
                              c.name + "' at " + point_str(2, x, y));
      double ra = g.A - A, rb = g.B - B;
      sx = -(h.bb * ra - h.ab * rb) / det;
      sy = -(h.aa * rb - h.ab * ra) / det;
    }
    // Damp by halving until the step lands in the domain and the slope
    // residual decreases.
    double t = 1.0;
    bool moved = false;
    while (t > 1e-14) {
      double nx = x + t * sx, ny = y + t * sy;
      if (c.in_domain(nx, ny)) {
        double nres = residual(nx, ny);
        if (nres < res) {
          x = nx;
          y = ny;
          res = nres;
          moved = true;
          break;
        }
      }
      t *= 0.5;
    }
    if (!moved) break;  // stalled: fall through to bisection / failure
  }

  if (res < kConjTol) {
    ConjugateResult r;
    r.alpha = x;
    r.beta = y;
    r.iterations = kMaxNewton;
    r.dual = conjugate_at_gradient(c, x, y);
    return r;
  }
  if (c.arity == 1)
    return bisect_arity1(c, A, 0.5 * (c.alpha_lo + c.alpha_hi));
  throw NoSolution("conjugate_general: no point of closure '" + c.name +
                   "' attains slopes " + point_str(2, A, B));
}

double mech_pressure(Family f, const EntropyClosure& c, double r1, double r2,
                     double b_param) {
  if (!(std::isfinite(b_param)) || b_param <= 0.0)
    throw DomainViolation("mech_pressure: group parameter must be positive");

  if (f == Family::Cemracs) {
    // Closed form: (gamma-1) theta / (gamma - log[(gamma-1) psi / theta^gamma]).
    require_in_domain(c, r1, r2);
    double gamma = c.gamma;
    double den =
        gamma - std::log((gamma - 1.0) * r2 / std::pow(r1, gamma));
    if (den == 0.0 || !std::isfinite(den))
      throw DegenerateClosure("mech_pressure: vanishing slope at " +
                              point_str(2, r1, r2));
    return (gamma - 1.0) * r1 / den;
  }

  DualPoint d = conjugate_at_gradient(c, r1, r2);
  double sign, slope;
  switch (f) {
    case Family::Hyp2:
      sign = -1.0;
      slope = d.A;
      break;
    case Family::Ell2:
      sign = +1.0;
      slope = d.A;
      break;
    case Family::Hyp3:
      sign = -1.0;
      slope = d.A;
      break;
    case Family::Ell3:
      sign = +1.0;
      slope = d.A;
      break;
    case Family::Nil3:
    case Family::EulerGas:
      sign = -1.0;
      slope = d.B;
      break;
    default:
      throw DomainViolation("mech_pressure: unknown family");
  }
  double den = b_param * slope;
  if (den == 0.0)
    throw DegenerateClosure("mech_pressure: closure '" + c.name +
                            "' has a vanishing gradient component at " +
                            point_str(c.arity, r1, r2));
  double pi = sign * d.value / den;
  if (!std::isfinite(pi))
    throw DegenerateClosure("mech_pressure: non-finite pressure at " +
                            point_str(c.arity, r1, r2));
  return pi;
}

GasDual gas_dual_from_physical(const GasPhysical& ph) {
  if (!(std::isfinite(ph.T) && std::isfinite(ph.p) && std::isfinite(ph.mu)) ||
      ph.T <= 0.0 || ph.p <= 0.0)
    throw DomainViolation(
        "gas_dual_from_physical: need finite T > 0 and p > 0");
  return GasDual{ph.mu / ph.T, -1.0 / ph.T, ph.p / ph.T};
}

GasPhysical gas_physical_from_dual(const GasDual& d) {
  if (!(std::isfinite(d.A) && std::isfinite(d.B) && std::isfinite(d.sigma_star)) ||
      d.B >= 0.0 || d.sigma_star <= 0.0)
    throw DomainViolation(
        "gas_physical_from_dual: need finite slopes with B < 0 and a "
        "positive conjugate value");
  double t = -1.0 / d.B;
  return GasPhysical{t, t * d.sigma_star, t * d.A};
}

GasPhysical gas_physical_at(const EntropyClosure& gas, double rho,
                            double psi) {
  if (gas.arity != 2)
    throw DomainViolation(
        "gas_physical_at: gas thermodynamics needs a two-argument closure");
  DualPoint d = conjugate_at_gradient(gas, rho, psi);
  return gas_physical_from_dual(GasDual{d.A, d.B, d.value});
}

}  // namespace galcl
