#include "galcl/group.hpp"

#include <cmath>

namespace galcl {

int state_dim(Family f) {
  switch (f) {
    case Family::Hyp2:
    case Family::Ell2:
      return 2;
    default:
      return 3;
  }
}

Kind generator_kind(Family f) {
  switch (f) {
    case Family::Hyp2:
    case Family::Hyp3:
      return Kind::Hyperbolic;
    case Family::Ell2:
    case Family::Ell3:
    case Family::Cemracs:
      return Kind::Elliptic;
    case Family::Nil3:
    case Family::EulerGas:
      return Kind::Nilpotent;
  }
  throw DomainViolation("unknown family");
}

std::string family_name(Family f) {
  switch (f) {
    case Family::Hyp2: return "hyp2";
    case Family::Ell2: return "ell2";
    case Family::Hyp3: return "hyp3";
    case Family::Ell3: return "ell3";
    case Family::Nil3: return "nil3";
    case Family::EulerGas: return "eulergas";
    case Family::Cemracs: return "cemracs";
  }
  throw DomainViolation("unknown family");
}

std::optional<Family> family_from_name(std::string_view name) {
  if (name == "hyp2") return Family::Hyp2;
  if (name == "ell2") return Family::Ell2;
  if (name == "hyp3") return Family::Hyp3;
  if (name == "ell3") return Family::Ell3;
  if (name == "nil3") return Family::Nil3;
  if (name == "eulergas") return Family::EulerGas;
  if (name == "cemracs") return Family::Cemracs;
  return std::nullopt;
}

bool has_free_params(Family f) {
  return f != Family::EulerGas && f != Family::Cemracs;
}

bool dimension_supported(int m) { return m == 2 || m == 3; }

GroupRep make_group_rep(Family f, double p1, double p2) {
  if (!(std::isfinite(p1) && std::isfinite(p2)) || p1 <= 0.0 || p2 <= 0.0)
    throw DomainViolation("group parameters must be finite and > 0");
  if (!has_free_params(f) && (p1 != 1.0 || p2 != 1.0))
    throw DomainViolation(family_name(f) + " fixes both group parameters to 1");

  GroupRep rep;
  rep.family = f;
  rep.m = state_dim(f);
  rep.p1 = p1;
  rep.p2 = p2;

  // Reflection: diagonal +-1 in the adapted basis; the middle component
  // (the momentum-like one) flips sign, the others are even.
  rep.reflection = Mat::identity(rep.m);
  rep.reflection.at(1, 1) = -1.0;

  rep.generator = Mat::zero(rep.m);
  switch (generator_kind(f)) {
    case Kind::Hyperbolic:
      rep.generator.at(0, 1) = -p2;
      rep.generator.at(1, 0) = -p1;
      break;
    case Kind::Elliptic:
      rep.generator.at(0, 1) = +p2;
      rep.generator.at(1, 0) = -p1;
      break;
    case Kind::Nilpotent:
      rep.generator.at(1, 0) = -p1;
      rep.generator.at(2, 1) = -p2;
      break;
  }
  return rep;
}

Mat boost(const GroupRep& rep, double v) {
  if (!std::isfinite(v)) throw DomainViolation("boost: velocity must be finite");

  Mat y = Mat::identity(rep.m);
  const double omega = std::sqrt(rep.p1 * rep.p2);
  const double ratio = std::sqrt(rep.p2 / rep.p1);

  switch (generator_kind(rep.family)) {
    case Kind::Hyperbolic: {
      const double ch = std::cosh(v * omega);
      const double sh = std::sinh(v * omega);
      y.at(0, 0) = ch;
      y.at(0, 1) = -ratio * sh;
      y.at(1, 0) = -sh / ratio;
      y.at(1, 1) = ch;
      break;
    }
    case Kind::Elliptic: {
      const double c = std::cos(v * omega);
      const double s = std::sin(v * omega);
      y.at(0, 0) = c;
      y.at(0, 1) = ratio * s;
      y.at(1, 0) = -s / ratio;
      y.at(1, 1) = c;
      break;
    }
    case Kind::Nilpotent: {
      y.at(1, 0) = -rep.p1 * v;
      y.at(2, 0) = 0.5 * rep.p1 * rep.p2 * v * v;
      y.at(2, 1) = -rep.p2 * v;
      break;
    }
  }
  return y;
}

double AxiomResiduals::max() const {
  return std::max(composition, std::max(involution, conjugation));
}

AxiomResiduals check_group_axioms(const GroupRep& rep, double v, double w) {
  if (!(std::isfinite(v) && std::isfinite(w)))
    throw DomainViolation("check_group_axioms: velocities must be finite");

  const Mat yv = boost(rep, v);
  const Mat yw = boost(rep, w);
  const Mat yvw = boost(rep, v + w);
  const Mat& r = rep.reflection;

  AxiomResiduals res;
  res.composition = max_abs(yv * yw - yvw);
  res.involution = max_abs(r * r - Mat::identity(rep.m));
  res.conjugation = max_abs(yv * r * yv - r);
  return res;
}

double generator_exp_check(const GroupRep& rep, double v, int n_terms) {
  if (n_terms < 20)
    throw DomainViolation("generator_exp_check: need at least 20 series terms");
  if (!std::isfinite(v)) throw DomainViolation("generator_exp_check: non-finite v");

  // Truncated series sum_{k<n} (v G)^k / k!, accumulated term by term.
  Mat sum = Mat::identity(rep.m);
  Mat term = Mat::identity(rep.m);
  for (int k = 1; k < n_terms; ++k) {
    term = (v / k) * (term * rep.generator);
    sum = sum + term;
  }
  return max_abs(sum - boost(rep, v));
}

}  // namespace galcl
