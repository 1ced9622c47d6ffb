#pragma once
/*
 * Matrix representations of the one-dimensional Galileo group (velocity
 * boosts plus space reflection) acting on conserved states.
 *
 * Each system family carries a representation: a boost generator G, the
 * closed-form one-parameter subgroup Y(v) = exp(v G), and a reflection R.
 * Three structural classes of generator exist:
 *
 *   hyperbolic:  G^2 = +p1*p2 * Id   (boosts are cosh/sinh rotations)
 *   elliptic:    G^2 = -p1*p2 * Id   (boosts are circular rotations)
 *   nilpotent:   G^3 = 0             (boosts are lower-triangular shears)
 *
 * The required identities are
 *   Y(v) Y(w) = Y(v+w),   R^2 = Id,   Y(v) R Y(v) = R,
 * and infinitesimally G R + R G = 0.
 */

#include <optional>
#include <string>
#include <string_view>

#include "galcl/smallvec.hpp"

namespace galcl {

enum class Family { Hyp2, Ell2, Hyp3, Ell3, Nil3, EulerGas, Cemracs };

// Structural class of the boost generator.
enum class Kind { Hyperbolic, Elliptic, Nilpotent };

int state_dim(Family f);
Kind generator_kind(Family f);
std::string family_name(Family f);
std::optional<Family> family_from_name(std::string_view name);

// Families with a free parameter pair (alpha,beta resp. a,b). EulerGas and
// Cemracs fix both parameters to 1.
bool has_free_params(Family f);

// State dimensions for which invariant systems exist. One-component
// systems admit no nontrivial boost action, so m = 1 is rejected.
bool dimension_supported(int m);

struct GroupRep {
  Family family;
  int m;
  double p1 = 1.0;  // alpha (m=2) or a (m=3)
  double p2 = 1.0;  // beta  (m=2) or b (m=3)
  Mat generator;    // G, the derivative of v -> Y(v) at v = 0
  Mat reflection;   // R, diagonal +-1 in the adapted basis
};

// Build the representation for a family. Parameters must be strictly
// positive; families with fixed parameters accept only 1.
GroupRep make_group_rep(Family f, double p1 = 1.0, double p2 = 1.0);

// Closed-form boost matrix Y(v). Throws DomainViolation on non-finite v.
Mat boost(const GroupRep& rep, double v);

struct AxiomResiduals {
  double composition;  // max-abs of Y(v)Y(w) - Y(v+w)
  double involution;   // max-abs of R^2 - Id
  double conjugation;  // max-abs of Y(v) R Y(v) - R
  double max() const;
};

AxiomResiduals check_group_axioms(const GroupRep& rep, double v, double w);

// Max-abs difference between the truncated power series of exp(v G) and
// the closed-form boost. Requires n_terms >= 20.
double generator_exp_check(const GroupRep& rep, double v, int n_terms);

}  // namespace galcl
