#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "galcl/group.hpp"
#include "galcl/rng.hpp"

using namespace galcl;

namespace {

const Family kAllFamilies[] = {Family::Hyp2, Family::Ell2,   Family::Hyp3,
                               Family::Ell3, Family::Nil3,   Family::EulerGas,
                               Family::Cemracs};

GroupRep rep_with_generic_params(Family f) {
  return has_free_params(f) ? make_group_rep(f, 2.0, 0.5) : make_group_rep(f);
}

}  // namespace

TEST_CASE("family metadata") {
  CHECK(state_dim(Family::Hyp2) == 2);
  CHECK(state_dim(Family::Ell2) == 2);
  CHECK(state_dim(Family::Hyp3) == 3);
  CHECK(state_dim(Family::Ell3) == 3);
  CHECK(state_dim(Family::Nil3) == 3);
  CHECK(state_dim(Family::EulerGas) == 3);
  CHECK(state_dim(Family::Cemracs) == 3);

  CHECK(generator_kind(Family::Hyp2) == Kind::Hyperbolic);
  CHECK(generator_kind(Family::Ell2) == Kind::Elliptic);
  CHECK(generator_kind(Family::Hyp3) == Kind::Hyperbolic);
  CHECK(generator_kind(Family::Ell3) == Kind::Elliptic);
  CHECK(generator_kind(Family::Nil3) == Kind::Nilpotent);
  CHECK(generator_kind(Family::EulerGas) == Kind::Nilpotent);
  CHECK(generator_kind(Family::Cemracs) == Kind::Elliptic);

  CHECK(!dimension_supported(1));
  CHECK(dimension_supported(2));
  CHECK(dimension_supported(3));
  CHECK(!dimension_supported(4));

  for (Family f : kAllFamilies) {
    auto back = family_from_name(family_name(f));
    REQUIRE(back.has_value());
    CHECK(*back == f);
  }
  CHECK(!family_from_name("euler").has_value());
  CHECK(!family_from_name("").has_value());
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(make_group_rep(Family::Hyp2, 0.0, 1.0), DomainViolation);
  CHECK_THROWS_AS(make_group_rep(Family::Hyp2, 1.0, -2.0), DomainViolation);
  CHECK_THROWS_AS(make_group_rep(Family::Nil3, 1.0, 0.0), DomainViolation);
  CHECK_THROWS_AS(
      make_group_rep(Family::Ell3, std::numeric_limits<double>::quiet_NaN(), 1.0),
      DomainViolation);
  CHECK_THROWS_AS(
      make_group_rep(Family::Hyp3, std::numeric_limits<double>::infinity(), 1.0),
      DomainViolation);
  // Fixed-parameter families only accept the unit pair.
  CHECK_THROWS_AS(make_group_rep(Family::EulerGas, 2.0, 1.0), DomainViolation);
  CHECK_THROWS_AS(make_group_rep(Family::Cemracs, 1.0, 0.5), DomainViolation);
  CHECK_NOTHROW(make_group_rep(Family::EulerGas));
  CHECK_NOTHROW(make_group_rep(Family::Cemracs, 1.0, 1.0));
}

TEST_CASE("generator structure by kind") {
  // Hyperbolic: G^2 = p1*p2 on the boosted 2-block (identity for m=2).
  {
    GroupRep r2 = make_group_rep(Family::Hyp2, 2.0, 0.5);
    Mat g2 = r2.generator * r2.generator;
    CHECK(g2.at(0, 0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(g2.at(1, 1) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(g2.at(0, 1) == 0.0);
    CHECK(g2.at(1, 0) == 0.0);

    GroupRep r3 = make_group_rep(Family::Hyp3, 3.0, 0.25);
    Mat h2 = r3.generator * r3.generator;
    CHECK(h2.at(0, 0) == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(h2.at(1, 1) == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(h2.at(2, 2) == 0.0);
    CHECK(max_abs(h2 - (0.75 * Mat::identity(3))) == doctest::Approx(0.75));
  }
  // Elliptic: G^2 = -p1*p2 on the boosted 2-block.
  {
    GroupRep r2 = make_group_rep(Family::Ell2, 2.0, 0.5);
    Mat g2 = r2.generator * r2.generator;
    CHECK(g2.at(0, 0) == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(g2.at(1, 1) == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(g2.at(0, 1) == 0.0);
    CHECK(g2.at(1, 0) == 0.0);
  }
  // Nilpotent: G^2 has the single entry p1*p2 at (2,0); G^3 = 0 exactly.
  {
    GroupRep r = make_group_rep(Family::Nil3, 2.0, 0.5);
    Mat g2 = r.generator * r.generator;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        if (i == 2 && j == 0)
          CHECK(g2.at(i, j) == doctest::Approx(1.0).epsilon(1e-15));
        else
          CHECK(g2.at(i, j) == 0.0);
      }
    Mat g3 = g2 * r.generator;
    CHECK(max_abs(g3) == 0.0);
  }
}

TEST_CASE("generator anticommutes with reflection") {
  for (Family f : kAllFamilies) {
    GroupRep r = rep_with_generic_params(f);
    Mat anti = r.generator * r.reflection + r.reflection * r.generator;
    CHECK(max_abs(anti) <= 1e-15);
  }
}

TEST_CASE("reflection is diagonal +1,-1(,+1)") {
  for (Family f : kAllFamilies) {
    GroupRep r = rep_with_generic_params(f);
    CHECK(r.reflection.at(0, 0) == 1.0);
    CHECK(r.reflection.at(1, 1) == -1.0);
    if (r.m == 3) CHECK(r.reflection.at(2, 2) == 1.0);
    for (int i = 0; i < r.m; ++i)
      for (int j = 0; j < r.m; ++j)
        if (i != j) CHECK(r.reflection.at(i, j) == 0.0);
  }
}

TEST_CASE("boost at v=0 is the identity") {
  for (Family f : kAllFamilies) {
    GroupRep r = rep_with_generic_params(f);
    CHECK(max_abs(boost(r, 0.0) - Mat::identity(r.m)) == 0.0);
  }
}

TEST_CASE("boost closed forms match hand values") {
  // Hyperbolic, alpha=2, beta=0.5: omega=1, sqrt(beta/alpha)=1/2.
  {
    GroupRep r = make_group_rep(Family::Hyp2, 2.0, 0.5);
    Mat y = boost(r, 1.0);
    CHECK(y.at(0, 0) == doctest::Approx(std::cosh(1.0)).epsilon(1e-15));
    CHECK(y.at(0, 1) == doctest::Approx(-0.5 * std::sinh(1.0)).epsilon(1e-15));
    CHECK(y.at(1, 0) == doctest::Approx(-2.0 * std::sinh(1.0)).epsilon(1e-15));
    CHECK(y.at(1, 1) == doctest::Approx(std::cosh(1.0)).epsilon(1e-15));
  }
  // Elliptic, alpha=beta=1.
  {
    GroupRep r = make_group_rep(Family::Ell2, 1.0, 1.0);
    Mat y = boost(r, 0.3);
    CHECK(y.at(0, 0) == doctest::Approx(std::cos(0.3)).epsilon(1e-15));
    CHECK(y.at(0, 1) == doctest::Approx(std::sin(0.3)).epsilon(1e-15));
    CHECK(y.at(1, 0) == doctest::Approx(-std::sin(0.3)).epsilon(1e-15));
    CHECK(y.at(1, 1) == doctest::Approx(std::cos(0.3)).epsilon(1e-15));
  }
  // Hyperbolic m=3 keeps the third component fixed.
  {
    GroupRep r = make_group_rep(Family::Hyp3, 1.5, 0.75);
    Mat y = boost(r, 0.7);
    CHECK(y.at(2, 2) == 1.0);
    CHECK(y.at(0, 2) == 0.0);
    CHECK(y.at(2, 0) == 0.0);
    CHECK(y.at(1, 2) == 0.0);
    CHECK(y.at(2, 1) == 0.0);
  }
  // Nilpotent shear: gas-dynamics boost of a rest state.
  {
    GroupRep r = make_group_rep(Family::EulerGas);
    Vec w = apply(boost(r, 1.0), Vec::of(1.0, 0.0, 1.0));
    CHECK(w[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(w[1] == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(w[2] == doctest::Approx(1.5).epsilon(1e-15));
  }
  // Nil3 with unit parameters is the gas-dynamics representation.
  {
    GroupRep rn = make_group_rep(Family::Nil3, 1.0, 1.0);
    GroupRep rg = make_group_rep(Family::EulerGas);
    for (double v : {-1.7, -0.2, 0.0, 0.9, 2.0})
      CHECK(max_abs(boost(rn, v) - boost(rg, v)) == 0.0);
  }
}

TEST_CASE("boost rejects non-finite velocity") {
  GroupRep r = make_group_rep(Family::Ell2);
  CHECK_THROWS_AS(boost(r, std::numeric_limits<double>::quiet_NaN()),
                  DomainViolation);
  CHECK_THROWS_AS(boost(r, std::numeric_limits<double>::infinity()),
                  DomainViolation);
}

TEST_CASE("group axioms hold over random draws") {
  SampleRng rng(20260401ull);
  for (Family f : kAllFamilies) {
    GroupRep r = rep_with_generic_params(f);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      double v = rng.uniform(-2.0, 2.0);
      double w = rng.uniform(-2.0, 2.0);
      worst = std::max(worst, check_group_axioms(r, v, w).max());
    }
    CAPTURE(family_name(f));
    CHECK(worst < 1e-12);
  }
}

TEST_CASE("boost equals the exponential of the generator") {
  SampleRng rng(77001ull);
  for (Family f : kAllFamilies) {
    GroupRep r = rep_with_generic_params(f);
    for (int i = 0; i < 50; ++i) {
      double v = rng.uniform(-2.0, 2.0);
      CHECK(generator_exp_check(r, v, 30) < 1e-12);
    }
  }
  GroupRep r = make_group_rep(Family::Hyp2);
  CHECK_THROWS_AS(generator_exp_check(r, 1.0, 10), DomainViolation);
}

TEST_CASE("apply checks dimensions") {
  GroupRep r2 = make_group_rep(Family::Hyp2);
  CHECK_THROWS_AS(apply(r2.generator, Vec::of(1.0, 2.0, 3.0)), DomainViolation);
  GroupRep r3 = make_group_rep(Family::Nil3, 1.0, 1.0);
  CHECK_THROWS_AS(apply(r3.generator, Vec::of(1.0, 2.0)), DomainViolation);
  CHECK_NOTHROW(apply(r2.generator, Vec::of(1.0, 2.0)));
}
