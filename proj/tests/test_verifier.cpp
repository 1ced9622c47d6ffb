#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <map>
#include <sstream>

#include "galcl/verifier.hpp"

using namespace galcl;

namespace {

GalileanSystem sys(const char* name) { return *make_system_by_name(name); }

CheckId id_by_name(const std::string& n) {
  for (CheckId id : all_checks())
    if (n == check_name(id)) return id;
  throw std::runtime_error("unknown check name " + n);
}

}  // namespace

TEST_CASE("check catalogue") {
  auto ids = all_checks();
  CHECK(ids.size() == 10);
  std::map<std::string, double> tol;
  for (CheckId id : ids) tol[check_name(id)] = check_tolerance(id);
  CHECK(tol.size() == 10);  // names unique
  CHECK(tol["compatibility"] == 1e-6);
  CHECK(tol["entropy-pair"] == 1e-6);
  CHECK(tol["velocity-boost"] == 1e-9);
  CHECK(tol["flux-reflection"] == 1e-12);
  CHECK(tol["hessian-spd-det"] == 1e-5);
  CHECK(tol["rest-parity"] == 1e-14);
}

TEST_CASE("samplers stay inside the cone and are deterministic") {
  for (const auto& s : default_suite_systems()) {
    CAPTURE(s.name);
    SampleRng rng(hash_combine(5, s.name));
    for (int k = 0; k < 500; ++k) {
      State w0 = sample_rest_state(s, rng);
      CHECK(cone_contains(s, w0));
      CHECK(velocity(s, w0) == 0.0);
      State w = sample_cone_state(s, rng, 2.0);
      CHECK(cone_contains(s, w));
    }
    SampleRng a(99), b(99);
    for (int k = 0; k < 10; ++k)
      CHECK(max_abs(sample_cone_state(s, a, 2.0) -
                    sample_cone_state(s, b, 2.0)) == 0.0);
  }
}

TEST_CASE("rest states pair the generator direction of the flux with the dual") {
  // At rest, contracting the entropy gradient with the generator applied
  // to the thermodynamic flux yields exactly the dual potential.
  for (const auto& s : default_suite_systems()) {
    CAPTURE(s.name);
    SampleRng rng(hash_combine(6, s.name));
    for (int k = 0; k < 20; ++k) {
      State w0 = sample_rest_state(s, rng);
      double lhs = dot(entropy_variables(s, w0),
                       apply(s.rep.generator, thermo_flux(s, w0)));
      double rhs = entropy_dual(s, w0);
      CHECK(std::abs(lhs - rhs) <= 1e-8 * std::max(1.0, std::abs(rhs)));
    }
  }
}

TEST_CASE("compatibility and entropy-pair checks pass for every system") {
  SampleSpec spec;
  for (const auto& s : default_suite_systems()) {
    CAPTURE(s.name);
    CheckReport c = verify_compatibility(s, 42, spec);
    CHECK(c.pass);
    CHECK(c.samples == 500);
    CHECK(c.max_residual < 1e-6);
    CheckReport e = verify_entropy_pair(s, 42, spec);
    CHECK(e.pass);
    CHECK(e.samples == 500);
  }
  // Pointwise closed-form example away from rest.
  auto r = check_residual(sys("hyp2"), CheckId::EntropyPair,
                          Vec::of(1.2, 0.3));
  REQUIRE(r.has_value());
  CHECK(*r < 1e-8);
}

TEST_CASE("transformation checks pass; elliptic branch exclusions are counted") {
  SampleSpec spec;
  for (const auto& s : default_suite_systems()) {
    CAPTURE(s.name);
    auto reports = verify_transformations(s, 43, spec);
    REQUIRE(reports.size() == 5);
    long excluded = 0;
    for (const auto& r : reports) {
      CAPTURE(r.check);
      CHECK(r.pass);
      CHECK(r.samples == 500);
      excluded += r.excluded;
    }
    bool elliptic = generator_kind(s.family) == Kind::Elliptic;
    if (elliptic) CHECK(excluded > 0);
    if (!elliptic) CHECK(excluded == 0);
  }
  // Fixed boost grid covering the stated range.
  auto grid = verify_transformations(sys("eulergas"), 44, spec,
                                     {-2.0, -1.0, 0.0, 1.0, 2.0});
  for (const auto& r : grid) {
    CHECK(r.pass);
    CHECK(r.max_residual < 1e-9);
  }
}

TEST_CASE("hessian check: SPD + determinant for genuine systems, expected fail for sign violation") {
  SampleSpec spec;
  for (const auto& s : default_suite_systems()) {
    CAPTURE(s.name);
    CheckReport r = verify_hessians(s, 45, spec);
    CHECK(r.pass);
    CHECK(r.max_residual < 1e-5);
  }
  // A three-component elliptic family with a closure whose first slope is
  // negative loses positive definiteness: the check must fail loudly.
  GalileanSystem wrong = make_system(Family::Ell3, closure_inverse_square());
  CheckReport bad = verify_hessians(wrong, 46, spec);
  CHECK(!bad.pass);
  CHECK(bad.max_residual >= 1.0);  // SPD penalty dominates
}

TEST_CASE("rest parity and rest projection") {
  SampleSpec spec;
  for (const auto& s : default_suite_systems()) {
    CAPTURE(s.name);
    CheckReport r = verify_rest_parity(s, 47, spec);
    CHECK(r.pass);
    CHECK(r.samples == 100);
    CHECK(r.max_residual <= 1e-14);
    CheckReport p = run_check(s, CheckId::RestProjection, 47, spec);
    CHECK(p.pass);
    CHECK(p.max_residual <= 1e-12);
  }
}

TEST_CASE("corrupted fixture fails the differential identities with a named culprit") {
  GalileanSystem corrupted = *make_system_by_name("corrupted-fixture");
  SampleSpec spec;
  CheckReport c = verify_compatibility(corrupted, 48, spec);
  CHECK(!c.pass);
  CHECK(c.max_residual > 1e-3);
  CHECK(c.name == "corrupted-fixture");
  CheckReport e = verify_entropy_pair(corrupted, 48, spec);
  CHECK(!e.pass);

  // The mutation rescales the flux uniformly, so equivariance still holds:
  // only the differential identities expose it.
  CheckReport cov = run_check(corrupted, CheckId::FluxCovariance, 48, spec);
  CHECK(cov.pass);

  auto systems = default_suite_systems();
  systems.push_back(corrupted);
  SuiteReport suite = run_suite(systems, 48, spec);
  CHECK(!suite.all_pass);
  for (const auto& r : suite.reports)
    if (!r.pass) CHECK(r.name == "corrupted-fixture");
  CHECK(suite_text(suite).find("pass=no") != std::string::npos);
}

TEST_CASE("suite: size, determinism, replayability, serialization") {
  SampleSpec spec;
  auto systems = default_suite_systems();
  SuiteReport a = run_suite(systems, 42, spec);
  SuiteReport b = run_suite(systems, 42, spec);
  CHECK(a.reports.size() == 70);
  CHECK(a.reports.size() >= 35);
  CHECK(a.all_pass);
  CHECK(suite_text(a) == suite_text(b));
  CHECK(suite_csv(a) == suite_csv(b));

  // Changing the seed changes sampled residuals somewhere.
  SuiteReport c = run_suite(systems, 43, spec);
  CHECK(suite_text(a) != suite_text(c));

  // Per-(system,check) seeding: a report is independent of list order.
  CheckReport solo = run_check(systems[5], CheckId::Compatibility, 42, spec);
  bool found = false;
  for (const auto& r : a.reports)
    if (r.check == solo.check && r.name == solo.name) {
      found = true;
      CHECK(report_text(r) == report_text(solo));
    }
  CHECK(found);

  // Replayability: the recorded worst state reproduces the max residual.
  std::map<std::string, GalileanSystem> by_name;
  for (const auto& s : systems) by_name.emplace(s.name, s);
  for (const auto& r : a.reports) {
    REQUIRE(r.samples > 0);
    auto replay = check_residual(by_name.at(r.name), id_by_name(r.check),
                                 r.worst_state, spec.v_max);
    REQUIRE(replay.has_value());
    CHECK(std::abs(*replay - r.max_residual) <= 1e-14);
  }

  // CSV shape: header + one row per report, all fields present.
  std::istringstream csv(suite_csv(a));
  std::string line;
  std::getline(csv, line);
  CHECK(line == "check,name,samples,max_residual,tolerance,pass");
  long rows = 0;
  while (std::getline(csv, line)) {
    ++rows;
    CHECK(std::count(line.begin(), line.end(), ',') == 5);
    CHECK(line.find("true") != std::string::npos);
  }
  CHECK(rows == 70);
}
