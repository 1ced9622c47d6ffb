#include "galcl/verifier.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "galcl/errors.hpp"
#include "galcl/fd.hpp"

namespace galcl {

namespace {

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double det_of(const Mat& h) {
  if (h.m == 2) return h.at(0, 0) * h.at(1, 1) - h.at(0, 1) * h.at(1, 0);
  return h.at(0, 0) * (h.at(1, 1) * h.at(2, 2) - h.at(1, 2) * h.at(2, 1)) -
         h.at(0, 1) * (h.at(1, 0) * h.at(2, 2) - h.at(1, 2) * h.at(2, 0)) +
         h.at(0, 2) * (h.at(1, 0) * h.at(2, 1) - h.at(1, 1) * h.at(2, 0));
}

double min_eigenvalue(const Mat& h) {
  Eigen::MatrixXd m(h.m, h.m);
  for (int i = 0; i < h.m; ++i)
    for (int j = 0; j < h.m; ++j) m(i, j) = h.at(i, j);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  return es.eigenvalues().minCoeff();
}

// Unit direction for finite-difference probes, drawn from the state-seeded
// auxiliary stream.
Vec random_direction(SampleRng& rng, int m) {
  for (;;) {
    Vec r = Vec::zero(m);
    for (int i = 0; i < m; ++i) r[i] = rng.uniform(-1.0, 1.0);
    double n = 0.0;
    for (int i = 0; i < m; ++i) n += r[i] * r[i];
    n = std::sqrt(n);
    if (n < 0.1) continue;
    return (1.0 / n) * r;
  }
}

// Test boost drawn from the auxiliary stream, or from the caller's grid.
double test_boost(SampleRng& rng, std::uint64_t state_hash, double v_max,
                  const std::vector<double>& v_grid) {
  if (!v_grid.empty())
    return v_grid[static_cast<std::size_t>(state_hash % v_grid.size())];
  return rng.uniform(-v_max, v_max);
}

double rel3(double mismatch, double a, double b) {
  return std::abs(mismatch) / std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

const char* check_name(CheckId id) {
  switch (id) {
    case CheckId::Compatibility: return "compatibility";
    case CheckId::EntropyPair: return "entropy-pair";
    case CheckId::VelocityBoost: return "velocity-boost";
    case CheckId::VelocityReflection: return "velocity-reflection";
    case CheckId::FluxCovariance: return "flux-covariance";
    case CheckId::FluxReflection: return "flux-reflection";
    case CheckId::EntropyInvariance: return "entropy-invariance";
    case CheckId::HessianSpdDet: return "hessian-spd-det";
    case CheckId::RestParity: return "rest-parity";
    case CheckId::RestProjection: return "rest-projection";
  }
  return "unknown";
}

double check_tolerance(CheckId id) {
  switch (id) {
    case CheckId::Compatibility: return 1e-6;
    case CheckId::EntropyPair: return 1e-6;
    case CheckId::VelocityBoost: return 1e-9;
    case CheckId::VelocityReflection: return 1e-14;
    case CheckId::FluxCovariance: return 1e-9;
    case CheckId::FluxReflection: return 1e-12;
    case CheckId::EntropyInvariance: return 1e-10;
    case CheckId::HessianSpdDet: return 1e-5;
    case CheckId::RestParity: return 1e-14;
    case CheckId::RestProjection: return 1e-12;
  }
  return 0.0;
}

std::vector<CheckId> all_checks() {
  return {CheckId::Compatibility,     CheckId::EntropyPair,
          CheckId::VelocityBoost,     CheckId::VelocityReflection,
          CheckId::FluxCovariance,    CheckId::FluxReflection,
          CheckId::EntropyInvariance, CheckId::HessianSpdDet,
          CheckId::RestParity,        CheckId::RestProjection};
}

State sample_rest_state(const GalileanSystem& s, SampleRng& rng) {
  const EntropyClosure& c = s.closure;
  double r1 = rng.uniform(std::max(0.5, c.alpha_lo), std::min(5.0, c.alpha_hi));
  if (s.m == 2) return Vec::of(r1, 0.0);
  return Vec::of(r1, 0.0, rng.uniform(c.beta_lo, c.beta_hi));
}

State sample_cone_state(const GalileanSystem& s, SampleRng& rng,
                        double v_max) {
  State w0 = sample_rest_state(s, rng);
  double bound = v_max;
  if (generator_kind(s.family) == Kind::Elliptic)
    bound = std::min(v_max,
                     (0.5 * M_PI - 2e-3) / std::sqrt(s.p1 * s.p2));
  return apply(boost(s.rep, rng.uniform(-bound, bound)), w0);
}

std::optional<double> check_residual(const GalileanSystem& s, CheckId id,
                                     const State& w, double v_max,
                                     const std::vector<double>& v_grid) {
  const std::uint64_t h = hash_state(w);
  SampleRng aux(hash_combine(h, check_name(id)));
  auto ok = [&](const Vec& x) { return cone_contains(s, x); };

  switch (id) {
    case CheckId::Compatibility: {
      Vec r = random_direction(aux, s.m);
      Vec dj_r = fd_directional([&](const Vec& x) { return thermo_flux(s, x); },
                                w, r, ok);
      double du_r = fd_directional(
          [&](const Vec& x) { return velocity(s, x); }, w, r, ok);
      double lhs = dot(entropy_variables(s, w), dj_r);
      double rhs = entropy_dual(s, w) * du_r;
      return rel3(lhs + rhs, lhs, rhs);
    }
    case CheckId::EntropyPair: {
      Vec r = random_direction(aux, s.m);
      double d_eta_u = fd_directional(
          [&](const Vec& x) { return entropy(s, x) * velocity(s, x); }, w, r,
          ok);
      Vec df_r =
          fd_directional([&](const Vec& x) { return flux(s, x); }, w, r, ok);
      double rhs = dot(entropy_variables(s, w), df_r);
      return rel3(d_eta_u - rhs, d_eta_u, rhs);
    }
    case CheckId::VelocityBoost: {
      double v = test_boost(aux, h, v_max, v_grid);
      if (!boost_within_branch(s, w, v)) return std::nullopt;
      State bw = apply(boost(s.rep, v), w);
      return std::abs(velocity(s, bw) - (velocity(s, w) - v));
    }
    case CheckId::VelocityReflection:
      return std::abs(velocity(s, apply(s.rep.reflection, w)) +
                      velocity(s, w));
    case CheckId::FluxCovariance: {
      double v = test_boost(aux, h, v_max, v_grid);
      if (!boost_within_branch(s, w, v)) return std::nullopt;
      Mat y = boost(s.rep, v);
      return max_abs(thermo_flux(s, apply(y, w)) -
                     apply(y, thermo_flux(s, w)));
    }
    case CheckId::FluxReflection:
      return max_abs(thermo_flux(s, apply(s.rep.reflection, w)) +
                     apply(s.rep.reflection, thermo_flux(s, w)));
    case CheckId::EntropyInvariance: {
      double v = test_boost(aux, h, v_max, v_grid);
      if (!boost_within_branch(s, w, v)) return std::nullopt;
      double base = entropy(s, w);
      double rb = std::abs(entropy(s, apply(boost(s.rep, v), w)) - base);
      double rr = std::abs(entropy(s, apply(s.rep.reflection, w)) - base);
      return std::max(rb, rr);
    }
    case CheckId::HessianSpdDet: {
      // Step scale = rest radius: the curvature length of the entropy,
      // which the coordinates of a strongly boosted state do not reflect.
      Mat hess = fd_hessian([&](const Vec& x) { return entropy(s, x); }, w,
                            ok, rest_invariants(s, w).r1);
      double mineig = min_eigenvalue(hess);
      double spd_penalty = mineig > 0.0 ? 0.0 : 1.0 + std::abs(mineig);
      double dc = entropy_hessian_det_closed(s, w);
      double det_rel = std::abs(det_of(hess) - dc) /
                       std::max(std::abs(dc), 1e-300);
      return std::max(det_rel, spd_penalty);
    }
    case CheckId::RestParity: {
      double fix = max_abs(apply(s.rep.reflection, w) - w);
      Vec j = thermo_flux(s, w);
      double lambda1 = std::abs(j[0]);
      if (s.m == 3) lambda1 = std::max(lambda1, std::abs(j[2]));
      return std::max(fix, lambda1);
    }
    case CheckId::RestProjection:
      return std::abs(velocity(s, rest_projection(s, w)));
  }
  return std::nullopt;
}

CheckReport run_check(const GalileanSystem& s, CheckId id,
                      std::uint64_t seed, const SampleSpec& spec,
                      const std::vector<double>& v_grid) {
  CheckReport rep;
  rep.check = check_name(id);
  rep.name = s.name;
  rep.tolerance = check_tolerance(id);
  rep.worst_state = Vec::zero(s.m);

  SampleRng rng(hash_combine(hash_combine(seed, s.name), rep.check));
  const bool rest_only = id == CheckId::RestParity;
  const long target = rest_only ? spec.n_rest_samples : spec.n_samples;
  const long attempt_cap = 20 * target;

  for (long attempt = 0; attempt < attempt_cap && rep.samples < target;
       ++attempt) {
    State w = rest_only ? sample_rest_state(s, rng)
                        : sample_cone_state(s, rng, spec.v_max);
    std::optional<double> r;
    try {
      r = check_residual(s, id, w, spec.v_max, v_grid);
    } catch (const FiniteDifferenceFailure&) {
      ++rep.excluded;
      continue;
    }
    if (!r) {
      ++rep.excluded;
      continue;
    }
    if (rep.samples == 0 || *r > rep.max_residual) {
      rep.max_residual = *r;
      rep.worst_state = w;
    }
    ++rep.samples;
  }
  rep.pass = rep.max_residual <= rep.tolerance;
  return rep;
}

CheckReport verify_compatibility(const GalileanSystem& s, std::uint64_t seed,
                                 const SampleSpec& spec) {
  return run_check(s, CheckId::Compatibility, seed, spec);
}

CheckReport verify_entropy_pair(const GalileanSystem& s, std::uint64_t seed,
                                const SampleSpec& spec) {
  return run_check(s, CheckId::EntropyPair, seed, spec);
}

std::vector<CheckReport> verify_transformations(
    const GalileanSystem& s, std::uint64_t seed, const SampleSpec& spec,
    const std::vector<double>& v_grid) {
  std::vector<CheckReport> out;
  for (CheckId id :
       {CheckId::VelocityBoost, CheckId::VelocityReflection,
        CheckId::FluxCovariance, CheckId::FluxReflection,
        CheckId::EntropyInvariance})
    out.push_back(run_check(s, id, seed, spec, v_grid));
  return out;
}

CheckReport verify_hessians(const GalileanSystem& s, std::uint64_t seed,
                            const SampleSpec& spec) {
  return run_check(s, CheckId::HessianSpdDet, seed, spec);
}

CheckReport verify_rest_parity(const GalileanSystem& s, std::uint64_t seed,
                               const SampleSpec& spec) {
  return run_check(s, CheckId::RestParity, seed, spec);
}

SuiteReport run_suite(const std::vector<GalileanSystem>& systems,
                      std::uint64_t seed, const SampleSpec& spec) {
  SuiteReport suite;
  suite.all_pass = true;
  for (const GalileanSystem& s : systems)
    for (CheckId id : all_checks()) {
      CheckReport r = run_check(s, id, seed, spec);
      suite.all_pass = suite.all_pass && r.pass;
      suite.reports.push_back(std::move(r));
    }
  return suite;
}

std::vector<GalileanSystem> default_suite_systems() {
  std::vector<GalileanSystem> out;
  for (const char* n :
       {"hyp2", "ell2", "hyp3", "ell3", "nil3", "eulergas", "cemracs"})
    out.push_back(*make_system_by_name(n));
  return out;
}

std::string report_text(const CheckReport& r) {
  std::string line = "check=" + r.check + " system=" + r.name +
                     " samples=" + std::to_string(r.samples) +
                     " excluded=" + std::to_string(r.excluded) +
                     " max_residual=" + num(r.max_residual) +
                     " tolerance=" + num(r.tolerance) +
                     " pass=" + (r.pass ? "yes" : "no") +
                     " worst_state=" + format_state(r.worst_state);
  return line;
}

std::string suite_text(const SuiteReport& s) {
  std::string out;
  long failed = 0;
  for (const CheckReport& r : s.reports) {
    out += report_text(r);
    out += '\n';
    if (!r.pass) ++failed;
  }
  out += "suite: checks=" + std::to_string(s.reports.size()) +
         " failed=" + std::to_string(failed) +
         " pass=" + (s.all_pass ? "yes" : "no") + "\n";
  return out;
}

std::string suite_csv(const SuiteReport& s) {
  std::string out = "check,name,samples,max_residual,tolerance,pass\n";
  for (const CheckReport& r : s.reports) {
    out += r.check + "," + r.name + "," + std::to_string(r.samples) + "," +
           num(r.max_residual) + "," + num(r.tolerance) + "," +
           (r.pass ? "true" : "false") + "\n";
  }
  return out;
}

}  // namespace galcl
