#include "galcl/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "galcl/errors.hpp"

namespace galcl {

namespace {

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Vec rusanov(const GalileanSystem& s, const State& wl, const State& wr,
            double speed) {
  return 0.5 * (flux(s, wl) + flux(s, wr)) - (0.5 * speed) * (wr - wl);
}

// Companion Rusanov flux for the entropy pair (eta, eta u): same
// dissipation coefficient as the state flux, which is what makes the
// discrete per-cell entropy production non-positive.
double rusanov_entropy(double eta_l, double eta_u_l, double eta_r,
                       double eta_u_r, double speed) {
  return 0.5 * (eta_u_l + eta_u_r) - 0.5 * speed * (eta_r - eta_l);
}

double total_entropy(const GalileanSystem& s,
                     const std::vector<State>& states, double dx) {
  double total = 0.0;
  for (const State& w : states) total += entropy(s, w);
  return total * dx;
}

}  // namespace

Grid1D make_grid(int n_cells, double x_min, double x_max,
                 Boundary boundary) {
  if (n_cells < 4)
    throw ConfigError("grid needs at least 4 cells, got " +
                      std::to_string(n_cells));
  if (!(x_max > x_min) || !std::isfinite(x_min) || !std::isfinite(x_max))
    throw ConfigError("grid extent [" + num(x_min) + ", " + num(x_max) +
                      "] is not a finite nonempty interval");
  return Grid1D{n_cells, x_min, x_max, boundary};
}

SolutionField make_field(const GalileanSystem& s, const Grid1D& g,
                         const InitialCondition& ic) {
  SolutionField f;
  f.time = 0.0;
  f.states.reserve(static_cast<std::size_t>(g.n_cells));
  for (int i = 0; i < g.n_cells; ++i) {
    State w = ic(g.x_center(i));
    require_in_cone(s, w);
    f.states.push_back(w);
  }
  f.entropy_total = total_entropy(s, f.states, g.dx());
  f.entropy_production.assign(static_cast<std::size_t>(g.n_cells), 0.0);
  return f;
}

SolutionField make_riemann_field(const GalileanSystem& s, const Grid1D& g,
                                 const RiemannIC& ic) {
  require_in_cone(s, ic.left);
  require_in_cone(s, ic.right);
  return make_field(s, g, [&](double x) {
    return x < ic.interface_pos ? ic.left : ic.right;
  });
}

Vec numerical_flux(const GalileanSystem& s, const State& wl,
                   const State& wr) {
  double speed = std::max(max_wave_speed(s, wl), max_wave_speed(s, wr));
  return rusanov(s, wl, wr, speed);
}

SolutionField step(const GalileanSystem& s, const Grid1D& g,
                   const SolutionField& field, double cfl, double dt_cap,
                   long step_index) {
  if (!(cfl > 0.0) || cfl > 0.9)
    throw ConfigError("cfl must lie in (0, 0.9], got " + num(cfl));
  const int n = g.n_cells;
  if (static_cast<int>(field.states.size()) != n)
    throw DomainViolation("field has " +
                          std::to_string(field.states.size()) +
                          " states for a grid of " + std::to_string(n));
  const double dx = g.dx();

  std::vector<double> speed(static_cast<std::size_t>(n));
  std::vector<double> eta(static_cast<std::size_t>(n));
  std::vector<double> eta_u(static_cast<std::size_t>(n));
  double s_max = 0.0;
  for (int i = 0; i < n; ++i) {
    const State& w = field.states[static_cast<std::size_t>(i)];
    speed[static_cast<std::size_t>(i)] = max_wave_speed(s, w);
    s_max = std::max(s_max, speed[static_cast<std::size_t>(i)]);
    eta[static_cast<std::size_t>(i)] = entropy(s, w);
    eta_u[static_cast<std::size_t>(i)] =
        eta[static_cast<std::size_t>(i)] * velocity(s, w);
  }

  double dt = cfl * dx / s_max;  // +inf for a wave-free field
  dt = std::min(dt, dt_cap);
  if (!std::isfinite(dt))
    throw DomainViolation(
        "field carries no waves; step needs a finite dt_cap");
  if (dt <= 1e-14 * std::max(1.0, std::abs(field.time)))
    throw DomainViolation("time step underflow: dt = " + num(dt) +
                          " at t = " + num(field.time));

  // Interface fluxes, double-buffered so the update order is irrelevant.
  // Interface k sits between cells k-1 and k; k = 0 and k = n use the
  // boundary rule.
  std::vector<Vec> fl(static_cast<std::size_t>(n) + 1, Vec::zero(s.m));
  std::vector<double> gl(static_cast<std::size_t>(n) + 1, 0.0);
  for (int k = 0; k <= n; ++k) {
    int il = k - 1;
    int ir = k;
    if (g.boundary == Boundary::Periodic) {
      if (k == 0) il = n - 1;
      if (k == n) ir = 0;
    } else {
      il = std::max(il, 0);
      ir = std::min(ir, n - 1);
    }
    const State& wl = field.states[static_cast<std::size_t>(il)];
    const State& wr = field.states[static_cast<std::size_t>(ir)];
    double sp = std::max(speed[static_cast<std::size_t>(il)],
                         speed[static_cast<std::size_t>(ir)]);
    fl[static_cast<std::size_t>(k)] = rusanov(s, wl, wr, sp);
    gl[static_cast<std::size_t>(k)] = rusanov_entropy(
        eta[static_cast<std::size_t>(il)], eta_u[static_cast<std::size_t>(il)],
        eta[static_cast<std::size_t>(ir)], eta_u[static_cast<std::size_t>(ir)],
        sp);
  }

  SolutionField out;
  out.time = field.time + dt;
  out.states.resize(static_cast<std::size_t>(n), Vec::zero(s.m));
  out.entropy_production.resize(static_cast<std::size_t>(n), 0.0);
  const double lam = dt / dx;
  for (int i = 0; i < n; ++i) {
    State w = field.states[static_cast<std::size_t>(i)] -
              lam * (fl[static_cast<std::size_t>(i) + 1] -
                     fl[static_cast<std::size_t>(i)]);
    std::string violation = cone_violation(s, w);
    if (!violation.empty())
      throw SolverAbort("cone exit in cell " + std::to_string(i) +
                            " at t = " + num(out.time) + ": " + violation,
                        i, step_index);
    out.states[static_cast<std::size_t>(i)] = w;
    double eta_new = entropy(s, w);
    out.entropy_production[static_cast<std::size_t>(i)] =
        (eta_new - eta[static_cast<std::size_t>(i)]) / dt +
        (gl[static_cast<std::size_t>(i) + 1] -
         gl[static_cast<std::size_t>(i)]) /
            dx;
  }
  out.entropy_total = total_entropy(s, out.states, dx);
  return out;
}

EvolveResult evolve(const GalileanSystem& s, const Grid1D& g,
                    SolutionField init, double t_end, double cfl,
                    int snapshot_every) {
  if (!(t_end >= init.time))
    throw ConfigError("t_end = " + num(t_end) + " precedes the field time " +
                      num(init.time));
  EvolveResult res;
  res.times.push_back(init.time);
  res.entropy_series.push_back(init.entropy_total);
  res.snapshots.push_back(init);
  SolutionField cur = std::move(init);

  const double t_tol = 1e-12 * std::max(1.0, std::abs(t_end));
  const long max_steps = 10'000'000;
  while (cur.time < t_end - t_tol) {
    double dt_cap = t_end - cur.time;
    cur = step(s, g, cur, cfl, dt_cap, res.n_steps);
    ++res.n_steps;
    if (res.n_steps >= max_steps)
      throw DomainViolation("step budget exhausted before t_end");
    if (t_end - cur.time <= t_tol) cur.time = t_end;
    res.times.push_back(cur.time);
    res.entropy_series.push_back(cur.entropy_total);
    if (snapshot_every > 0 && res.n_steps % snapshot_every == 0 &&
        cur.time < t_end)
      res.snapshots.push_back(cur);
  }
  if (res.n_steps > 0) res.snapshots.push_back(cur);
  res.final_field = std::move(cur);
  return res;
}

std::vector<std::pair<double, double>> entropy_budget(const EvolveResult& h) {
  std::vector<std::pair<double, double>> series;
  series.reserve(h.times.size());
  for (std::size_t k = 0; k < h.times.size(); ++k)
    series.emplace_back(h.times[k], h.entropy_series[k]);
  return series;
}

FrameShiftTable frame_shift_experiment(const GalileanSystem& s,
                                       const InitialCondition& ic,
                                       const std::vector<int>& grid_sizes,
                                       double v, double t_end, double cfl,
                                       double x_min, double x_max,
                                       Boundary boundary) {
  FrameShiftTable table;
  table.v = v;
  table.t_end = t_end;
  Mat y = boost(s.rep, v);

  for (int n : grid_sizes) {
    Grid1D g = make_grid(n, x_min, x_max, boundary);
    SolutionField base = make_field(s, g, ic);
    SolutionField boosted = make_field(s, g, [&](double x) {
      State w = ic(x);
      if (!boost_within_branch(s, w, v))
        throw BranchViolation(
            "frame shift v = " + num(v) +
            " leaves the admissible branch for the initial state at x = " +
            num(x));
      return apply(y, w);
    });

    SolutionField a = evolve(s, g, std::move(base), t_end, cfl).final_field;
    SolutionField b =
        evolve(s, g, std::move(boosted), t_end, cfl).final_field;

    // Reconstruction: transform the untransformed run into the moving
    // frame and re-sample it at the cell centers (piecewise constant,
    // clamped at the boundary — consistent with a first-order scheme).
    // Boosting by v lowers every velocity by v, so the boosted run's
    // features drift by -v relative to the base run; the inverse frame
    // map therefore looks *forward* by v * t_end.
    const double dx = g.dx();
    double l1 = 0.0;
    for (int i = 0; i < n; ++i) {
      double x_back = g.x_center(i) + v * t_end;
      int j = static_cast<int>(std::floor((x_back - x_min) / dx));
      j = std::clamp(j, 0, n - 1);
      State rec = apply(y, a.states[static_cast<std::size_t>(j)]);
      l1 += sum_abs(b.states[static_cast<std::size_t>(i)] - rec) * dx;
    }
    table.rows.push_back(FrameShiftRow{n, l1});
  }
  return table;
}

std::string field_csv(const GalileanSystem& s, const Grid1D& g,
                      const SolutionField& f) {
  std::string out = "t,x";
  for (int c = 0; c < s.m; ++c) out += std::string(",") + component_name(s, c);
  out += ",u,eta,pi\n";
  for (int i = 0; i < g.n_cells; ++i) {
    const State& w = f.states[static_cast<std::size_t>(i)];
    out += num(f.time) + "," + num(g.x_center(i));
    for (int c = 0; c < s.m; ++c) out += "," + num(w[c]);
    out += "," + num(velocity(s, w)) + "," + num(entropy(s, w)) + "," +
           num(mech_pressure_at(s, w)) + "\n";
  }
  return out;
}

void write_field_csv(const std::string& path, const GalileanSystem& s,
                     const Grid1D& g, const SolutionField& f) {
  std::ofstream os(path);
  if (!os) throw ConfigError("cannot open '" + path + "' for writing");
  os << field_csv(s, g, f);
  if (!os) throw ConfigError("failed writing '" + path + "'");
}

LoadedField read_field_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open '" + path + "' for reading");
  std::string line;
  if (!std::getline(is, line))
    throw ConfigError("'" + path + "' is empty");
  long n_cols = 1 + std::count(line.begin(), line.end(), ',');
  int m = static_cast<int>(n_cols) - 5;  // t,x,...,u,eta,pi
  if (line.rfind("t,x,", 0) != 0 || m < 2 || m > kMaxDim)
    throw ConfigError("'" + path + "' does not look like a snapshot CSV: " +
                      line);
  LoadedField lf;
  lf.m = m;
  bool first = true;
  long line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string cell;
    std::vector<double> vals;
    while (std::getline(row, cell, ',')) {
      std::size_t used = 0;
      double x = 0.0;
      try {
        x = std::stod(cell, &used);
      } catch (const std::exception&) {
        throw ConfigError(path + ":" + std::to_string(line_no) +
                          ": not a number: '" + cell + "'");
      }
      if (used != cell.size())
        throw ConfigError(path + ":" + std::to_string(line_no) +
                          ": trailing junk in '" + cell + "'");
      vals.push_back(x);
    }
    if (static_cast<long>(vals.size()) != n_cols)
      throw ConfigError(path + ":" + std::to_string(line_no) + ": expected " +
                        std::to_string(n_cols) + " columns, got " +
                        std::to_string(vals.size()));
    if (first) {
      lf.time = vals[0];
      first = false;
    }
    lf.x.push_back(vals[1]);
    State w = Vec::zero(m);
    for (int c = 0; c < m; ++c) w[c] = vals[static_cast<std::size_t>(c) + 2];
    lf.states.push_back(w);
  }
  if (lf.states.empty())
    throw ConfigError("'" + path + "' has a header but no rows");
  return lf;
}

}  // namespace galcl
