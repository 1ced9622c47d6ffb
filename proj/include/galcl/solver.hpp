#pragma once
/*
 * 1-D explicit finite-volume solver (first-order Rusanov) for any
 * registered system, with discrete entropy diagnostics and the
 * frame-shift (Galilean covariance) experiment.
 *
 * The scheme is deliberately the simplest provably robust one: the solver
 * exists to measure invariance and entropy structure, and a first-order
 * monotone flux minimizes confounders in those measurements. Everything
 * is single-threaded and deterministic: identical inputs produce
 * identical output bytes.
 */

#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "galcl/system.hpp"

namespace galcl {

enum class Boundary { Transmissive, Periodic };

struct Grid1D {
  int n_cells = 0;
  double x_min = 0.0;
  double x_max = 1.0;
  Boundary boundary = Boundary::Transmissive;

  double dx() const { return (x_max - x_min) / n_cells; }
  double x_center(int i) const { return x_min + (i + 0.5) * dx(); }
};

// Validates n_cells >= 4 and x_max > x_min (throws ConfigError).
Grid1D make_grid(int n_cells, double x_min, double x_max,
                 Boundary boundary = Boundary::Transmissive);

struct SolutionField {
  double time = 0.0;
  std::vector<State> states;
  double entropy_total = 0.0;  // sum of eta(W_i) * dx
  // Per-cell discrete entropy production rate of the step that produced
  // this field: d(eta)/dt + d(eta u)/dx in Rusanov companion form.
  // Non-positive (up to round-off) for admissible runs; all zeros on a
  // freshly built field.
  std::vector<double> entropy_production;
};

struct RiemannIC {
  State left;
  State right;
  double interface_pos = 0.5;
};

using InitialCondition = std::function<State(double)>;

// Builds a field by sampling ic at cell centers; every state must lie in
// the system's cone (throws ConeViolation otherwise).
SolutionField make_field(const GalileanSystem& s, const Grid1D& g,
                         const InitialCondition& ic);
SolutionField make_riemann_field(const GalileanSystem& s, const Grid1D& g,
                                 const RiemannIC& ic);

// Local Lax-Friedrichs / Rusanov interface flux:
//   1/2 (f(WL) + f(WR)) - s/2 (WR - WL),  s = max spectral radius.
// Consistency is exact: numerical_flux(W, W) reproduces flux(W) bit for
// bit. Throws ConeViolation / HyperbolicityViolation from the state
// evaluations.
Vec numerical_flux(const GalileanSystem& s, const State& wl,
                   const State& wr);

// One conservative update. dt = min(cfl * dx / max|lambda|, dt_cap);
// requires 0 < cfl <= 0.9. Updated states are cone-checked: an exit
// throws SolverAbort carrying the cell index and step_index, never
// silently clipped. Throws DomainViolation on time-step underflow, or if
// the field carries no waves and no finite dt_cap bounds the step.
SolutionField step(const GalileanSystem& s, const Grid1D& g,
                   const SolutionField& field, double cfl,
                   double dt_cap = std::numeric_limits<double>::infinity(),
                   long step_index = -1);

struct EvolveResult {
  SolutionField final_field;
  // snapshots[0] is the initial field; the final field is always the
  // last entry. Intermediate snapshots every `snapshot_every` steps.
  std::vector<SolutionField> snapshots;
  std::vector<double> times;           // time after step k; times[0] = t0
  std::vector<double> entropy_series;  // entropy_total matching times
  long n_steps = 0;
};

// Repeated step() until t_end, with an exact final partial step.
EvolveResult evolve(const GalileanSystem& s, const Grid1D& g,
                    SolutionField init, double t_end, double cfl,
                    int snapshot_every = 0);

// (time, total entropy) series of a run.
std::vector<std::pair<double, double>> entropy_budget(const EvolveResult& h);

struct FrameShiftRow {
  int n_cells = 0;
  double l1 = 0.0;
};
struct FrameShiftTable {
  double v = 0.0;
  double t_end = 0.0;
  std::vector<FrameShiftRow> rows;  // one per grid, in input order
};

// Galilean covariance experiment. For each grid: evolve ic to t_end;
// separately evolve the boosted data Y(v) ic to t_end; compare the
// boosted-frame reconstruction Y(v) W(t_end, x - v t_end) (piecewise
// constant, clamped lookup) against the second run in L1. The continuous
// solutions coincide exactly, so the distance is pure scheme error and
// must shrink under refinement. Throws BranchViolation if v leaves the
// admissible elliptic branch for some initial state.
FrameShiftTable frame_shift_experiment(
    const GalileanSystem& s, const InitialCondition& ic,
    const std::vector<int>& grid_sizes, double v, double t_end,
    double cfl = 0.45, double x_min = 0.0, double x_max = 1.0,
    Boundary boundary = Boundary::Transmissive);

// Snapshot CSV: header t,x,<components...>,u,eta,pi then one row per
// cell, all values with 17 significant digits (doubles round-trip
// exactly).
std::string field_csv(const GalileanSystem& s, const Grid1D& g,
                      const SolutionField& f);
void write_field_csv(const std::string& path, const GalileanSystem& s,
                     const Grid1D& g, const SolutionField& f);

struct LoadedField {
  double time = 0.0;
  int m = 0;
  std::vector<double> x;
  std::vector<State> states;
};

// Reads a snapshot CSV back (throws ConfigError on malformed input).
// Only t, x and the state components are authoritative; the derived
// columns are ignored.
LoadedField read_field_csv(const std::string& path);

}  // namespace galcl
