// galcl — command-line front end for the Galilean conservation-law library.
//
// Subcommands:
//   check      run the property-verification suite, write report files
//   eigen      characteristic speeds of one state (analytic vs numeric)
//   evolve     finite-volume run, snapshot CSVs + gnuplot script
//   frameshift Galilean-covariance convergence experiment
//   conjugate  debug access to the entropy closures and their duals
//
// Configuration: every subcommand accepts --config FILE with plain
// `key=value` lines (# comments); keys are the long option names of that
// subcommand. Explicit command-line flags override config values. The
// GALCL_OUTDIR environment variable overrides the default output
// directory; an explicit --outdir flag wins over both.
//
// Exit codes: 0 success / all checks pass, 1 check failure,
// 2 usage or configuration error, 3 runtime abort (solver or numerics).
#include "CLI11.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "galcl/errors.hpp"
#include "galcl/solver.hpp"
#include "galcl/system.hpp"
#include "galcl/thermo.hpp"
#include "galcl/verifier.hpp"

using namespace galcl;

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_double(const std::string& tok, const std::string& what) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(tok, &pos);
  } catch (const std::exception&) {
    pos = std::string::npos;
  }
  if (pos != tok.size() || tok.empty())
    throw ConfigError(what + ": '" + tok + "' is not a number");
  if (!std::isfinite(v)) throw ConfigError(what + " must be finite");
  return v;
}

Vec parse_state(const std::string& text, const std::string& what) {
  std::vector<std::string> parts = split(text, ',');
  if (parts.size() != 2 && parts.size() != 3)
    throw ConfigError(what + ": expected 2 or 3 comma-separated components, "
                      "got '" + text + "'");
  Vec w = Vec::zero(static_cast<int>(parts.size()));
  for (std::size_t i = 0; i < parts.size(); ++i)
    w[static_cast<int>(i)] =
        parse_double(parts[i], what + " component " + std::to_string(i));
  return w;
}

std::vector<int> parse_grids(const std::string& text) {
  std::vector<int> out;
  for (const std::string& tok : split(text, ',')) {
    double v = parse_double(tok, "--grids entry");
    int n = static_cast<int>(v);
    if (n != v || n < 4)
      throw ConfigError("--grids entries must be integers >= 4, got '" + tok +
                        "'");
    out.push_back(n);
  }
  if (out.empty()) throw ConfigError("--grids must name at least one grid");
  return out;
}

std::string available_systems() {
  std::string s;
  for (const std::string& n : registry_names()) {
    if (!s.empty()) s += ", ";
    s += n;
  }
  return s;
}

GalileanSystem system_or_die(const std::string& name, double gamma, double p1,
                             double p2) {
  auto s = make_system_by_name(name, gamma, p1, p2);
  if (!s)
    throw ConfigError("unknown system '" + name +
                      "'; available systems: " + available_systems());
  return *s;
}

// Output directory: explicit flag > GALCL_OUTDIR > current directory.
std::filesystem::path resolve_outdir(const std::string& flag_value,
                                     bool flag_given) {
  std::string dir = flag_value;
  if (!flag_given) {
    if (const char* env = std::getenv("GALCL_OUTDIR"); env && *env) dir = env;
  }
  if (dir.empty()) dir = ".";
  std::filesystem::path p(dir);
  std::error_code ec;
  std::filesystem::create_directories(p, ec);
  if (ec)
    throw ConfigError("cannot create output directory '" + dir +
                      "': " + ec.message());
  return p;
}

void write_text_file(const std::filesystem::path& path,
                     const std::string& content) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open '" + path.string() + "' for writing");
  out << content;
  if (!out) throw ConfigError("failed writing '" + path.string() + "'");
}

// ---- initial conditions ----------------------------------------------------

RiemannIC default_riemann(const GalileanSystem& s) {
  if (s.m == 2) return RiemannIC{Vec::of(2.0, 0.0), Vec::of(1.0, 0.0), 0.5};
  if (s.family == Family::EulerGas || s.family == Family::Nil3 ||
      s.family == Family::Cemracs)
    return RiemannIC{Vec::of(1.0, 0.0, 2.5), Vec::of(0.125, 0.0, 0.25), 0.5};
  return RiemannIC{Vec::of(2.0, 0.0, 2.5), Vec::of(1.0, 0.0, 1.0), 0.5};
}

InitialCondition riemann_ic(const RiemannIC& ic) {
  return [ic](double x) { return x < ic.interface_pos ? ic.left : ic.right; };
}

// Smooth drifting profile: first rest invariant oscillates over the domain,
// second (if any) constant, whole field moving with velocity +0.1.
InitialCondition smooth_sine_ic(const GalileanSystem& s, double x_min,
                                double x_max) {
  const double width = x_max - x_min;
  const Mat y = boost(s.rep, -0.1);
  return [s, x_min, width, y](double x) {
    double r1 = 2.0 * (1.0 + 0.2 * std::sin(2.0 * M_PI * (x - x_min) / width));
    Vec w0 = Vec::zero(s.m);
    w0[0] = r1;
    if (s.m == 3) w0[2] = 1.5;
    return apply(y, w0);
  };
}

// Piecewise-constant lookup into a previously written snapshot CSV.
InitialCondition table_ic(const GalileanSystem& s, const std::string& path) {
  LoadedField f = read_field_csv(path);
  if (f.m != s.m)
    throw ConfigError("'" + path + "' holds " + std::to_string(f.m) +
                      "-component states but system '" + s.name + "' needs " +
                      std::to_string(s.m));
  if (f.x.size() < 2)
    throw ConfigError("'" + path + "' needs at least two rows to define a profile");
  const double x0 = f.x.front();
  const double dx = f.x[1] - f.x[0];
  if (!(dx > 0.0))
    throw ConfigError("'" + path + "' x column must be increasing");
  const int n = static_cast<int>(f.x.size());
  auto states = std::make_shared<std::vector<State>>(std::move(f.states));
  return [states, x0, dx, n](double x) {
    int j = static_cast<int>(std::floor((x - x0) / dx + 0.5));
    j = std::clamp(j, 0, n - 1);
    return (*states)[static_cast<std::size_t>(j)];
  };
}

struct IcSpec {
  std::string kind = "sod";  // sod | smooth | riemann | table
  std::string left, right;
  double interface_pos = 0.5;
  std::string table_path;
};

InitialCondition build_ic(const GalileanSystem& s, const IcSpec& spec,
                          double x_min, double x_max) {
  if (spec.kind == "sod") return riemann_ic(default_riemann(s));
  if (spec.kind == "smooth") return smooth_sine_ic(s, x_min, x_max);
  if (spec.kind == "riemann") {
    if (spec.left.empty() || spec.right.empty())
      throw ConfigError("--ic riemann requires --left and --right states");
    RiemannIC ic{parse_state(spec.left, "--left"),
                 parse_state(spec.right, "--right"), spec.interface_pos};
    if (ic.left.m != s.m || ic.right.m != s.m)
      throw ConfigError("--left/--right must have " + std::to_string(s.m) +
                        " components for system '" + s.name + "'");
    return riemann_ic(ic);
  }
  if (spec.kind == "table") {
    if (spec.table_path.empty())
      throw ConfigError("--ic table requires --table FILE");
    return table_ic(s, spec.table_path);
  }
  throw ConfigError("unknown initial condition '" + spec.kind +
                    "'; choose sod, smooth, riemann, or table");
}

Boundary parse_boundary(const std::string& name) {
  if (name == "transmissive") return Boundary::Transmissive;
  if (name == "periodic") return Boundary::Periodic;
  throw ConfigError("unknown boundary '" + name +
                    "'; choose transmissive or periodic");
}

// ---- gnuplot emission --------------------------------------------------

std::string evolve_plot_script(const GalileanSystem& s,
                               const std::vector<std::string>& snap_files,
                               const std::string& png_name) {
  // Column layout of the snapshot CSV: 1 t, 2 x, 3..m+2 components,
  // m+3 u, m+4 eta, m+5 pi.
  const int u_col = s.m + 3;
  const int eta_col = s.m + 4;
  std::string gp;
  gp += "# Profiles from the snapshot CSVs; run:  gnuplot <this file>\n";
  gp += "set datafile separator \",\"\n";
  gp += "set key autotitle columnhead\n";
  gp += "set terminal pngcairo size 1000,1200\n";
  gp += "set output \"" + png_name + "\"\n";
  gp += "set multiplot layout 3,1\n";
  gp += "set xlabel \"x\"\n";
  auto plot_block = [&](const std::string& ylabel, int col) {
    gp += "set ylabel \"" + ylabel + "\"\n";
    gp += "plot ";
    for (std::size_t i = 0; i < snap_files.size(); ++i) {
      if (i) gp += ", ";
      gp += "\"" + snap_files[i] + "\" using 2:" + std::to_string(col) +
            " with lines title \"snapshot " + std::to_string(i) + "\"";
    }
    gp += "\n";
  };
  plot_block(component_name(s, 0), 3);
  plot_block("u", u_col);
  plot_block("eta", eta_col);
  gp += "unset multiplot\n";
  return gp;
}

std::string frameshift_plot_script(const std::string& table_file,
                                   const std::string& png_name) {
  std::string gp;
  gp += "# Convergence of the frame-shift L1 error; run:  gnuplot <this file>\n";
  gp += "set datafile separator \",\"\n";
  gp += "set key autotitle columnhead\n";
  gp += "set terminal pngcairo size 800,600\n";
  gp += "set output \"" + png_name + "\"\n";
  gp += "set logscale xy\n";
  gp += "set xlabel \"cells\"\n";
  gp += "set ylabel \"L1 error\"\n";
  gp += "plot \"" + table_file + "\" using 1:2 with linespoints title \"L1\"\n";
  return gp;
}

// ---- config file ------------------------------------------------------

struct ConfigEntry {
  int line = 0;
  std::string key, value;
};

std::vector<ConfigEntry> load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::vector<ConfigEntry> entries;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    std::size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path + ":" + std::to_string(line_no) +
                        ": expected key=value, got '" + t + "'");
    std::string key = trim(t.substr(0, eq));
    std::string value = trim(t.substr(eq + 1));
    if (key.empty())
      throw ConfigError(path + ":" + std::to_string(line_no) + ": empty key");
    if (value.empty())
      throw ConfigError(path + ":" + std::to_string(line_no) +
                        ": empty value for key '" + key + "'");
    entries.push_back({line_no, key, value});
  }
  return entries;
}

// Inject config entries as trailing --key=value tokens unless the flag is
// already present on the command line (explicit flags win).
std::vector<std::string> merge_config(const std::vector<std::string>& args,
                                      CLI::App& app) {
  // Locate --config and the subcommand named on the command line.
  std::string config_path;
  std::string sub_name;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) config_path = args[i + 1];
    else if (args[i].rfind("--config=", 0) == 0)
      config_path = args[i].substr(9);
    if (sub_name.empty() && !args[i].empty() && args[i][0] != '-' &&
        app.get_subcommand_no_throw(args[i]) != nullptr)
      sub_name = args[i];
  }
  if (config_path.empty()) return args;
  if (sub_name.empty())
    throw ConfigError("--config requires a subcommand to apply it to");

  CLI::App* sub = app.get_subcommand(sub_name);
  std::set<std::string> allowed;
  for (const CLI::Option* opt : sub->get_options())
    for (const std::string& lname : opt->get_lnames()) allowed.insert(lname);
  allowed.erase("config");

  std::vector<std::string> merged = args;
  for (const ConfigEntry& e : load_config(config_path)) {
    if (!allowed.count(e.key))
      throw ConfigError(config_path + ":" + std::to_string(e.line) +
                        ": unknown key '" + e.key + "' for subcommand '" +
                        sub_name + "'");
    const std::string flag = "--" + e.key;
    bool given = false;
    for (const std::string& a : args)
      if (a == flag || a.rfind(flag + "=", 0) == 0) given = true;
    if (!given) merged.push_back(flag + "=" + e.value);
  }
  return merged;
}

// ---- subcommands -------------------------------------------------------

struct CheckArgs {
  std::vector<std::string> systems;
  bool all = false;
  std::uint64_t seed = 0;
  int samples = 500;
  double gamma = 1.4;
  std::string outdir;
  bool outdir_given = false;
};

int cmd_check(const CheckArgs& a) {
  std::vector<GalileanSystem> systems;
  if (a.all) {
    systems = default_suite_systems();
  } else {
    if (a.systems.empty())
      throw ConfigError("check needs --system NAME (repeatable) or --all");
    for (const std::string& n : a.systems)
      systems.push_back(system_or_die(n, a.gamma, 1.0, 1.0));
  }
  SampleSpec spec;
  spec.n_samples = a.samples;

  SuiteReport rep = run_suite(systems, a.seed, spec);
  std::string text = suite_text(rep);
  std::string csv = suite_csv(rep);

  std::filesystem::path dir = resolve_outdir(a.outdir, a.outdir_given);
  std::filesystem::path txt_path = dir / "check_report.txt";
  std::filesystem::path csv_path = dir / "check_report.csv";
  write_text_file(txt_path, text);
  write_text_file(csv_path, csv);

  std::cout << text;
  std::cout << "wrote " << txt_path.string() << "\n";
  std::cout << "wrote " << csv_path.string() << "\n";
  return rep.all_pass ? 0 : 1;
}

struct EigenArgs {
  std::string system;
  std::string state;
  double gamma = 1.4, p1 = 1.0, p2 = 1.0;
};

int cmd_eigen(const EigenArgs& a) {
  GalileanSystem s = system_or_die(a.system, a.gamma, a.p1, a.p2);
  Vec w = parse_state(a.state, "--state");
  if (w.m != s.m)
    throw ConfigError("system '" + s.name + "' expects " + std::to_string(s.m) +
                      "-component states, got " + std::to_string(w.m));
  require_in_cone(s, w);  // out-of-cone: ConeViolation names the inequality

  Vec analytic = char_speeds(s, w);
  Vec numeric = char_speeds_numeric(s, w);
  std::cout << "system " << s.name << ", state " << a.state << "\n";
  std::cout << "velocity u = " << num(velocity(s, w)) << "\n";
  const bool closed = has_analytic_speeds(s);
  std::cout << (closed ? "speeds (closed form vs numeric Jacobian):\n"
                       : "speeds (numeric Jacobian):\n");
  double residual = 0.0;
  for (int i = 0; i < s.m; ++i) {
    residual = std::max(residual, std::abs(analytic[i] - numeric[i]));
    std::cout << "  lambda_" << i << " = " << num(analytic[i]);
    if (closed) std::cout << "   numeric " << num(numeric[i]);
    std::cout << "\n";
  }
  if (closed) std::cout << "max residual = " << num(residual) << "\n";
  std::cout << "max wave speed bound = " << num(max_wave_speed(s, w)) << "\n";
  return 0;
}

struct EvolveArgs {
  std::string system = "eulergas";
  IcSpec ic;
  int cells = 400;
  double x_min = 0.0, x_max = 1.0;
  std::string boundary = "transmissive";
  double t_end = 0.2;
  double cfl = 0.45;
  int snap_every = 0;
  double gamma = 1.4, p1 = 1.0, p2 = 1.0;
  std::string outdir;
  bool outdir_given = false;
  std::string prefix = "evolve";
};

int cmd_evolve(const EvolveArgs& a) {
  GalileanSystem s = system_or_die(a.system, a.gamma, a.p1, a.p2);
  Grid1D g = make_grid(a.cells, a.x_min, a.x_max, parse_boundary(a.boundary));
  InitialCondition ic = build_ic(s, a.ic, a.x_min, a.x_max);

  EvolveResult r = evolve(s, g, make_field(s, g, ic), a.t_end, a.cfl,
                          a.snap_every);

  std::filesystem::path dir = resolve_outdir(a.outdir, a.outdir_given);
  std::vector<std::string> snap_files;
  for (std::size_t i = 0; i < r.snapshots.size(); ++i) {
    char name[64];
    std::snprintf(name, sizeof name, "%s_snap_%04zu.csv", a.prefix.c_str(), i);
    write_field_csv((dir / name).string(), s, g, r.snapshots[i]);
    snap_files.push_back(name);
  }
  std::filesystem::path gp_path = dir / (a.prefix + "_plot.gp");
  write_text_file(gp_path,
                  evolve_plot_script(s, snap_files, a.prefix + "_profiles.png"));

  double worst_production = 0.0;
  for (double p : r.final_field.entropy_production)
    worst_production = std::max(worst_production, p);
  std::cout << "system " << s.name << ": " << r.n_steps << " steps to t = "
            << num(r.final_field.time) << " on " << a.cells << " cells\n";
  std::cout << "total entropy " << num(r.entropy_series.front()) << " -> "
            << num(r.entropy_series.back()) << "\n";
  std::cout << "max per-cell entropy production (final step) = "
            << num(worst_production) << "\n";
  for (const std::string& f : snap_files)
    std::cout << "wrote " << (dir / f).string() << "\n";
  std::cout << "wrote " << gp_path.string() << "\n";
  return 0;
}

struct FrameshiftArgs {
  std::string system = "eulergas";
  IcSpec ic;
  double v = 0.0;
  std::string grids = "200,400,800";
  double t_end = 0.25;
  double cfl = 0.45;
  double x_min = 0.0, x_max = 1.0;
  std::string boundary = "transmissive";
  double gamma = 1.4, p1 = 1.0, p2 = 1.0;
  std::string outdir;
  bool outdir_given = false;
  std::string prefix = "frameshift";
};

int cmd_frameshift(const FrameshiftArgs& a) {
  GalileanSystem s = system_or_die(a.system, a.gamma, a.p1, a.p2);
  std::vector<int> grids = parse_grids(a.grids);
  InitialCondition ic = build_ic(s, a.ic, a.x_min, a.x_max);

  FrameShiftTable t =
      frame_shift_experiment(s, ic, grids, a.v, a.t_end, a.cfl, a.x_min,
                             a.x_max, parse_boundary(a.boundary));

  std::string csv = "cells,l1,order\n";
  std::cout << "frame shift v = " << num(a.v) << ", t_end = " << num(a.t_end)
            << ", system " << s.name << "\n";
  std::cout << "  cells          L1       order\n";
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const FrameShiftRow& row = t.rows[i];
    std::string order = "-";
    if (i > 0 && row.l1 > 0.0 && t.rows[i - 1].l1 > 0.0) {
      double o = std::log(t.rows[i - 1].l1 / row.l1) /
                 std::log(static_cast<double>(row.n_cells) /
                          t.rows[i - 1].n_cells);
      order = num(o);
    }
    char line[96];
    std::snprintf(line, sizeof line, "  %5d  %10.4e  %s\n", row.n_cells,
                  row.l1, order.c_str());
    std::cout << line;
    csv += std::to_string(row.n_cells) + "," + num(row.l1) + "," + order +
           "\n";
  }

  std::filesystem::path dir = resolve_outdir(a.outdir, a.outdir_given);
  std::filesystem::path table_path = dir / (a.prefix + "_table.csv");
  std::filesystem::path gp_path = dir / (a.prefix + "_plot.gp");
  write_text_file(table_path, csv);
  write_text_file(gp_path, frameshift_plot_script(a.prefix + "_table.csv",
                                                  a.prefix + ".png"));
  std::cout << "wrote " << table_path.string() << "\n";
  std::cout << "wrote " << gp_path.string() << "\n";
  return 0;
}

struct ConjugateArgs {
  std::string system;
  std::string closure;
  std::string rest;
  std::string slopes;
  double gamma = 1.4;
};

int cmd_conjugate(const ConjugateArgs& a) {
  EntropyClosure c;
  std::optional<GalileanSystem> sys_for_pressure;
  if (!a.system.empty()) {
    GalileanSystem s = system_or_die(a.system, a.gamma, 1.0, 1.0);
    c = s.closure;
    sys_for_pressure = std::move(s);
  } else if (!a.closure.empty()) {
    auto found = closure_by_name(a.closure, a.gamma);
    if (!found)
      throw ConfigError("unknown closure '" + a.closure +
                        "'; available closures: " + known_closure_names());
    c = *found;
  } else {
    throw ConfigError("conjugate needs --system NAME or --closure NAME");
  }
  std::cout << "closure '" << c.name << "' (arity " << c.arity << ")\n";

  if (!a.rest.empty()) {
    std::vector<std::string> parts = split(a.rest, ',');
    if (static_cast<int>(parts.size()) != c.arity)
      throw ConfigError("--rest needs " + std::to_string(c.arity) +
                        " value(s) for closure '" + c.name + "'");
    double r1 = parse_double(parts[0], "--rest");
    double r2 = c.arity == 2 ? parse_double(parts[1], "--rest") : 0.0;
    if (!c.in_domain(r1, r2))
      throw ConfigError("rest point (" + a.rest + ") is outside the domain of "
                        "closure '" + c.name + "'");
    Grad2 gr = c.grad(r1, r2);
    DualPoint d = conjugate_at_gradient(c, r1, r2);
    std::cout << "sigma(" << a.rest << ") = " << num(c.value(r1, r2)) << "\n";
    std::cout << "gradient = (" << num(gr.A);
    if (c.arity == 2) std::cout << ", " << num(gr.B);
    std::cout << ")\n";
    std::cout << "conjugate sigma*(gradient) = " << num(d.value) << "\n";
    // Legendre identity sigma(x) + sigma*(d sigma(x)) = x . d sigma(x).
    double pairing = gr.A * r1 + gr.B * r2;
    std::cout << "Legendre identity residual = "
              << num(std::abs(c.value(r1, r2) + d.value - pairing)) << "\n";
    if (sys_for_pressure) {
      double pi = mech_pressure(sys_for_pressure->family, c, r1, r2,
                                sys_for_pressure->p2);
      std::cout << "mechanical pressure Pi = " << num(pi) << "\n";
    }
  }

  if (!a.slopes.empty()) {
    std::vector<std::string> parts = split(a.slopes, ',');
    if (static_cast<int>(parts.size()) != c.arity)
      throw ConfigError("--slopes needs " + std::to_string(c.arity) +
                        " value(s) for closure '" + c.name + "'");
    double A = parse_double(parts[0], "--slopes");
    double B = c.arity == 2 ? parse_double(parts[1], "--slopes") : 0.0;
    ConjugateResult r = conjugate_general(c, A, B);
    std::cout << "sigma*(" << a.slopes << ") = " << num(r.dual.value) << " ("
              << r.iterations << " Newton iterations)\n";
    std::cout << "primal point = (" << num(r.alpha);
    if (c.arity == 2) std::cout << ", " << num(r.beta);
    std::cout << ")\n";
  }

  if (a.rest.empty() && a.slopes.empty())
    throw ConfigError("conjugate needs --rest R1[,R2] and/or --slopes A[,B]");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "galcl — Galilean-invariant conservation-law systems: verification, "
      "characteristic analysis, and 1-D finite-volume experiments"};
  app.require_subcommand(1);

  // check ---------------------------------------------------------------
  CheckArgs ca;
  CLI::App* check = app.add_subcommand(
      "check", "Run the property-verification suite and write report files");
  check->add_option("--system", ca.systems,
                    "System(s) to verify (repeatable); see --help for names");
  check->add_flag("--all", ca.all, "Verify every registered genuine system");
  CLI::Option* seed_opt =
      check->add_option("--seed", ca.seed,
                        "Seed for the randomized property checks (required)");
  seed_opt->required();
  check->add_option("--samples", ca.samples, "Samples per randomized check")
      ->check(CLI::PositiveNumber);
  check->add_option("--gamma", ca.gamma, "Adiabatic exponent for gas closures");
  CLI::Option* check_outdir =
      check->add_option("--outdir", ca.outdir, "Output directory for reports");
  check->add_option("--config", "key=value configuration file");

  // eigen ---------------------------------------------------------------
  EigenArgs ea;
  CLI::App* eigen = app.add_subcommand(
      "eigen", "Characteristic speeds of one state, analytic vs numeric");
  eigen->add_option("--system", ea.system, "System name")->required();
  eigen->add_option("--state", ea.state, "State components, e.g. 1,0,2.5")
      ->required();
  eigen->add_option("--gamma", ea.gamma, "Adiabatic exponent for gas closures");
  eigen->add_option("--p1", ea.p1, "First family parameter (alpha or a)");
  eigen->add_option("--p2", ea.p2, "Second family parameter (beta or b)");
  eigen->add_option("--config", "key=value configuration file");

  // evolve --------------------------------------------------------------
  EvolveArgs va;
  CLI::App* evolve_cmd = app.add_subcommand(
      "evolve", "Finite-volume run: snapshot CSVs plus a gnuplot script");
  evolve_cmd->add_option("--system", va.system, "System name (default eulergas)");
  evolve_cmd->add_option("--ic", va.ic.kind,
                         "Initial condition: sod | smooth | riemann | table");
  evolve_cmd->add_option("--left", va.ic.left, "Left state for --ic riemann");
  evolve_cmd->add_option("--right", va.ic.right, "Right state for --ic riemann");
  evolve_cmd->add_option("--interface", va.ic.interface_pos,
                         "Jump position for --ic riemann");
  evolve_cmd->add_option("--table", va.ic.table_path,
                         "Snapshot CSV for --ic table");
  evolve_cmd->add_option("--cells", va.cells, "Grid cells")
      ->check(CLI::PositiveNumber);
  evolve_cmd->add_option("--xmin", va.x_min, "Domain lower edge");
  evolve_cmd->add_option("--xmax", va.x_max, "Domain upper edge");
  evolve_cmd->add_option("--boundary", va.boundary,
                         "Boundary: transmissive | periodic");
  evolve_cmd->add_option("--tend", va.t_end, "Final time");
  evolve_cmd->add_option("--cfl", va.cfl, "CFL number in (0, 0.9]");
  evolve_cmd->add_option("--snap-every", va.snap_every,
                         "Interior snapshot cadence in steps (0 = none)");
  evolve_cmd->add_option("--gamma", va.gamma,
                         "Adiabatic exponent for gas closures");
  evolve_cmd->add_option("--p1", va.p1, "First family parameter");
  evolve_cmd->add_option("--p2", va.p2, "Second family parameter");
  CLI::Option* evolve_outdir =
      evolve_cmd->add_option("--outdir", va.outdir, "Output directory");
  evolve_cmd->add_option("--prefix", va.prefix, "Output file prefix");
  evolve_cmd->add_option("--config", "key=value configuration file");

  // frameshift ----------------------------------------------------------
  FrameshiftArgs fa;
  CLI::App* frameshift = app.add_subcommand(
      "frameshift", "Galilean-covariance convergence experiment");
  frameshift->add_option("--system", fa.system,
                         "System name (default eulergas)");
  frameshift->add_option("--ic", fa.ic.kind,
                         "Initial condition: sod | smooth | riemann | table");
  frameshift->add_option("--left", fa.ic.left, "Left state for --ic riemann");
  frameshift->add_option("--right", fa.ic.right,
                         "Right state for --ic riemann");
  frameshift->add_option("--interface", fa.ic.interface_pos,
                         "Jump position for --ic riemann");
  frameshift->add_option("--table", fa.ic.table_path,
                         "Snapshot CSV for --ic table");
  frameshift->add_option("--v", fa.v, "Boost velocity")->required();
  frameshift->add_option("--grids", fa.grids,
                         "Comma-separated grid sizes, e.g. 200,400,800");
  frameshift->add_option("--tend", fa.t_end, "Final time");
  frameshift->add_option("--cfl", fa.cfl, "CFL number in (0, 0.9]");
  frameshift->add_option("--xmin", fa.x_min, "Domain lower edge");
  frameshift->add_option("--xmax", fa.x_max, "Domain upper edge");
  frameshift->add_option("--boundary", fa.boundary,
                         "Boundary: transmissive | periodic");
  frameshift->add_option("--gamma", fa.gamma,
                         "Adiabatic exponent for gas closures");
  frameshift->add_option("--p1", fa.p1, "First family parameter");
  frameshift->add_option("--p2", fa.p2, "Second family parameter");
  CLI::Option* frameshift_outdir =
      frameshift->add_option("--outdir", fa.outdir, "Output directory");
  frameshift->add_option("--prefix", fa.prefix, "Output file prefix");
  frameshift->add_option("--config", "key=value configuration file");

  // conjugate -----------------------------------------------------------
  ConjugateArgs ja;
  CLI::App* conjugate = app.add_subcommand(
      "conjugate", "Debug access to entropy closures and Legendre duals");
  conjugate->add_option("--system", ja.system,
                        "Take the closure of this system");
  conjugate->add_option("--closure", ja.closure, "Closure name");
  conjugate->add_option("--rest", ja.rest,
                        "Rest invariants R1[,R2] to evaluate at");
  conjugate->add_option("--slopes", ja.slopes,
                        "Dual slopes A[,B] for the numeric conjugate");
  conjugate->add_option("--gamma", ja.gamma,
                        "Adiabatic exponent for gas closures");
  conjugate->add_option("--config", "key=value configuration file");

  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    std::vector<std::string> merged = merge_config(args, app);
    // CLI11 parses reversed argument lists.
    std::vector<std::string> reversed(merged.rbegin(), merged.rend());
    app.parse(reversed);

    ca.outdir_given = check_outdir->count() > 0;
    va.outdir_given = evolve_outdir->count() > 0;
    fa.outdir_given = frameshift_outdir->count() > 0;

    if (check->parsed()) return cmd_check(ca);
    if (eigen->parsed()) return cmd_eigen(ea);
    if (evolve_cmd->parsed()) return cmd_evolve(va);
    if (frameshift->parsed()) return cmd_frameshift(fa);
    if (conjugate->parsed()) return cmd_conjugate(ja);
    return 2;  // unreachable: require_subcommand(1)
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ConeViolation& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const BranchViolation& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const SolverAbort& e) {
    std::cerr << "solver abort: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "runtime error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "runtime error: " << e.what() << "\n";
    return 3;
  }
}
