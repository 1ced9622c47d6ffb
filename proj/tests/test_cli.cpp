// End-to-end tests of the galcl command-line tool: exit codes, report
// determinism, config-file handling, output-directory resolution, CSV
// round-trips, and error surfaces. Each case runs the real binary in a
// fresh scratch directory.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "galcl/solver.hpp"

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Fresh scratch directory per test case.
fs::path scratch(const std::string& tag) {
  fs::path dir = fs::temp_directory_path() / ("galcl_cli_" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

// Run the CLI with `args` inside `dir`. GALCL_OUTDIR is scrubbed from the
// environment so tests control it explicitly via `env`.
RunResult run_cli(const std::string& args, const fs::path& dir,
                  const std::string& env = "") {
  fs::path out = dir / "_stdout.txt";
  fs::path err = dir / "_stderr.txt";
  std::string cmd = "cd '" + dir.string() + "' && env -u GALCL_OUTDIR " + env +
                    (env.empty() ? "" : " ") + "'" + GALCL_CLI_PATH + "' " +
                    args + " > '" + out.string() + "' 2> '" + err.string() +
                    "'";
  int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

int count_lines_containing(const std::string& text, const std::string& needle) {
  int n = 0;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line))
    if (line.find(needle) != std::string::npos) ++n;
  return n;
}

}  // namespace

TEST_CASE("help lists every subcommand and exits cleanly") {
  fs::path dir = scratch("help");
  RunResult r = run_cli("--help", dir);
  CHECK(r.exit_code == 0);
  for (const char* sub : {"check", "eigen", "evolve", "frameshift", "conjugate"})
    CHECK(r.out.find(sub) != std::string::npos);

  // No subcommand is a usage error.
  RunResult r2 = run_cli("", dir);
  CHECK(r2.exit_code == 2);
}

TEST_CASE("check runs are byte-identical for a fixed seed") {
  fs::path d1 = scratch("check_det1");
  fs::path d2 = scratch("check_det2");
  RunResult r1 = run_cli("check --system cemracs --seed 7", d1);
  RunResult r2 = run_cli("check --system cemracs --seed 7", d2);
  CHECK(r1.exit_code == 0);
  CHECK(r2.exit_code == 0);
  CHECK(r1.out == r2.out);
  CHECK(slurp(d1 / "check_report.txt") == slurp(d2 / "check_report.txt"));
  CHECK(slurp(d1 / "check_report.csv") == slurp(d2 / "check_report.csv"));
  CHECK(!slurp(d1 / "check_report.txt").empty());

  // A different seed changes the report (residuals move with the draws).
  RunResult r3 = run_cli("check --system cemracs --seed 8", d1);
  CHECK(r3.exit_code == 0);
  CHECK(r3.out != r1.out);
}

TEST_CASE("check --all covers the full registry of genuine systems") {
  fs::path dir = scratch("check_all");
  RunResult r = run_cli("check --all --seed 42", dir);
  CHECK(r.exit_code == 0);
  // 7 systems x 10 property checks, comfortably past the 35-check floor.
  CHECK(count_lines_containing(r.out, "check=") >= 35);
  CHECK(r.out.find("pass=no") == std::string::npos);
  CHECK(r.out.find("suite: checks=70 failed=0 pass=yes") != std::string::npos);
  CHECK(fs::exists(dir / "check_report.csv"));
}

TEST_CASE("check exit codes distinguish failure kinds") {
  fs::path dir = scratch("check_exits");

  // The mutated fixture fails its differential identities: exit 1.
  RunResult bad = run_cli("check --system corrupted-fixture --seed 5", dir);
  CHECK(bad.exit_code == 1);
  CHECK(bad.out.find("pass=no") != std::string::npos);
  CHECK(bad.out.find("corrupted-fixture") != std::string::npos);

  // Suites without a seed are refused: exit 2.
  RunResult noseed = run_cli("check --system cemracs", dir);
  CHECK(noseed.exit_code == 2);

  // Unknown systems are refused with the list of known names: exit 2.
  RunResult unknown = run_cli("check --system nosuch --seed 1", dir);
  CHECK(unknown.exit_code == 2);
  CHECK(unknown.err.find("eulergas") != std::string::npos);
  CHECK(unknown.err.find("cemracs") != std::string::npos);
}

TEST_CASE("eigen reproduces the closed-form speeds") {
  fs::path dir = scratch("eigen");

  RunResult cem = run_cli("eigen --system cemracs --state 1,0,2.5", dir);
  CHECK(cem.exit_code == 0);
  CHECK(cem.out.find("0.45175") != std::string::npos);
  CHECK(cem.out.find("max residual") != std::string::npos);

  RunResult gas = run_cli("eigen --system eulergas --state 1,0,2.5", dir);
  CHECK(gas.exit_code == 0);
  CHECK(gas.out.find("1.1832") != std::string::npos);

  // Out-of-cone states are refused, naming the violated inequality.
  RunResult cone = run_cli("eigen --system eulergas --state 1,1,0.4", dir);
  CHECK(cone.exit_code == 2);
  CHECK(cone.err.find("internal energy") != std::string::npos);

  RunResult h2 = run_cli("eigen --system hyp2 --state 1,1.5", dir);
  CHECK(h2.exit_code == 2);
  CHECK(h2.err.find("zeta") != std::string::npos);
}

TEST_CASE("evolve with tend 0 writes a single snapshot equal to the IC") {
  fs::path dir = scratch("evolve_t0");
  RunResult r = run_cli("evolve --system eulergas --ic sod --cells 40 --tend 0",
                        dir);
  CHECK(r.exit_code == 0);
  CHECK(fs::exists(dir / "evolve_snap_0000.csv"));
  CHECK(!fs::exists(dir / "evolve_snap_0001.csv"));

  galcl::LoadedField f = galcl::read_field_csv((dir / "evolve_snap_0000.csv").string());
  CHECK(f.time == 0.0);
  CHECK(f.m == 3);
  REQUIRE(f.states.size() == 40);
  for (std::size_t i = 0; i < 40; ++i) {
    const galcl::Vec& w = f.states[i];
    if (f.x[i] < 0.5) {
      CHECK(w[0] == 1.0);
      CHECK(w[1] == 0.0);
      CHECK(w[2] == 2.5);
    } else {
      CHECK(w[0] == 0.125);
      CHECK(w[2] == 0.25);
    }
  }
}

TEST_CASE("evolve emits snapshots plus a separate plot script") {
  fs::path dir = scratch("evolve_sod");
  RunResult r = run_cli(
      "evolve --system eulergas --ic sod --cells 80 --tend 0.1 "
      "--snap-every 20 --prefix sod",
      dir);
  CHECK(r.exit_code == 0);
  CHECK(fs::exists(dir / "sod_snap_0000.csv"));
  CHECK(fs::exists(dir / "sod_plot.gp"));
  std::string gp = slurp(dir / "sod_plot.gp");
  // The script references the data files rather than embedding data.
  CHECK(gp.find("sod_snap_0000.csv") != std::string::npos);
  CHECK(gp.find("plot") != std::string::npos);
  CHECK(gp.find("eta") != std::string::npos);
  // Snapshot CSVs carry the documented header.
  std::string csv = slurp(dir / "sod_snap_0000.csv");
  CHECK(csv.rfind("t,x,rho,q,epsilon,u,eta,pi\n", 0) == 0);
  // stdout names every artifact it wrote.
  CHECK(count_lines_containing(r.out, "wrote ") >= 3);
}

TEST_CASE("snapshot CSVs round-trip through the table initial condition") {
  fs::path dir = scratch("evolve_roundtrip");
  RunResult first = run_cli(
      "evolve --system eulergas --ic sod --cells 64 --tend 0.05 --prefix a",
      dir);
  CHECK(first.exit_code == 0);
  // Re-reading the final snapshot as an IC on the same grid and writing it
  // out again must reproduce the file byte for byte (full-precision CSV).
  RunResult second = run_cli(
      "evolve --system eulergas --ic table --table a_snap_0001.csv "
      "--cells 64 --tend 0 --prefix b",
      dir);
  CHECK(second.exit_code == 0);
  std::string a = slurp(dir / "a_snap_0001.csv");
  std::string b = slurp(dir / "b_snap_0000.csv");
  // The t column restarts at 0 for the re-run; compare the payload columns.
  auto strip_t = [](const std::string& csv) {
    std::string out;
    std::istringstream in(csv);
    std::string line;
    while (std::getline(in, line))
      out += line.substr(line.find(',')) + "\n";
    return out;
  };
  CHECK(strip_t(a) == strip_t(b));
  CHECK(a.substr(0, a.find('\n')) == b.substr(0, b.find('\n')));
}

TEST_CASE("config file supplies defaults and flags win") {
  fs::path dir = scratch("config");
  {
    std::ofstream conf(dir / "run.conf");
    conf << "# scratch configuration\n";
    conf << "system = eulergas\n";
    conf << "cells = 50\n";
    conf << "tend = 0\n";
    conf << "prefix = fromconf\n";
  }
  RunResult r = run_cli("evolve --config run.conf --cells 64", dir);
  CHECK(r.exit_code == 0);
  CHECK(fs::exists(dir / "fromconf_snap_0000.csv"));  // prefix from config
  galcl::LoadedField f =
      galcl::read_field_csv((dir / "fromconf_snap_0000.csv").string());
  CHECK(f.states.size() == 64);  // explicit flag beat the config value

  // Unknown keys are rejected with file:line diagnostics.
  {
    std::ofstream conf(dir / "bad.conf");
    conf << "cells = 50\n";
    conf << "warp_factor = 9\n";
  }
  RunResult bad = run_cli("evolve --config bad.conf", dir);
  CHECK(bad.exit_code == 2);
  CHECK(bad.err.find("bad.conf:2") != std::string::npos);
  CHECK(bad.err.find("warp_factor") != std::string::npos);

  // Malformed lines name the line too.
  {
    std::ofstream conf(dir / "noval.conf");
    conf << "cells\n";
  }
  RunResult noval = run_cli("evolve --config noval.conf", dir);
  CHECK(noval.exit_code == 2);
  CHECK(noval.err.find("noval.conf:1") != std::string::npos);

  RunResult missing = run_cli("evolve --config does_not_exist.conf", dir);
  CHECK(missing.exit_code == 2);
}

TEST_CASE("output directory: flag beats environment beats cwd") {
  fs::path dir = scratch("outdir");
  RunResult env_run = run_cli("evolve --tend 0 --cells 40 --prefix e", dir,
                              "GALCL_OUTDIR=envdir");
  CHECK(env_run.exit_code == 0);
  CHECK(fs::exists(dir / "envdir" / "e_snap_0000.csv"));

  RunResult flag_run =
      run_cli("evolve --tend 0 --cells 40 --prefix f --outdir flagdir", dir,
              "GALCL_OUTDIR=envdir");
  CHECK(flag_run.exit_code == 0);
  CHECK(fs::exists(dir / "flagdir" / "f_snap_0000.csv"));
  CHECK(!fs::exists(dir / "envdir" / "f_snap_0000.csv"));
}

TEST_CASE("solver aborts surface as exit code 3 with context") {
  fs::path dir = scratch("abort");
  RunResult r = run_cli(
      "evolve --system hyp2 --ic riemann --left 12.8,-12.4 "
      "--right 0.064,-0.0626 --cells 8 --cfl 0.9 --tend 0.5",
      dir);
  CHECK(r.exit_code == 3);
  CHECK(r.err.find("solver abort") != std::string::npos);
  CHECK(r.err.find("cone exit in cell 4") != std::string::npos);
}

TEST_CASE("invalid run parameters are usage errors") {
  fs::path dir = scratch("usage");
  CHECK(run_cli("evolve --cfl 0.95 --tend 0.01 --cells 40", dir).exit_code == 2);
  CHECK(run_cli("evolve --tend -1 --cells 40", dir).exit_code == 2);
  CHECK(run_cli("evolve --cells 2 --tend 0.01", dir).exit_code == 2);
  CHECK(run_cli("evolve --ic riemann --tend 0.01 --cells 40", dir).exit_code == 2);
  CHECK(run_cli("evolve --ic riemann --left 1,0 --right 0.5,0 --tend 0.01 "
                "--cells 40", dir).exit_code == 2);  // wrong arity for gas
  CHECK(run_cli("evolve --boundary warp --tend 0.01 --cells 40", dir)
            .exit_code == 2);
  CHECK(run_cli("frameshift --grids 200,400", dir).exit_code == 2);  // no --v
}

TEST_CASE("frameshift prints a decreasing convergence table") {
  fs::path dir = scratch("frameshift");
  RunResult r = run_cli("frameshift --v 0.5 --grids 32,64,128 --tend 0.1", dir);
  CHECK(r.exit_code == 0);
  CHECK(fs::exists(dir / "frameshift_table.csv"));
  CHECK(fs::exists(dir / "frameshift_plot.gp"));

  std::string csv = slurp(dir / "frameshift_table.csv");
  CHECK(csv.rfind("cells,l1,order\n", 0) == 0);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);  // header
  std::vector<double> l1;
  while (std::getline(in, line)) {
    auto c1 = line.find(',');
    auto c2 = line.find(',', c1 + 1);
    l1.push_back(std::stod(line.substr(c1 + 1, c2 - c1 - 1)));
  }
  REQUIRE(l1.size() == 3);
  CHECK(l1[0] > l1[1]);
  CHECK(l1[1] > l1[2]);

  // Boosting an elliptic family past its branch is refused up front.
  RunResult branch =
      run_cli("frameshift --system ell2 --v 1.6 --grids 16 --tend 0.01", dir);
  CHECK(branch.exit_code == 2);
}

TEST_CASE("conjugate reports the Legendre data of a closure") {
  fs::path dir = scratch("conjugate");
  RunResult r = run_cli("conjugate --system eulergas --rest 1,2.5", dir);
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("ideal-gas") != std::string::npos);
  CHECK(r.out.find("Legendre identity residual = 0") != std::string::npos);
  CHECK(r.out.find("mechanical pressure") != std::string::npos);

  RunResult s = run_cli("conjugate --closure square --slopes 3", dir);
  CHECK(s.exit_code == 0);
  CHECK(s.out.find("primal point = (1.5)") != std::string::npos);

  CHECK(run_cli("conjugate --system eulergas", dir).exit_code == 2);
  CHECK(run_cli("conjugate --closure nosuch --rest 1", dir).exit_code == 2);
  CHECK(run_cli("conjugate --system eulergas --rest 1", dir).exit_code == 2);
}
