#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "todalab/harness.hpp"
#include "todalab/laxode.hpp"

using namespace todalab;
using namespace todalab::harness;
using nlohmann::json;

namespace {

constexpr int exit_pass = 0;
constexpr int exit_fail = 1;
constexpr int exit_config = 2;

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    out.push_back(b == std::string::npos ? std::string() : item.substr(b, e - b + 1));
  }
  return out;
}

std::vector<double> parse_doubles(const std::string& s) {
  std::vector<double> out;
  for (const auto& t : split(s)) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(t, &used));
      if (used != t.size()) throw std::invalid_argument(t);
    } catch (const std::exception&) {
      throw ConfigError("not a number in --point: '" + t + "'");
    }
  }
  return out;
}

void emit(const json& j, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::ofstream f(path);
  if (!f) throw ConfigError("cannot write " + path);
  f << j.dump(2) << '\n';
}

json read_json_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot read config file " + path);
  try {
    return json::parse(f);
  } catch (const json::exception& e) {
    throw ConfigError("config file " + path + " is not valid JSON: " + e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-Hamiltonian Toda lattice verification"};
  app.require_subcommand(1);

  // verify
  auto* verify = app.add_subcommand("verify", "Run named identity checks and write a JSON report");
  std::string system = "classical", family = "A", checks = "all", mode = "exact", out, config_file;
  int size = 3;
  std::uint64_t seed = 0;
  std::size_t samples = 100;
  double tol = 1e-9;
  bool no_timing = false;
  verify->add_option("--system", system, "classical, relativistic, bn, kostant or lie-catalog");
  verify->add_option("--N,--n,--rank", size, "Lattice size, gl(n) size or rank");
  verify->add_option("--family", family, "Root system family for lie-catalog (A B C D G2 F4 E6 E7 E8)");
  verify->add_option("--checks", checks, "Comma separated check names or 'all'");
  verify->add_option("--seed", seed, "Sampler seed (default: TODA_LAB_SEED or 0)");
  verify->add_option("--samples", samples, "Sample points per identity");
  verify->add_option("--mode", mode, "exact or float");
  verify->add_option("--tol", tol, "Tolerance in float mode");
  verify->add_option("--out", out, "Report path (default: stdout)");
  verify->add_option("--config", config_file, "JSON config file; flags win");
  verify->add_flag("--no-timing", no_timing, "Omit per-check seconds from the report");

  // integrate
  auto* integrate = app.add_subcommand("integrate", "RK4 trajectory CSV and invariant drift JSON");
  std::string point, csv;
  double t_end = 10.0, step = 1e-3;
  double max_drift = -1.0;
  integrate->add_option("--system", system);
  integrate->add_option("--N,--n,--rank", size);
  integrate->add_option("--family", family);
  integrate->add_option("--point", point, "Comma separated initial point (default: seeded random point)");
  integrate->add_option("--seed", seed);
  integrate->add_option("--t-end", t_end);
  integrate->add_option("--step", step);
  integrate->add_option("--csv", csv, "Trajectory CSV path ('-' for stdout)");
  integrate->add_option("--out", out, "Drift JSON path (default: stdout)");
  integrate->add_option("--max-drift", max_drift, "Exit 1 when any invariant drifts further");

  // table
  auto* table = app.add_subcommand("table", "Dump a bracket table or B2 constraint matrices as JSON");
  std::string index = "1";
  table->add_option("--system", system);
  table->add_option("--N,--n,--rank", size);
  table->add_option("--index", index, "Bracket index, or b2, b2-p, rational");
  table->add_option("--point", point, "Comma separated rational point, e.g. 1,2/3,-5");
  table->add_option("--out", out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_config;
  }

  try {
    if (verify->parsed()) {
      RunConfig rc;
      rc.seed = default_seed();
      if (!config_file.empty()) rc = config_from_json(read_json_file(config_file), rc);
      if (verify->count("--system")) rc.system = system;
      if (verify->count("--N")) rc.size = size;
      if (verify->count("--family")) rc.family = family;
      if (verify->count("--checks")) rc.checks = split(checks);
      if (verify->count("--seed")) rc.seed = seed;
      if (verify->count("--samples")) rc.samples = samples;
      if (verify->count("--mode")) {
        try {
          rc.mode = parse_mode(mode);
        } catch (const std::invalid_argument& e) {
          throw ConfigError(e.what());
        }
      }
      if (verify->count("--tol")) rc.tolerance = tol;
      if (verify->count("--out")) rc.out = out;
      const RunReport report = cmd_verify(rc);
      emit(report_json(report, !no_timing), rc.out);
      if (!rc.out.empty()) {
        for (const auto& r : report.runs)
          std::cout << (r.report.passed ? "PASS " : "FAIL ") << r.report.name << " max=" << r.report.max_residual << '\n';
      }
      return report.passed() ? exit_pass : exit_fail;
    }
    if (integrate->parsed()) {
      IntegrateConfig ic;
      ic.system = system;
      ic.size = size;
      ic.family = family;
      ic.seed = integrate->count("--seed") ? seed : default_seed();
      ic.t_end = t_end;
      ic.step = step;
      if (!point.empty()) ic.point = parse_doubles(point);
      const IntegrateResult r = cmd_integrate(ic);
      if (!csv.empty()) {
        if (csv == "-") {
          write_csv(r.trajectory, std::cout);
        } else {
          std::ofstream f(csv);
          if (!f) throw ConfigError("cannot write " + csv);
          write_csv(r.trajectory, f);
        }
      }
      emit(drift_json(ic, r), out);
      return (max_drift >= 0.0 && r.drift.max_drift() > max_drift) ? exit_fail : exit_pass;
    }
    TableRequest tr;
    tr.system = system;
    tr.size = size;
    tr.index = index;
    if (!point.empty()) tr.point = split(point);
    emit(cmd_table(tr), out);
    return exit_pass;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return exit_config;
  } catch (const FlowBlowup& e) {
    std::cerr << "integration failed: " << e.what() << '\n';
    return exit_fail;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return exit_config;
  } catch (const std::domain_error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return exit_config;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_fail;
  }
}
