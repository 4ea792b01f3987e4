#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "todalab/identity.hpp"
#include "todalab/laxode.hpp"

/// Named check suites per system, run configuration and JSON reports.
namespace todalab::harness {

/// Bad system, check, size or numeric option. The CLI maps it to exit code 2.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  std::string system = "classical";
  int size = 3;             // N, n or rank depending on the system
  std::string family = "A";  // lie-catalog only
  std::vector<std::string> checks{"all"};
  std::uint64_t seed = 0;
  std::size_t samples = 100;
  Mode mode = Mode::exact;
  double tolerance = 1e-9;
  std::string out;
};

struct CheckRun {
  std::string check;  // registry name that produced the report
  IdentityReport report;
  double seconds = 0.0;  // wall clock of the whole named check
};

struct RunReport {
  RunConfig config;
  std::vector<CheckRun> runs;
  bool passed() const;
};

const std::vector<std::string>& system_names();
/// Registry names for a system at a given size, in declared order.
std::vector<std::string> check_names(const std::string& system, const RunConfig& config);
/// Names that "all" expands to.
std::vector<std::string> default_checks(const RunConfig& config);

/// TODA_LAB_SEED when set, else 0.
std::uint64_t default_seed();

void validate(const RunConfig& config);
RunReport cmd_verify(const RunConfig& config);

nlohmann::json config_json(const RunConfig& config);
/// Fills fields present in `j`; unknown keys are rejected.
RunConfig config_from_json(const nlohmann::json& j, RunConfig base);
nlohmann::json report_json(const RunReport& report, bool timing = true);
nlohmann::json identity_json(const IdentityReport& r);

// integrate -----------------------------------------------------------------

struct IntegrateConfig {
  std::string system = "classical";
  int size = 3;
  std::string family = "A";
  std::vector<double> point;  // empty: seeded random point
  std::uint64_t seed = 0;
  double t_end = 10.0;
  double step = 1e-3;
};

struct IntegrateResult {
  Trajectory trajectory;
  DriftReport drift;
};

IntegrateResult cmd_integrate(const IntegrateConfig& config);
nlohmann::json drift_json(const IntegrateConfig& config, const IntegrateResult& result);

// table ---------------------------------------------------------------------

struct TableRequest {
  std::string system = "classical";
  int size = 3;
  std::string index = "1";
  std::vector<std::string> point;  // rationals like "3/2"; empty: formulas only
};

/// Valid `index` values for a system and size.
std::vector<std::string> table_indices(const std::string& system, int size);
nlohmann::json cmd_table(const TableRequest& request);

}  // namespace todalab::harness
