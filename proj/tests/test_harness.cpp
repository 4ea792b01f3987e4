#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <map>

#include "todalab/harness.hpp"

using namespace todalab;
using namespace todalab::harness;

namespace {

std::string message_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

bool contains(const std::string& s, const std::string& part) { return s.find(part) != std::string::npos; }

RunConfig small(const std::string& system, int size, std::vector<std::string> checks) {
  RunConfig c;
  c.system = system;
  c.size = size;
  c.checks = std::move(checks);
  c.samples = 5;
  c.seed = 4;
  return c;
}

}  // namespace

TEST_CASE("unknown names list the vocabulary") {
  const std::string sys = message_of([] { cmd_verify(small("toad", 3, {"all"})); });
  CHECK(contains(sys, "classical"));
  CHECK(contains(sys, "lie-catalog"));
  const std::string chk = message_of([] { cmd_verify(small("classical", 3, {"jacoby"})); });
  CHECK(contains(chk, "jacoby"));
  CHECK(contains(chk, "jacobi"));
  CHECK(contains(chk, "canonical"));
  CHECK(message_of([] { cmd_verify(small("classical", 3, {})); }) == "no checks selected");
  CHECK_FALSE(message_of([] { cmd_verify(small("classical", 1, {"all"})); }).empty());
  CHECK_FALSE(message_of([] {
                RunConfig c = small("classical", 3, {"jacobi"});
                c.samples = 0;
                cmd_verify(c);
              }).empty());
}

TEST_CASE("default suites") {
  const RunConfig bn = small("bn", 2, {"all"});
  const auto d = default_checks(bn);
  const auto all = check_names("bn", bn);
  CHECK(std::find(d.begin(), d.end(), "dirac-inverse") != d.end());
  CHECK(std::find(d.begin(), d.end(), "b2-compatibility") == d.end());
  CHECK(std::find(all.begin(), all.end(), "b2-compatibility") != all.end());
  const auto c = default_checks(small("classical", 3, {"all"}));
  CHECK(c.front() == "jacobi");
}

TEST_CASE("verify runs named checks and reports deterministic JSON") {
  const RunConfig c = small("classical", 3, {"jacobi", "lax", "involution"});
  const RunReport a = cmd_verify(c);
  const RunReport b = cmd_verify(c);
  CHECK(a.passed());
  CHECK(a.runs.size() >= 3);
  CHECK(report_json(a, false) == report_json(b, false));
  const auto j = report_json(a, true);
  CHECK(j["verdict"] == "pass");
  CHECK(j["checks"][0].contains("check_seconds"));
  CHECK_FALSE(report_json(a, false)["checks"][0].contains("check_seconds"));

  RunConfig other = c;
  other.seed = 5;
  CHECK(report_json(cmd_verify(other), false)["config"]["seed"] == 5);
}

TEST_CASE("a failing check carries a witness into JSON") {
  // the printed P^-1 is not the inverse of P
  const RunReport r = cmd_verify(small("bn", 2, {"dirac-inverse"}));
  CHECK_FALSE(r.passed());
  const auto j = report_json(r, false);
  CHECK(j["verdict"] == "fail");
  bool witnessed = false;
  for (const auto& c : j["checks"]) witnessed = witnessed || c.contains("witness");
  CHECK(witnessed);
}

TEST_CASE("config files: round trip and unknown keys") {
  RunConfig c = small("relativistic", 3, {"jacobi"});
  c.mode = Mode::real;
  c.tolerance = 1e-7;
  const RunConfig back = config_from_json(config_json(c), RunConfig{});
  CHECK(back.system == "relativistic");
  CHECK(back.size == 3);
  CHECK(back.mode == Mode::real);
  CHECK(back.tolerance == 1e-7);
  CHECK(back.checks == c.checks);
  CHECK_THROWS_AS(config_from_json(nlohmann::json{{"sytem", "bn"}}, RunConfig{}), ConfigError);
  CHECK_THROWS_AS(config_from_json(nlohmann::json{{"size", "three"}}, RunConfig{}), ConfigError);
  CHECK_THROWS_AS(config_from_json(nlohmann::json::array(), RunConfig{}), ConfigError);
}

TEST_CASE("seed from the environment") {
  ::unsetenv("TODA_LAB_SEED");
  CHECK(default_seed() == 0);
  ::setenv("TODA_LAB_SEED", "77", 1);
  CHECK(default_seed() == 77);
  ::setenv("TODA_LAB_SEED", "seven", 1);
  CHECK_THROWS_AS(default_seed(), ConfigError);
  ::unsetenv("TODA_LAB_SEED");
}

TEST_CASE("integrate validates input and reports drift") {
  IntegrateConfig c;
  c.system = "classical";
  c.size = 3;
  c.t_end = 1.0;
  c.step = 0.0;
  CHECK_THROWS_AS(cmd_integrate(c), ConfigError);
  c.step = 1e-2;
  c.point = {1.0, 2.0};
  const std::string m = message_of([&] { cmd_integrate(c); });
  CHECK(contains(m, "needs 5"));
  c.point.clear();
  c.seed = 3;
  const IntegrateResult r = cmd_integrate(c);
  CHECK(r.trajectory.times.size() == 101);
  CHECK(r.drift.entries.size() == 3);
  CHECK(r.drift.max_drift() < 1e-6);
  const auto j = drift_json(c, r);
  CHECK(j["steps"] == 100);
  CHECK(j["invariants"].size() == 3);

  IntegrateConfig k;
  k.system = "kostant";
  k.size = 4;
  k.seed = 2;
  k.t_end = 1.0;
  k.step = 1e-3;
  const IntegrateResult kr = cmd_integrate(k);
  bool rational = false;
  for (const auto& e : kr.drift.entries) rational = rational || e.name.rfind("I", 0) == 0;
  CHECK(rational);
  CHECK(kr.drift.max_drift() < 1e-8);
}

TEST_CASE("tables") {
  const std::string m = message_of([] {
    TableRequest t;
    t.index = "9";
    cmd_table(t);
  });
  CHECK(contains(m, "valid: 1, 2, 3"));
  CHECK(table_indices("bn", 2).back() == "b2-p");

  // pi_2 for N = 3
  TableRequest t;
  t.index = "2";
  const auto j = cmd_table(t);
  std::map<std::pair<std::string, std::string>, std::string> got;
  for (const auto& e : j["entries"]) got[{e["i"], e["j"]}] = e["poly"];
  CHECK(got.size() == 7);
  CHECK(got[{"a1", "a2"}] == "1/2*a1*a2");
  CHECK(got[{"a1", "b1"}] == "-a1*b1");
  CHECK(got[{"a2", "b3"}] == "a2*b3");
  CHECK(got[{"b2", "b3"}] == "2*a2^2");

  t.point = {"1", "2", "3", "1/2", "-1"};
  const auto v = cmd_table(t);
  CHECK(v["values"][0]["value"] == "1");  // {a1,a2} = a1 a2 / 2
  t.point = {"1", "x", "3", "1/2", "-1"};
  CHECK_THROWS_AS(cmd_table(t), ConfigError);
}
