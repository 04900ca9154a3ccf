#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "dpp/run.hpp"
#include "helpers.hpp"

using namespace dpp;
using namespace dpp::testing;

namespace {

void write_doc(const std::string& path, const Json& doc) {
  std::ofstream out(path, std::ios::binary);
  out << doc.dump(1) << "\n";
}

// Uniform 2x2 horizon-2 instance with seeded prefix rewards.
std::string reward_doc() {
  const std::string path = "run_reward_dpp.json";
  Interface iface({"o0", "o1"}, {"a0", "a1"}, 2);
  Json doc;
  doc["interface"] = {{"observations", {"o0", "o1"}},
                      {"actions", {"a0", "a1"}},
                      {"horizon", 2}};
  doc["rho0"] = {{"o0", "1/2"}, {"o1", "1/2"}};
  doc["rho"] = Json::array();
  doc["default_dist"] = {{"o0", "1/2"}, {"o1", "1/2"}};
  Json r = Json::object();
  int i = 0;
  for (std::size_t t = 0; t <= 2; ++t)
    for (const History& h : all_histories(iface, t)) {
      r[history_key(h, iface)] = format_rational(Rational(i % 7 - 3, 1 + i % 4));
      ++i;
    }
  doc["preference"] = {{"kind", "expected_reward"}, {"r", r}};
  write_doc(path, doc);
  return path;
}

// Same dynamics under a linear feature-action reward seen through a width-1
// window, so every frequency command has something to chew on.
std::string freq_doc() {
  const std::string path = "run_freq_dpp.json";
  Json doc;
  doc["interface"] = {{"observations", {"o0", "o1"}},
                      {"actions", {"a0", "a1"}},
                      {"horizon", 2}};
  doc["rho0"] = {{"o0", "1/2"}, {"o1", "1/2"}};
  doc["rho"] = Json::array();
  doc["default_dist"] = {{"o0", "1/2"}, {"o1", "1/2"}};
  doc["feature_map"] = {{"kind", "k_window"}, {"k", 1}};
  doc["gamma"] = {"1/2", "1/2"};
  doc["preference"] = {{"kind", "frequency_embedded"},
                       {"r",
                        {{"o0|a0", "0/1"},
                         {"o0|a1", "1/1"},
                         {"o1|a0", "2/1"},
                         {"o1|a1", "3/1"}}}};
  write_doc(path, doc);
  return path;
}

// Single-observation instance whose preference ranks the event trajectory
// below everything else; not linearly representable.
std::string risk_doc() {
  const std::string path = "run_risk_dpp.json";
  Json doc;
  doc["interface"] = {{"observations", {"o0"}}, {"actions", {"a0", "a1"}},
                      {"horizon", 2}};
  doc["rho0"] = {{"o0", "1/1"}};
  doc["rho"] = Json::array();
  doc["default_dist"] = {{"o0", "1/1"}};
  doc["preference"] = {{"kind", "risk"},
                       {"u",
                        {{"o0|a0|o0|a0|o0", "1/1"},
                         {"o0|a0|o0|a1|o0", "2/1"},
                         {"o0|a1|o0|a0|o0", "3/1"},
                         {"o0|a1|o0|a1|o0", "4/1"}}},
                       {"beta", "-1/1"},
                       {"event", {"o0|a1|o0|a1|o0"}}};
  write_doc(path, doc);
  return path;
}

RunConfig cfg(const std::string& command, const std::string& input) {
  RunConfig c;
  c.command = command;
  c.input = input;
  return c;
}

}  // namespace

TEST_CASE("reports carry the envelope and validate") {
  const std::string path = reward_doc();
  RunOutcome out = run(cfg("plan", path));
  CHECK(out.exit_code == 0);
  CHECK(out.report["tool"] == "dppctl");
  CHECK(out.report["command"] == "plan");
  CHECK(out.report["input"] == path);
  CHECK(out.report["seed"] == 0);
  CHECK(out.report["exercises"].is_string());
  REQUIRE(out.report.contains("result"));
  CHECK(!out.report["result"]["policy"].empty());
  CHECK(!out.report["result"]["certificates"].empty());
  CHECK(validate_report(out.report));
  std::remove(path.c_str());
}

TEST_CASE("every command is deterministic byte for byte") {
  const std::string reward = reward_doc();
  const std::string freq = freq_doc();
  std::vector<RunConfig> runs;
  for (const char* c : {"plan", "verify", "brute-force", "check-axioms",
                        "fit-utility"})
    runs.push_back(cfg(c, reward));
  for (const char* c : {"check-mfa", "feature-exists", "plan-frequency",
                        "fit-feature-reward", "check-axioms"})
    runs.push_back(cfg(c, freq));
  for (const char* name : {"no-optimum", "risk", "lexicographic"}) {
    RunConfig c = cfg("repro", "");
    c.case_name = name;
    runs.push_back(c);
  }
  for (RunConfig& c : runs) {
    c.seed = 7;
    RunOutcome a = run(c);
    RunOutcome b = run(c);
    CAPTURE(c.command);
    CHECK(report_bytes(a.report) == report_bytes(b.report));
    CHECK(a.exit_code == b.exit_code);
    CHECK(validate_report(a.report));
  }
  std::remove(reward.c_str());
  std::remove(freq.c_str());
}

TEST_CASE("input failures exit 4 with a pointer") {
  RunOutcome out = run(cfg("plan", "no_such_file.json"));
  CHECK(out.exit_code == 4);
  CHECK(out.report["error"]["kind"] == "input");
  CHECK(validate_report(out.report));

  const std::string garbled = "run_garbled.json";
  {
    std::ofstream f(garbled);
    f << "{broken";
  }
  out = run(cfg("verify", garbled));
  CHECK(out.exit_code == 4);
  std::remove(garbled.c_str());

  const std::string bad = "run_bad_field.json";
  {
    Json doc;
    doc["interface"] = {{"observations", {"o0"}}, {"actions", {"a0"}},
                        {"horizon", 0}};
    doc["rho0"] = {{"o0", "1/1"}};
    doc["rho"] = Json::array();
    write_doc(bad, doc);
  }
  out = run(cfg("plan", bad));
  CHECK(out.exit_code == 4);
  CHECK(out.report["error"]["pointer"] == "/interface/horizon");
  std::remove(bad.c_str());

  out = run(cfg("plan", ""));
  CHECK(out.exit_code == 4);

  out = run(cfg("launch-missiles", "x.json"));
  CHECK(out.exit_code == 4);
  CHECK(out.report["exercises"] == "");
  // The schema pins the command vocabulary, so this report cannot validate.
  CHECK(!validate_report(out.report));
  CHECK(out.report["error"]["kind"] == "input");

  RunConfig c = cfg("repro", "");
  c.case_name = "prop-fortytwo";
  out = run(c);
  CHECK(out.exit_code == 4);
  CHECK(!out.report.contains("case"));
  CHECK(validate_report(out.report));

  const std::string reward = reward_doc();
  c = cfg("check-axioms", reward);
  c.axiom = "symmetry";
  out = run(c);
  CHECK(out.exit_code == 4);
  std::remove(reward.c_str());
}

TEST_CASE("enumeration caps exit 5 with the limit and the requirement") {
  const std::string reward = reward_doc();
  RunConfig c = cfg("brute-force", reward);
  c.limit_policies = 3;
  RunOutcome out = run(c);
  CHECK(out.exit_code == 5);
  CHECK(out.report["error"]["kind"] == "limit");
  CHECK(out.report["error"]["limit"] == 3);
  CHECK(out.report["error"]["required"] == 10);
  CHECK(validate_report(out.report));
  std::remove(reward.c_str());
}

TEST_CASE("verdicts drive the exit code") {
  const std::string risk = risk_doc();
  RunOutcome out = run(cfg("fit-utility", risk));
  CHECK(out.exit_code == 2);
  CHECK(out.report["result"]["verdict"] == "refuted-on-testset");
  CHECK(!out.report["result"]["witness"].is_null());

  out = run(cfg("check-axioms", risk));
  CHECK(out.exit_code == 2);

  RunConfig c = cfg("check-axioms", risk);
  c.axiom = "consistency";
  out = run(c);
  CHECK(out.exit_code == 0);
  CHECK(out.report["result"]["axioms"].size() == 1);
  CHECK(out.report["result"]["axioms"][0]["verdict"] == "passed-on-testset");

  c.axiom = "convexity";
  out = run(c);
  CHECK(out.exit_code == 2);
  CHECK(out.report["result"]["axioms"][0]["verdict"] == "refuted");
  CHECK(!out.report["result"]["axioms"][0]["witness"].is_null());
  CHECK(out.report["result"]["axioms"][0]["witness"]["alpha"].is_string());
  std::remove(risk.c_str());

  const std::string freq = freq_doc();
  out = run(cfg("fit-feature-reward", freq));
  CHECK(out.exit_code == 0);
  CHECK(out.report["result"]["verdict"] == "representable");
  CHECK(out.report["result"]["reward"].size() == 4);
  std::remove(freq.c_str());
}

TEST_CASE("repro cases reproduce the built-in conclusions") {
  RunConfig c = cfg("repro", "");
  c.case_name = "no-optimum";
  RunOutcome out = run(c);
  CHECK(out.exit_code == 2);
  CHECK(out.report["case"] == "no-optimum");
  const Json& r = out.report["result"];
  CHECK(r["policy_count"] == 32);
  CHECK(r["optimal_count"] == 0);
  CHECK(r["policies"].size() == 32);
  CHECK(r["witness_values"] == Json({"0/1", "1/1"}));
  for (const Json& e : r["policies"]) CHECK(!e["refuted_at"].is_null());
  for (const Json& conclusion : r["conclusions"]) CHECK(conclusion["holds"] == true);

  c.case_name = "risk";
  out = run(c);
  CHECK(out.exit_code == 0);
  CHECK(out.report["result"]["fit"]["verdict"] == "refuted-on-testset");
  for (const Json& conclusion : out.report["result"]["conclusions"])
    CHECK(conclusion["holds"] == true);

  c.case_name = "lexicographic";
  out = run(c);
  CHECK(out.exit_code == 0);
  for (const Json& conclusion : out.report["result"]["conclusions"])
    CHECK(conclusion["holds"] == true);
}

TEST_CASE("the published schema file matches the built-in schema") {
  std::ifstream f("../docs/report.schema.json", std::ios::binary);
  REQUIRE(f.good());
  std::string bytes((std::istreambuf_iterator<char>(f)),
                    std::istreambuf_iterator<char>());
  CHECK(bytes == report_bytes(report_schema()));
}

TEST_CASE("the schema evaluator rejects malformed reports") {
  const std::string reward = reward_doc();
  RunOutcome out = run(cfg("plan", reward));
  REQUIRE(validate_report(out.report));
  std::remove(reward.c_str());

  Json tampered = out.report;
  tampered.erase("tool");
  CHECK(!validate_report(tampered));

  tampered = out.report;
  tampered["error"] = Json{{"kind", "input"}, {"message", "x"}};
  CHECK(!validate_report(tampered));  // result and error are exclusive

  tampered = out.report;
  tampered["surprise"] = 1;
  CHECK(!validate_report(tampered));

  tampered = out.report;
  tampered["command"] = "dance";
  CHECK(!validate_report(tampered));

  tampered = out.report;
  tampered.erase("result");
  tampered["error"] = Json{{"kind", "mystery"}, {"message", "x"}};
  CHECK(!validate_report(tampered));
}
