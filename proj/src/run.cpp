#include "dpp/run.hpp"

#include <set>
#include <utility>
#include <vector>

#include "dpp/builtins.hpp"
#include "dpp/representability.hpp"

namespace dpp {

namespace {

std::string exercises_for(const std::string& command) {
  if (command == "plan") return "ordinal-backward-induction";
  if (command == "verify") return "policy-optimality-verification";
  if (command == "brute-force") return "exhaustive-policy-enumeration";
  if (command == "check-axioms") return "preorder-axiom-falsification";
  if (command == "check-mfa") return "feature-markov-abstraction-check";
  if (command == "feature-exists") return "feature-based-policy-existence";
  if (command == "plan-frequency") return "frequency-based-planning";
  if (command == "fit-utility") return "linear-utility-representation";
  if (command == "fit-feature-reward") return "feature-reward-representation";
  if (command == "repro") return "built-in-case-reproduction";
  return "";
}

bool is_repro_case(const std::string& name) {
  return name == "no-optimum" || name == "risk" || name == "lexicographic";
}

// ---- report serialization (insertion order fixed for byte stability) ----

Json json_traj_dist(const TrajDist& d, const Interface& iface) {
  Json out = Json::object();
  for (const auto& [w, p] : d.entries())
    out[history_key(w, iface)] = format_rational(p);
  return out;
}

Json json_choices(const std::map<History, ActId>& choices, const Interface& iface) {
  Json out = Json::object();
  for (const auto& [h, a] : choices)
    out[history_key(h, iface)] = iface.action_name(a);
  return out;
}

Json json_policy(const Policy& pi, const Interface& iface) {
  Json out = Json::object();
  for (const auto& [h, dist] : pi.rules())
    out[history_key(h, iface)] = iface.action_name(pi.action_at(h));
  return out;
}

Json json_lub(const LubCertificate& cert, const Interface& iface) {
  Json table = Json::array();
  for (CompareResult c : cert.table) table.push_back(to_string(c));
  Json out;
  out["chosen"] = iface.action_name(cert.chosen);
  out["table"] = std::move(table);
  return out;
}

Json json_certificates(const std::map<History, LubCertificate>& certs,
                       const Interface& iface) {
  Json out = Json::object();
  for (const auto& [h, cert] : certs)
    out[history_key(h, iface)] = json_lub(cert, iface);
  return out;
}

Json json_axiom_report(const AxiomReport<Trajectory>& r, const Interface& iface) {
  Json out;
  out["axiom"] = to_string(r.axiom);
  out["verdict"] = to_string(r.verdict);
  out["tuples_checked"] = r.tuples_checked;
  out["testset_size"] = r.testset_size;
  if (r.witness) {
    Json w;
    Json dists = Json::array();
    for (const TrajDist& d : r.witness->dists)
      dists.push_back(json_traj_dist(d, iface));
    w["dists"] = std::move(dists);
    w["alpha"] = r.witness->alpha ? Json(format_rational(*r.witness->alpha))
                                  : Json(nullptr);
    Json observed = Json::array();
    for (CompareResult c : r.witness->observed) observed.push_back(to_string(c));
    w["observed"] = std::move(observed);
    w["note"] = r.witness->note;
    out["witness"] = std::move(w);
  } else {
    out["witness"] = nullptr;
  }
  return out;
}

Json json_verify(const OptimalityVerdict& v, const Interface& iface) {
  Json out;
  out["verdict"] = to_string(v.verdict);
  if (v.witness) {
    Json w;
    w["history"] = history_key(v.witness->history, iface);
    w["action"] = v.witness->action ? Json(iface.action_name(*v.witness->action))
                                    : Json(nullptr);
    w["competitor"] = json_choices(v.witness->competitor, iface);
    w["observed"] = to_string(v.witness->observed);
    out["witness"] = std::move(w);
  } else {
    out["witness"] = nullptr;
  }
  return out;
}

Json json_brute_force(const BruteForceResult& r, const Interface& iface) {
  Json policies = Json::array();
  for (const BruteForceEntry& e : r.entries) {
    Json entry;
    entry["choices"] = json_choices(e.choices, iface);
    entry["refuted_at"] =
        e.refuted_at ? Json(history_key(*e.refuted_at, iface)) : Json(nullptr);
    entry["competitor"] =
        e.refuted_at ? json_choices(e.competitor, iface) : Json(nullptr);
    entry["values"] = e.values ? Json({e.values->first, e.values->second})
                               : Json(nullptr);
    policies.push_back(std::move(entry));
  }
  Json out;
  out["policy_count"] = r.entries.size();
  out["optimal_indices"] = r.optimal_indices;
  out["optimal_count"] = r.optimal_indices.size();
  out["note"] = r.note;
  out["policies"] = std::move(policies);
  return out;
}

Json json_mfa(const MfaReport& r, const Interface& iface) {
  Json out;
  out["verdict"] = to_string(r.verdict);
  if (r.witness) {
    Json w;
    w["h1"] = history_key(r.witness->h1, iface);
    w["h2"] = history_key(r.witness->h2, iface);
    w["action"] = iface.action_name(r.witness->action);
    w["observation"] = r.witness->observation
                           ? Json(iface.observation_name(*r.witness->observation))
                           : Json(nullptr);
    w["clause"] = r.witness->clause;
    out["witness"] = std::move(w);
  } else {
    out["witness"] = nullptr;
  }
  return out;
}

Json json_pair_witness(const std::optional<std::pair<TrajDist, TrajDist>>& w,
                       const Interface& iface) {
  if (!w) return nullptr;
  return Json{json_traj_dist(w->first, iface), json_traj_dist(w->second, iface)};
}

Json json_trajectory_fit(const TrajectoryFit& fit, const Interface& iface) {
  Json out;
  out["verdict"] = to_string(fit.verdict);
  if (fit.utility) {
    Json u = Json::object();
    for (const auto& [w, q] : *fit.utility)
      u[history_key(w, iface)] = format_rational(q);
    out["utility"] = std::move(u);
  } else {
    out["utility"] = nullptr;
  }
  out["margin"] = format_rational(fit.margin);
  out["witness"] = json_pair_witness(fit.witness, iface);
  Json cycle = Json::array();
  for (const Trajectory& w : fit.cycle) cycle.push_back(history_key(w, iface));
  out["cycle"] = std::move(cycle);
  return out;
}

Json json_feature_fit(const FeatureFit& fit, const FeatureMap& phi,
                      const Interface& iface) {
  Json out;
  out["verdict"] = to_string(fit.verdict);
  if (fit.reward) {
    Json r = Json::object();
    for (const auto& [key, q] : *fit.reward)
      r[fa_key(key, phi, iface)] = format_rational(q);
    out["reward"] = std::move(r);
  } else {
    out["reward"] = nullptr;
  }
  out["margin"] = format_rational(fit.margin);
  out["witness"] = json_pair_witness(fit.witness, iface);
  return out;
}

// ---- command handlers ----

struct CommandResult {
  int exit_code = 0;
  Json result;
};

TestsetSpec user_spec(const RunConfig& config) {
  if (config.testset_size < 0)
    throw ParseError("", "--testset-size must be nonnegative");
  TestsetSpec spec;
  spec.seed = config.seed;
  spec.random_count = config.testset_size;
  return spec;
}

const TrajRelation& need_relation(const DppFile& f) {
  if (!f.relation)
    throw ParseError("/preference", "this command needs a preference");
  return *f.relation;
}

const FeatureMap& need_feature_map(const DppFile& f) {
  if (!f.feature_map)
    throw ParseError("/feature_map", "this command needs a feature_map");
  return *f.feature_map;
}

const GammaWeights& need_gamma(const DppFile& f) {
  if (!f.gamma) throw ParseError("/gamma", "this command needs gamma weights");
  return *f.gamma;
}

CommandResult cmd_plan(const RunConfig&, const DppFile& f) {
  PlanResult plan = plan_backward(f.iface, f.env, need_relation(f));
  CommandResult out;
  out.result["policy"] = json_policy(plan.policy, f.iface);
  out.result["certificates"] = json_certificates(plan.lub_certificates, f.iface);
  return out;
}

CommandResult cmd_verify(const RunConfig& config, const DppFile& f) {
  const TrajRelation& rel = need_relation(f);
  PlanResult plan = plan_backward(f.iface, f.env, rel);
  OptimalityVerdict verdict = verify_optimal(f.iface, f.env, rel, plan.policy,
                                             /*global=*/true, config.limit_policies);
  CommandResult out;
  out.result["policy"] = json_policy(plan.policy, f.iface);
  out.result["verify"] = json_verify(verdict, f.iface);
  if (verdict.verdict == Optimality::Refuted) out.exit_code = 2;
  if (verdict.verdict == Optimality::RelationNotTotal) out.exit_code = 3;
  return out;
}

CommandResult cmd_brute_force(const RunConfig& config, const DppFile& f) {
  BruteForceResult bf =
      brute_force_optimal(f.iface, f.env, need_relation(f), config.limit_policies);
  CommandResult out;
  out.result = json_brute_force(bf, f.iface);
  if (bf.optimal_indices.empty()) out.exit_code = 2;
  return out;
}

CommandResult cmd_check_axioms(const RunConfig& config, const DppFile& f) {
  const TrajRelation& rel = need_relation(f);
  TestsetSpec spec = user_spec(config);
  AttainableSets sets = attainable(f.iface, f.env);
  std::vector<TrajDist> ts = build_testset(f.iface, f.env, sets, spec);
  std::vector<Axiom> axioms;
  if (config.axiom.empty())
    axioms = all_axioms();
  else
    axioms.push_back(axiom_from_string(config.axiom, ""));
  CommandResult out;
  Json reports = Json::array();
  bool refuted = false;
  for (Axiom ax : axioms) {
    AxiomReport<Trajectory> r = check_axiom(rel, ax, ts, spec);
    refuted = refuted || r.verdict == AxiomVerdict::Refuted;
    reports.push_back(json_axiom_report(r, f.iface));
  }
  out.result["testset_size"] = ts.size();
  out.result["axioms"] = std::move(reports);
  if (refuted) out.exit_code = 2;
  return out;
}

CommandResult cmd_check_mfa(const RunConfig&, const DppFile& f) {
  MfaReport report = check_markov_feature(f.iface, f.env, need_feature_map(f));
  CommandResult out;
  out.result = json_mfa(report, f.iface);
  if (report.verdict == MfaVerdict::Violated) out.exit_code = 2;
  return out;
}

CommandResult cmd_feature_exists(const RunConfig&, const DppFile& f) {
  const TrajRelation& rel = need_relation(f);
  const FeatureMap& phi = need_feature_map(f);
  PlanResult plan = plan_backward(f.iface, f.env, rel);
  OptimalActionSets sets = optimal_action_sets(f.iface, f.env, rel, plan.policy);
  FeaturePolicyResult res = feature_policy_exists(f.iface, f.env, phi, sets);
  CommandResult out;
  out.result["exists"] = res.exists;
  out.result["policy"] =
      res.policy ? json_policy(*res.policy, f.iface) : Json(nullptr);
  if (res.exists) {
    out.result["witness"] = nullptr;
  } else {
    Json w;
    w["level"] = res.witness_level;
    w["feature"] = res.witness_feature;
    Json cls = Json::array();
    for (const History& h : res.witness_class)
      cls.push_back(history_key(h, f.iface));
    w["class"] = std::move(cls);
    out.result["witness"] = std::move(w);
    out.exit_code = 2;
  }
  Json tables = Json::object();
  for (const auto& [h, acts] : sets.table) {
    Json names = Json::array();
    for (ActId a : acts) names.push_back(f.iface.action_name(a));
    tables[history_key(h, f.iface)] = std::move(names);
  }
  out.result["optimal_action_sets"] = std::move(tables);
  return out;
}

CommandResult cmd_plan_frequency(const RunConfig&, const DppFile& f) {
  if (!f.circ_relation)
    throw ParseError("/preference",
                     "this command needs a frequency_embedded preference");
  FrequencyPlanResult res = plan_frequency(f.iface, f.env, *f.circ_relation,
                                           need_feature_map(f), need_gamma(f));
  CommandResult out;
  out.result["policy"] = json_policy(res.policy, f.iface);
  out.result["certificates"] = json_certificates(res.certificates, f.iface);
  out.result["mfa"] = json_mfa(res.mfa, f.iface);
  out.result["note"] = res.note;
  return out;
}

CommandResult cmd_fit_utility(const RunConfig& config, const DppFile& f) {
  const TrajRelation& rel = need_relation(f);
  AttainableSets sets = attainable(f.iface, f.env);
  TrajectoryFit fit = fit_utility(rel, sets.trajectories(), user_spec(config));
  CommandResult out;
  out.result = json_trajectory_fit(fit, f.iface);
  if (fit.verdict != FitVerdict::Representable) out.exit_code = 2;
  return out;
}

CommandResult cmd_fit_feature_reward(const RunConfig& config, const DppFile& f) {
  const TrajRelation& rel = need_relation(f);
  const FeatureMap& phi = need_feature_map(f);
  AttainableSets sets = attainable(f.iface, f.env);
  FeatureFit fit = fit_feature_reward(rel, phi, need_gamma(f),
                                      sets.trajectories(), user_spec(config));
  CommandResult out;
  out.result = json_feature_fit(fit, phi, f.iface);
  if (fit.verdict != FitVerdict::Representable) out.exit_code = 2;
  return out;
}

// ---- repro cases (constructed in code, never from data files) ----

struct AxiomBattery {
  std::vector<AxiomReport<Trajectory>> reports;
  Json json = Json::array();

  const AxiomReport<Trajectory>& at(Axiom ax) const {
    for (const auto& r : reports)
      if (r.axiom == ax) return r;
    throw Error("axiom battery is missing a report");
  }
  bool passed(Axiom ax) const {
    return at(ax).verdict == AxiomVerdict::PassedOnTestset;
  }
};

AxiomBattery run_axioms(const TrajRelation& rel, const std::vector<TrajDist>& ts,
                        const TestsetSpec& spec, const Interface& iface) {
  AxiomBattery battery;
  for (Axiom ax : all_axioms()) {
    battery.reports.push_back(check_axiom(rel, ax, ts, spec));
    battery.json.push_back(json_axiom_report(battery.reports.back(), iface));
  }
  return battery;
}

TestsetSpec repro_spec(const RunConfig& config) {
  // Dirac + pairwise-mixture testset only: exhaustive tuple enumeration on the
  // built-in instances stays within the budget with no random padding.
  TestsetSpec spec;
  spec.seed = config.seed;
  spec.random_count = 0;
  return spec;
}

CommandResult repro_no_optimum(const RunConfig& config) {
  CounterexampleCase cs = counterexample_case();
  BruteForceResult bf =
      brute_force_optimal(cs.iface, cs.env, cs.relation, config.limit_policies);

  bool pivot_witness = false;
  for (const BruteForceEntry& e : bf.entries)
    if (e.refuted_at && *e.refuted_at == cs.pivot && e.values &&
        e.values->first == "0/1" && e.values->second == "1/1")
      pivot_witness = true;

  bool all_refuted = bf.optimal_indices.empty();
  for (const BruteForceEntry& e : bf.entries)
    all_refuted = all_refuted && e.refuted_at.has_value();

  CommandResult out;
  out.result["construction"] =
      "two observations, two actions, horizon 2, uniform transitions; the "
      "performance metric flips sign outside the cylinder of one level-1 "
      "history, so improving on that history's continuation always degrades "
      "another attainable history";
  out.result["pivot_history"] = history_key(cs.pivot, cs.iface);
  out.result["witness_values"] =
      pivot_witness ? Json({"0/1", "1/1"}) : Json(nullptr);
  Json conclusions = Json::array();
  auto conclude = [&](const std::string& claim, bool holds) {
    Json c;
    c["claim"] = claim;
    c["holds"] = holds;
    conclusions.push_back(std::move(c));
  };
  conclude("every enumerated deterministic policy is refuted", all_refuted);
  conclude("32 deterministic policies were enumerated", bf.entries.size() == 32);
  conclude(
      "a policy attains performance 0 at the pivot history while its "
      "competitor attains 1",
      pivot_witness);
  Json table = json_brute_force(bf, cs.iface);
  for (auto& [k, v] : table.items()) out.result[k] = std::move(v);
  out.result["conclusions"] = std::move(conclusions);
  out.exit_code = bf.optimal_indices.empty() ? 2 : 0;
  return out;
}

CommandResult repro_risk(const RunConfig& config) {
  RiskCase rc = risk_case();
  TestsetSpec spec = repro_spec(config);
  AttainableSets sets = attainable(rc.iface, rc.env);
  std::vector<TrajDist> ts = build_testset(rc.iface, rc.env, sets, spec);
  AxiomBattery battery = run_axioms(rc.relation, ts, spec, rc.iface);

  const AxiomReport<Trajectory>& conv = battery.at(Axiom::Convexity);
  bool witness_form = false;
  if (conv.witness && conv.witness->dists.size() == 3) {
    auto dirac_on = [](const TrajDist& d, auto&& pred) {
      return d.support_size() == 1 && pred(d.entries().front().first);
    };
    auto in_event = [&](const Trajectory& w) { return rc.event.count(w) > 0; };
    auto event_free = [&](const Trajectory& w) { return rc.event.count(w) == 0; };
    witness_form = dirac_on(conv.witness->dists[0], event_free) &&
                   dirac_on(conv.witness->dists[1], event_free) &&
                   dirac_on(conv.witness->dists[2], in_event);
  }

  PlanResult plan = plan_backward(rc.iface, rc.env, rc.relation);
  OptimalityVerdict verdict =
      verify_optimal(rc.iface, rc.env, rc.relation, plan.policy,
                     /*global=*/true, config.limit_policies);
  TrajectoryFit fit = fit_utility(rc.relation, sets.trajectories(), spec);

  CommandResult out;
  out.result["construction"] =
      "single observation, two actions, horizon 2; outcomes carry utilities, "
      "one trajectory is a designated event, and any distribution touching "
      "the event ranks strictly below every event-free one, the more so the "
      "larger its event mass";
  out.result["testset_size"] = ts.size();
  out.result["axioms"] = battery.json;
  out.result["policy"] = json_policy(plan.policy, rc.iface);
  out.result["verify"] = json_verify(verdict, rc.iface);
  out.result["fit"] = json_trajectory_fit(fit, rc.iface);

  bool all = true;
  Json conclusions = Json::array();
  auto conclude = [&](const std::string& claim, bool holds) {
    all = all && holds;
    Json c;
    c["claim"] = claim;
    c["holds"] = holds;
    conclusions.push_back(std::move(c));
  };
  conclude("totality holds on the testset", battery.passed(Axiom::Totality));
  conclude("transitivity holds on the testset", battery.passed(Axiom::Transitivity));
  conclude("consistency holds on the testset", battery.passed(Axiom::Consistency));
  conclude("convexity is refuted", !battery.passed(Axiom::Convexity));
  conclude("the convexity witness mixes two event-free outcomes with the event outcome",
           witness_form);
  conclude("interpolation is refuted", !battery.passed(Axiom::Interpolation));
  conclude("backward induction yields a policy that verifies optimal",
           verdict.verdict == Optimality::Optimal);
  conclude("no linear utility reproduces the relation on the testset",
           fit.verdict == FitVerdict::RefutedOnTestset);
  out.result["conclusions"] = std::move(conclusions);
  out.exit_code = all ? 0 : 2;
  return out;
}

CommandResult repro_lexicographic(const RunConfig& config) {
  LexicographicCase lc = lexicographic_case();
  TestsetSpec spec = repro_spec(config);
  AttainableSets sets = attainable(lc.iface, lc.env);
  std::vector<TrajDist> ts = build_testset(lc.iface, lc.env, sets, spec);
  AxiomBattery battery = run_axioms(lc.relation, ts, spec, lc.iface);

  PlanResult plan = plan_backward(lc.iface, lc.env, lc.relation);
  OptimalityVerdict verdict =
      verify_optimal(lc.iface, lc.env, lc.relation, plan.policy,
                     /*global=*/true, config.limit_policies);
  TrajectoryFit fit = fit_utility(lc.relation, sets.trajectories(), spec);

  CommandResult out;
  out.result["construction"] =
      "single observation, two actions, horizon 2; distributions compare by a "
      "primary expected utility, with a secondary expected utility breaking "
      "exact ties";
  out.result["testset_size"] = ts.size();
  out.result["axioms"] = battery.json;
  out.result["policy"] = json_policy(plan.policy, lc.iface);
  out.result["verify"] = json_verify(verdict, lc.iface);
  out.result["fit"] = json_trajectory_fit(fit, lc.iface);

  bool all = true;
  Json conclusions = Json::array();
  auto conclude = [&](const std::string& claim, bool holds) {
    all = all && holds;
    Json c;
    c["claim"] = claim;
    c["holds"] = holds;
    conclusions.push_back(std::move(c));
  };
  conclude("totality holds on the testset", battery.passed(Axiom::Totality));
  conclude("transitivity holds on the testset", battery.passed(Axiom::Transitivity));
  conclude("consistency holds on the testset", battery.passed(Axiom::Consistency));
  conclude("convexity holds on the testset", battery.passed(Axiom::Convexity));
  conclude("interpolation is refuted", !battery.passed(Axiom::Interpolation));
  conclude("backward induction yields a policy that verifies optimal",
           verdict.verdict == Optimality::Optimal);
  conclude("no linear utility reproduces the relation on the testset",
           fit.verdict == FitVerdict::RefutedOnTestset);
  out.result["conclusions"] = std::move(conclusions);
  out.exit_code = all ? 0 : 2;
  return out;
}

CommandResult cmd_repro(const RunConfig& config) {
  if (config.case_name == "no-optimum") return repro_no_optimum(config);
  if (config.case_name == "risk") return repro_risk(config);
  if (config.case_name == "lexicographic") return repro_lexicographic(config);
  throw ParseError("", "unknown repro case \"" + config.case_name +
                           "\" (expected no-optimum, risk, or lexicographic)");
}

CommandResult dispatch(const RunConfig& config) {
  if (config.command == "repro") return cmd_repro(config);
  if (config.input.empty())
    throw ParseError("", "this command requires --input");
  DppFile f = load_dpp(config.input);
  if (config.command == "plan") return cmd_plan(config, f);
  if (config.command == "verify") return cmd_verify(config, f);
  if (config.command == "brute-force") return cmd_brute_force(config, f);
  if (config.command == "check-axioms") return cmd_check_axioms(config, f);
  if (config.command == "check-mfa") return cmd_check_mfa(config, f);
  if (config.command == "feature-exists") return cmd_feature_exists(config, f);
  if (config.command == "plan-frequency") return cmd_plan_frequency(config, f);
  if (config.command == "fit-utility") return cmd_fit_utility(config, f);
  if (config.command == "fit-feature-reward")
    return cmd_fit_feature_reward(config, f);
  throw ParseError("", "unknown command \"" + config.command + "\"");
}

// ---- schema and its native evaluator ----

bool schema_match(const Json& schema, const Json& v) {
  if (schema.contains("const") && v != schema["const"]) return false;
  if (schema.contains("enum")) {
    bool any = false;
    for (const Json& e : schema["enum"])
      if (v == e) {
        any = true;
        break;
      }
    if (!any) return false;
  }
  if (schema.contains("type")) {
    const std::string t = schema["type"].get<std::string>();
    if (t == "object" && !v.is_object()) return false;
    if (t == "array" && !v.is_array()) return false;
    if (t == "string" && !v.is_string()) return false;
    if (t == "boolean" && !v.is_boolean()) return false;
    if (t == "integer" && !v.is_number_integer()) return false;
  }
  if (schema.contains("minimum")) {
    if (!v.is_number_integer()) return false;
    if (!v.is_number_unsigned() &&
        v.get<long long>() < schema["minimum"].get<long long>())
      return false;
  }
  if (schema.contains("required")) {
    if (!v.is_object()) return false;
    for (const Json& r : schema["required"])
      if (!v.contains(r.get<std::string>())) return false;
  }
  if (schema.contains("properties") && v.is_object()) {
    const Json& props = schema["properties"];
    bool closed = schema.contains("additionalProperties") &&
                  schema["additionalProperties"] == Json(false);
    for (auto it = v.begin(); it != v.end(); ++it) {
      if (props.contains(it.key())) {
        if (!schema_match(props[it.key()], it.value())) return false;
      } else if (closed) {
        return false;
      }
    }
  }
  if (schema.contains("items") && v.is_array()) {
    for (const Json& e : v)
      if (!schema_match(schema["items"], e)) return false;
  }
  if (schema.contains("oneOf")) {
    int hits = 0;
    for (const Json& sub : schema["oneOf"])
      if (schema_match(sub, v)) ++hits;
    if (hits != 1) return false;
  }
  return true;
}

}  // namespace

Json report_schema() {
  Json error_schema;
  error_schema["type"] = "object";
  error_schema["additionalProperties"] = false;
  error_schema["required"] = {"kind", "message"};
  Json eprops;
  eprops["kind"] = {{"enum", {"input", "relation-not-total", "limit", "internal"}}};
  eprops["message"] = {{"type", "string"}};
  eprops["pointer"] = {{"type", "string"}};
  eprops["witness"] = {{"type", "string"}};
  eprops["limit"] = {{"type", "integer"}};
  eprops["required"] = {{"type", "integer"}};
  error_schema["properties"] = std::move(eprops);

  Json schema;
  schema["$schema"] = "http://json-schema.org/draft-07/schema#";
  schema["title"] = "dppctl report";
  schema["type"] = "object";
  schema["additionalProperties"] = false;
  schema["required"] = {"tool", "command", "input", "seed", "exercises"};
  Json props;
  props["tool"] = {{"const", "dppctl"}};
  props["command"] = {
      {"enum", {"plan", "verify", "brute-force", "check-axioms", "check-mfa",
                "feature-exists", "plan-frequency", "fit-utility",
                "fit-feature-reward", "repro"}}};
  props["input"] = {{"type", "string"}};
  props["case"] = {{"enum", {"no-optimum", "risk", "lexicographic"}}};
  props["seed"] = {{"type", "integer"}, {"minimum", 0}};
  props["exercises"] = {{"type", "string"}};
  props["result"] = {{"type", "object"}};
  props["error"] = std::move(error_schema);
  schema["properties"] = std::move(props);
  schema["oneOf"] = {Json{{"required", {"result"}}},
                     Json{{"required", {"error"}}}};
  return schema;
}

bool validate_report(const Json& report) {
  return schema_match(report_schema(), report);
}

std::string report_bytes(const Json& report) { return report.dump(2) + "\n"; }

RunOutcome run(const RunConfig& config) {
  Json report;
  report["tool"] = "dppctl";
  report["command"] = config.command;
  report["input"] = config.input;
  if (config.command == "repro" && is_repro_case(config.case_name))
    report["case"] = config.case_name;
  report["seed"] = config.seed;
  report["exercises"] = exercises_for(config.command);

  int code = 0;
  try {
    CommandResult r = dispatch(config);
    report["result"] = std::move(r.result);
    code = r.exit_code;
  } catch (const ParseError& e) {
    code = 4;
    Json err;
    err["kind"] = "input";
    err["message"] = e.what();
    err["pointer"] = e.pointer;
    report["error"] = std::move(err);
  } catch (const NotTotalError& e) {
    code = 3;
    Json err;
    err["kind"] = "relation-not-total";
    err["message"] = e.what();
    err["witness"] = e.witness;
    report["error"] = std::move(err);
  } catch (const LimitError& e) {
    code = 5;
    Json err;
    err["kind"] = "limit";
    err["message"] = e.what();
    err["limit"] = e.limit;
    err["required"] = e.required;
    report["error"] = std::move(err);
  } catch (const ContractError& e) {
    code = 4;
    Json err;
    err["kind"] = "input";
    err["message"] = e.what();
    err["pointer"] = "";
    report["error"] = std::move(err);
  } catch (const Error& e) {
    code = 4;
    Json err;
    err["kind"] = "internal";
    err["message"] = e.what();
    report["error"] = std::move(err);
  }

  RunOutcome out{code, std::move(report)};
  // Reports for unknown commands cannot validate (the schema pins the command
  // vocabulary); the CLI front end never dispatches one.
  if (!exercises_for(config.command).empty() && !validate_report(out.report)) {
    // Internal guard: a malformed report is a bug, reported as such.
    out.exit_code = 4;
    out.report.erase("result");
    Json err;
    err["kind"] = "internal";
    err["message"] = "emitted report failed schema validation";
    out.report["error"] = err;
  }
  return out;
}

}  // namespace dpp
