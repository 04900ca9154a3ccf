#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dpp/errors.hpp"
#include "dpp/outcome.hpp"
#include "dpp/relation.hpp"

namespace dpp {

// Per-history certificate of the planner's choice: table[a] compares the
// outcome distribution after action a against the one after the chosen action,
// so chosen is a least upper bound iff every entry is Less or Equivalent, and
// the optimal-action set is exactly {a : table[a] == Equivalent}.
struct LubCertificate {
  ActId chosen = 0;
  std::vector<CompareResult> table;

  friend bool operator==(const LubCertificate&, const LubCertificate&) = default;
};

struct PlanResult {
  Policy policy;
  std::map<History, LubCertificate> lub_certificates;

  friend bool operator==(const PlanResult&, const PlanResult&) = default;
};

enum class Optimality { Optimal, Refuted, RelationNotTotal };

std::string to_string(Optimality v);

// Witness for a non-optimal verdict. `action` is set when the competitor is a
// one-action deviation found by the local check; `competitor` is the full
// deterministic choice table when the global check found it.
struct VerifyWitness {
  History history;
  std::optional<ActId> action;
  std::map<History, ActId> competitor;
  CompareResult observed = CompareResult::Incomparable;
};

struct OptimalityVerdict {
  Optimality verdict = Optimality::Optimal;
  std::optional<VerifyWitness> witness;
};

struct OptimalActionSets {
  std::map<History, std::vector<ActId>> table;
};

struct BruteForceEntry {
  std::map<History, ActId> choices;
  // Empty optional: the policy is optimal among all enumerated competitors.
  std::optional<History> refuted_at;
  std::map<History, ActId> competitor;
  // Relation values of (this policy's outcome, competitor's outcome) at the
  // refuting history, when the relation exposes a value functional.
  std::optional<std::pair<std::string, std::string>> values;
};

struct BruteForceResult {
  std::vector<BruteForceEntry> entries;
  std::vector<std::size_t> optimal_indices;
  std::string note;
};

struct ValueIterationResult {
  std::map<History, Rational> values;
  std::map<History, std::vector<ActId>> greedy;
};

// First index (canonical order) whose distribution is an upper bound of all
// candidates under rel, with the comparison table vs the winner. Running max
// first; a verification pass catches intransitive winners and falls back to a
// full pairwise scan. Throws NotTotalError (witness mentions `where`) on an
// Incomparable answer or when no maximum exists.
template <class X>
LubCertificate select_lub(const Relation<X>& rel,
                          const std::vector<Dist<X>>& candidates,
                          const std::string& where) {
  std::size_t n = candidates.size();
  std::size_t best = 0;
  auto incomparable = [&](std::size_t i, std::size_t j) -> NotTotalError {
    return NotTotalError("comparison answered Incomparable while planning",
                         where + ", candidates " + std::to_string(i) + " vs " +
                             std::to_string(j));
  };
  for (std::size_t i = 1; i < n; ++i) {
    CompareResult c = rel.compare(candidates[i], candidates[best]);
    if (c == CompareResult::Incomparable) throw incomparable(i, best);
    if (c == CompareResult::Greater) best = i;
  }
  auto table_for = [&](std::size_t winner) {
    LubCertificate cert;
    cert.chosen = static_cast<ActId>(winner);
    cert.table.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      cert.table[i] = rel.compare(candidates[i], candidates[winner]);
      if (cert.table[i] == CompareResult::Incomparable) throw incomparable(i, winner);
    }
    return cert;
  };
  auto clean = [](const LubCertificate& cert) {
    for (CompareResult c : cert.table)
      if (c == CompareResult::Greater) return false;
    return true;
  };
  LubCertificate cert = table_for(best);
  if (clean(cert)) return cert;
  // Intransitive answers: scan every candidate for a genuine maximum.
  for (std::size_t i = 0; i < n; ++i) {
    LubCertificate candidate = table_for(i);
    if (clean(candidate)) return candidate;
  }
  throw NotTotalError("successor outcomes have no maximum", where);
}

// Backward induction: for each attainable decision history, pick the first
// action (canonical order) whose successor outcome distribution is a least
// upper bound of all successors. Unattainable histories get fixed action 0.
// Throws NotTotalError on an Incomparable answer or when no maximum exists.
PlanResult plan_backward(const Interface& iface, const Environment& env,
                         const TrajRelation& rel);

// Two-stage optimality check. Stage 1 (always): at every attainable decision
// history, following pi is at least as good as deviating by one action first.
// Stage 2 (global = true): compare against every outcome achievable by any
// deterministic policy at every attainable history; refuses via LimitError when
// the instance has more than `limit` attainable decision histories.
OptimalityVerdict verify_optimal(const Interface& iface, const Environment& env,
                                 const TrajRelation& rel, const Policy& pi,
                                 bool global = false, long long limit = 20);

// Independent oracle: enumerates every deterministic policy over the attainable
// decision histories and keeps those whose outcome distribution at every
// attainable history is an upper bound of every competitor's. Each refuted
// entry carries the first refuting (history, competitor) in canonical order.
BruteForceResult brute_force_optimal(const Interface& iface, const Environment& env,
                                     const TrajRelation& rel, long long limit = 20);

// Optimal-action table derived from a verified-optimal policy: the actions
// whose successor outcomes tie with the best one. ContractError if pi fails
// the local optimality check (the sets would depend on pi otherwise).
OptimalActionSets optimal_action_sets(const Interface& iface, const Environment& env,
                                      const TrajRelation& rel, const Policy& pi);

// Exact value iteration for cumulative history rewards:
//   V(h_T) = r(h_T);  V(h_t) = r(h_t) + max_a sum_o rho(o | h_t, a) V(h_t.(a,o)).
// `values` covers every attainable history, `greedy` the maximizing action sets
// at decision histories. r must define every attainable history it visits.
ValueIterationResult value_iteration(const Interface& iface, const Environment& env,
                                     const std::map<History, Rational>& r);

// Expected cumulative reward of pi from each attainable history.
std::map<History, Rational> policy_value(const Interface& iface, const Environment& env,
                                         const Policy& pi,
                                         const std::map<History, Rational>& r);

}  // namespace dpp
