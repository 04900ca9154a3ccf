#include "dpp/planner.hpp"

#include <algorithm>

#include "dpp/errors.hpp"

namespace dpp {
namespace {

// Outcome distribution of pi at every attainable history, bottom-up.
std::map<History, TrajDist> policy_outcomes(const Environment& env, const Policy& pi,
                                            const AttainableSets& sets) {
  std::map<History, TrajDist> memo;
  for (const History& w : sets.trajectories()) memo.emplace(w, TrajDist::dirac(w));
  for (std::size_t t = sets.per_level.size() - 1; t-- > 0;) {
    for (const History& h : sets.level(t)) {
      const auto& acts = pi.action_dist(h).entries();
      std::vector<TrajDist> parts;
      parts.reserve(acts.size());
      for (const auto& e : acts) {
        const Dist<ObsId>& row = env.transition(h, e.first);
        std::vector<std::pair<Rational, const TrajDist*>> inner;
        for (const auto& [o, p] : row.entries())
          inner.push_back({p, &memo.at(h.extended(e.first, o))});
        parts.push_back(TrajDist::combine(inner));
      }
      std::vector<std::pair<Rational, const TrajDist*>> terms;
      for (std::size_t i = 0; i < acts.size(); ++i)
        terms.push_back({acts[i].second, &parts[i]});
      memo.emplace(h, TrajDist::combine(terms));
    }
  }
  return memo;
}

// Successor outcome at h after forcing action a, from a bottom-up memo.
TrajDist after_from(const Environment& env, const std::map<History, TrajDist>& memo,
                    const History& h, ActId a) {
  const Dist<ObsId>& row = env.transition(h, a);
  std::vector<std::pair<Rational, const TrajDist*>> terms;
  for (const auto& [o, p] : row.entries())
    terms.push_back({p, &memo.at(h.extended(a, o))});
  return TrajDist::combine(terms);
}

std::string at_history(const History& h, const Interface& iface) {
  return "history " + history_key(h, iface);
}

// All outcome distributions achievable at each attainable history by some
// deterministic policy, with the subtree choices that realize them.
struct Achievable {
  TrajDist dist;
  std::map<History, ActId> choices;
};

std::map<History, std::vector<Achievable>>
achievable_outcomes(const Interface& iface, const Environment& env,
                    const AttainableSets& sets) {
  // Guards desk-scale use; brute force is capped by decision points anyway.
  constexpr std::size_t kMaxPerHistory = 1 << 16;
  std::map<History, std::vector<Achievable>> ach;
  for (const History& w : sets.trajectories())
    ach.emplace(w, std::vector<Achievable>{{TrajDist::dirac(w), {}}});
  for (std::size_t t = sets.per_level.size() - 1; t-- > 0;) {
    for (const History& h : sets.level(t)) {
      std::vector<Achievable> out;
      for (ActId a = 0; a < iface.num_actions(); ++a) {
        const Dist<ObsId>& row = env.transition(h, a);
        std::vector<const std::vector<Achievable>*> child_lists;
        std::vector<History> children;
        for (const auto& [o, p] : row.entries()) {
          children.push_back(h.extended(a, o));
          child_lists.push_back(&ach.at(children.back()));
        }
        std::vector<std::size_t> pick(children.size(), 0);
        while (true) {
          std::vector<std::pair<Rational, const TrajDist*>> terms;
          std::map<History, ActId> choices;
          choices.emplace(h, a);
          for (std::size_t c = 0; c < children.size(); ++c) {
            const Achievable& part = (*child_lists[c])[pick[c]];
            terms.push_back({row.entries()[c].second, &part.dist});
            choices.insert(part.choices.begin(), part.choices.end());
          }
          out.push_back({TrajDist::combine(terms), std::move(choices)});
          if (out.size() > kMaxPerHistory)
            throw LimitError("achievable-outcome enumeration too large",
                             static_cast<long long>(kMaxPerHistory),
                             static_cast<long long>(out.size()));
          // Odometer over child picks, last child fastest.
          std::size_t c = children.size();
          while (c > 0) {
            --c;
            if (++pick[c] < child_lists[c]->size()) break;
            pick[c] = 0;
            if (c == 0) goto action_done;
          }
          if (children.empty()) break;
        }
      action_done:;
      }
      ach.emplace(h, std::move(out));
    }
  }
  return ach;
}

long long count_or_throw(const AttainableSets& sets, long long limit) {
  long long n = static_cast<long long>(sets.decision_histories().size());
  if (n > limit)
    throw LimitError("too many attainable decision histories to enumerate policies",
                     limit, n);
  return n;
}

std::optional<std::pair<std::string, std::string>>
value_pair(const TrajRelation& rel, const TrajDist& mine, const TrajDist& theirs) {
  if (!rel.value()) return std::nullopt;
  return std::make_pair(format_rational((*rel.value())(mine)),
                        format_rational((*rel.value())(theirs)));
}

}  // namespace

std::string to_string(Optimality v) {
  switch (v) {
    case Optimality::Optimal: return "optimal";
    case Optimality::Refuted: return "refuted";
    case Optimality::RelationNotTotal: return "relation-not-total";
  }
  return "?";
}

PlanResult plan_backward(const Interface& iface, const Environment& env,
                         const TrajRelation& rel) {
  AttainableSets sets = attainable(iface, env);
  std::map<History, TrajDist> memo;
  for (const History& w : sets.trajectories()) memo.emplace(w, TrajDist::dirac(w));
  std::map<History, ActId> choice;
  std::map<History, LubCertificate> certs;
  for (std::size_t t = sets.per_level.size() - 1; t-- > 0;) {
    for (const History& h : sets.level(t)) {
      std::vector<TrajDist> per_action;
      per_action.reserve(iface.num_actions());
      for (ActId a = 0; a < iface.num_actions(); ++a)
        per_action.push_back(after_from(env, memo, h, a));
      LubCertificate cert = select_lub(rel, per_action, at_history(h, iface));
      choice.emplace(h, cert.chosen);
      memo.emplace(h, std::move(per_action[cert.chosen]));
      certs.emplace(h, std::move(cert));
    }
  }
  return {Policy::deterministic(choice, 0), std::move(certs)};
}

OptimalityVerdict verify_optimal(const Interface& iface, const Environment& env,
                                 const TrajRelation& rel, const Policy& pi,
                                 bool global, long long limit) {
  AttainableSets sets = attainable(iface, env);
  std::map<History, TrajDist> memo = policy_outcomes(env, pi, sets);
  for (const History& h : sets.decision_histories()) {
    const TrajDist& mine = memo.at(h);
    for (ActId a = 0; a < iface.num_actions(); ++a) {
      TrajDist dev = after_from(env, memo, h, a);
      CompareResult c = rel.compare(mine, dev);
      if (c == CompareResult::Incomparable)
        return {Optimality::RelationNotTotal, VerifyWitness{h, a, {}, c}};
      if (c == CompareResult::Less)
        return {Optimality::Refuted, VerifyWitness{h, a, {}, c}};
    }
  }
  if (!global) return {Optimality::Optimal, std::nullopt};

  count_or_throw(sets, limit);
  std::map<History, std::vector<Achievable>> ach = achievable_outcomes(iface, env, sets);
  std::map<History, ActId> base;
  if (pi.is_deterministic())
    for (const History& h : sets.decision_histories()) base.emplace(h, pi.action_at(h));
  for (const History& h : sets.decision_histories()) {
    const TrajDist& mine = memo.at(h);
    for (const Achievable& cand : ach.at(h)) {
      CompareResult c = rel.compare(mine, cand.dist);
      if (c == CompareResult::Incomparable) {
        VerifyWitness w{h, std::nullopt, cand.choices, c};
        return {Optimality::RelationNotTotal, std::move(w)};
      }
      if (c == CompareResult::Less) {
        std::map<History, ActId> competitor = base;
        for (const auto& [hh, aa] : cand.choices) competitor[hh] = aa;
        VerifyWitness w{h, std::nullopt, std::move(competitor), c};
        return {Optimality::Refuted, std::move(w)};
      }
    }
  }
  return {Optimality::Optimal, std::nullopt};
}

BruteForceResult brute_force_optimal(const Interface& iface, const Environment& env,
                                     const TrajRelation& rel, long long limit) {
  AttainableSets sets = attainable(iface, env);
  long long n_dec = count_or_throw(sets, limit);
  std::vector<History> decisions = sets.decision_histories();
  std::map<History, std::vector<Achievable>> ach = achievable_outcomes(iface, env, sets);

  BruteForceResult result;
  std::vector<ActId> pick(static_cast<std::size_t>(n_dec), 0);
  while (true) {
    std::map<History, ActId> choices;
    for (std::size_t i = 0; i < decisions.size(); ++i)
      choices.emplace(decisions[i], pick[i]);
    Policy pi = Policy::deterministic(choices, 0);
    std::map<History, TrajDist> memo = policy_outcomes(env, pi, sets);

    BruteForceEntry entry;
    entry.choices = choices;
    for (const History& h : decisions) {
      const TrajDist& mine = memo.at(h);
      for (const Achievable& cand : ach.at(h)) {
        CompareResult c = rel.compare(mine, cand.dist);
        if (c == CompareResult::Incomparable)
          throw NotTotalError("comparison answered Incomparable during enumeration",
                              "history " + history_key(h, iface));
        if (c == CompareResult::Less) {
          entry.refuted_at = h;
          entry.competitor = choices;
          for (const auto& [hh, aa] : cand.choices) entry.competitor[hh] = aa;
          entry.values = value_pair(rel, mine, cand.dist);
          break;
        }
      }
      if (entry.refuted_at) break;
    }
    if (!entry.refuted_at) result.optimal_indices.push_back(result.entries.size());
    result.entries.push_back(std::move(entry));

    std::size_t i = pick.size();
    bool done = true;
    while (i > 0) {
      --i;
      if (++pick[i] < iface.num_actions()) { done = false; break; }
      pick[i] = 0;
    }
    if (done) break;
  }
  if (result.optimal_indices.empty())
    result.note = "no deterministic optimum among the enumerated policies";
  return result;
}

OptimalActionSets optimal_action_sets(const Interface& iface, const Environment& env,
                                      const TrajRelation& rel, const Policy& pi) {
  OptimalityVerdict v = verify_optimal(iface, env, rel, pi);
  if (v.verdict != Optimality::Optimal) {
    std::string at = v.witness ? history_key(v.witness->history, iface) : "?";
    throw ContractError("policy failed the optimality check at " + at +
                        "; optimal-action sets require a verified policy");
  }
  AttainableSets sets = attainable(iface, env);
  std::map<History, TrajDist> memo = policy_outcomes(env, pi, sets);
  OptimalActionSets out;
  for (const History& h : sets.decision_histories()) {
    std::vector<TrajDist> per_action;
    per_action.reserve(iface.num_actions());
    for (ActId a = 0; a < iface.num_actions(); ++a)
      per_action.push_back(after_from(env, memo, h, a));
    LubCertificate cert = select_lub(rel, per_action, at_history(h, iface));
    std::vector<ActId> best;
    for (std::size_t a = 0; a < cert.table.size(); ++a)
      if (cert.table[a] == CompareResult::Equivalent) best.push_back(static_cast<ActId>(a));
    out.table.emplace(h, std::move(best));
  }
  return out;
}

ValueIterationResult value_iteration(const Interface& iface, const Environment& env,
                                     const std::map<History, Rational>& r) {
  AttainableSets sets = attainable(iface, env);
  auto reward_at = [&](const History& h) -> const Rational& {
    auto it = r.find(h);
    if (it == r.end())
      throw ContractError("reward undefined at history " + history_key(h, iface));
    return it->second;
  };
  ValueIterationResult out;
  for (const History& w : sets.trajectories()) out.values.emplace(w, reward_at(w));
  for (std::size_t t = sets.per_level.size() - 1; t-- > 0;) {
    for (const History& h : sets.level(t)) {
      std::vector<Rational> q(iface.num_actions());
      for (ActId a = 0; a < iface.num_actions(); ++a) {
        Rational acc = 0;
        for (const auto& [o, p] : env.transition(h, a).entries())
          acc += p * out.values.at(h.extended(a, o));
        q[a] = acc;
      }
      Rational best = *std::max_element(q.begin(), q.end());
      std::vector<ActId> greedy;
      for (ActId a = 0; a < iface.num_actions(); ++a)
        if (q[a] == best) greedy.push_back(a);
      out.values.emplace(h, reward_at(h) + best);
      out.greedy.emplace(h, std::move(greedy));
    }
  }
  return out;
}

std::map<History, Rational> policy_value(const Interface& iface, const Environment& env,
                                         const Policy& pi,
                                         const std::map<History, Rational>& r) {
  AttainableSets sets = attainable(iface, env);
  auto reward_at = [&](const History& h) -> const Rational& {
    auto it = r.find(h);
    if (it == r.end())
      throw ContractError("reward undefined at history " + history_key(h, iface));
    return it->second;
  };
  std::map<History, Rational> values;
  for (const History& w : sets.trajectories()) values.emplace(w, reward_at(w));
  for (std::size_t t = sets.per_level.size() - 1; t-- > 0;) {
    for (const History& h : sets.level(t)) {
      Rational acc = 0;
      for (const auto& [a, q] : pi.action_dist(h).entries())
        for (const auto& [o, p] : env.transition(h, a).entries())
          acc += q * p * values.at(h.extended(a, o));
      values.emplace(h, reward_at(h) + acc);
    }
  }
  return values;
}

}  // namespace dpp
