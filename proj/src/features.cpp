#include "dpp/features.hpp"

#include <algorithm>
#include <iterator>
#include <memory>
#include <set>

#include "dpp/errors.hpp"

namespace dpp {

FeatureMap k_window_feature(int k, const Interface& iface) {
  if (k < 1 || k >= iface.horizon())
    throw ContractError("window size must satisfy 1 <= k < horizon");
  auto index = std::make_shared<std::map<History, FeatureId>>();
  FeatureMap fm;
  fm.kind = "k_window";
  for (int l = 0; l < k; ++l)
    for (const History& h : all_histories(iface, static_cast<std::size_t>(l))) {
      index->emplace(h, static_cast<FeatureId>(fm.features.size()));
      fm.features.push_back(history_key(h, iface));
    }
  std::size_t window = static_cast<std::size_t>(k);
  fm.fn = [index, window](const History& h) -> FeatureId {
    if (h.length() < window) return index->at(h);
    History suffix(h.observation_at(h.length() - window + 1));
    for (std::size_t i = h.length() - window + 2; i <= h.length(); ++i)
      suffix.steps.emplace_back(h.action_at(i - 1), h.observation_at(i));
    return index->at(suffix);
  };
  return fm;
}

FeatureMap table_feature(const Interface& iface,
                         const std::map<History, std::string>& entries) {
  std::set<std::string> names;
  for (const auto& [h, x] : entries) names.insert(x);
  auto ids = std::make_shared<std::map<History, FeatureId>>();
  FeatureMap fm;
  fm.kind = "table";
  fm.features.assign(names.begin(), names.end());
  for (std::size_t t = 0; t <= static_cast<std::size_t>(iface.horizon()); ++t)
    for (const History& h : all_histories(iface, t)) {
      auto it = entries.find(h);
      if (it == entries.end())
        throw ContractError("feature table missing history " + history_key(h, iface));
      FeatureId x = static_cast<FeatureId>(
          std::distance(names.begin(), names.find(it->second)));
      ids->emplace(h, x);
    }
  fm.fn = [ids](const History& h) { return ids->at(h); };
  return fm;
}

GammaWeights::GammaWeights(std::vector<Rational> w) : weights(std::move(w)) {
  if (weights.empty()) throw ContractError("gamma weights must be nonempty");
  bool positive = false;
  for (const Rational& g : weights) {
    if (g < 0) throw ContractError("gamma weights must be nonnegative");
    if (g > 0) positive = true;
  }
  if (!positive) throw ContractError("gamma weights must not all be zero");
}

Rational GammaWeights::sum(std::size_t t1, std::size_t t2) const {
  if (t1 > t2 || t2 > weights.size())
    throw ContractError("gamma window out of range");
  Rational s = 0;
  for (std::size_t t = t1; t < t2; ++t) s += weights[t];
  return s;
}

FreqDist frequency(const FeatureMap& phi, const GammaWeights& gamma,
                   std::size_t t1, std::size_t t2, const TrajDist& D) {
  if (t1 > t2 || t2 > gamma.weights.size())
    throw ContractError("frequency window out of range");
  for (const auto& [w, p] : D.entries())
    if (w.length() < t2)
      throw ContractError("trajectory shorter than the frequency window");
  Rational total = gamma.sum(t1, t2);
  if (total == 0) return FreqDist{};
  std::map<FAKey, Rational> acc;
  for (std::size_t t = t1; t < t2; ++t) {
    if (gamma.weights[t] == 0) continue;
    for (const auto& [w, p] : D.entries())
      acc[FAKey{phi.at(w.prefix(t)), w.action_at(t)}] += gamma.weights[t] * p;
  }
  std::vector<Dist<FAKey>::Entry> raw;
  raw.reserve(acc.size());
  for (auto& [key, mass] : acc) raw.emplace_back(key, mass / total);
  return FreqDist{Dist<FAKey>::make(std::move(raw))};
}

TrajRelation embedded_relation(FreqRelation rel_circ, FeatureMap phi,
                               GammaWeights gamma) {
  std::size_t horizon = gamma.weights.size();
  auto freq_of = [phi, gamma, horizon](const TrajDist& d) {
    return *frequency(phi, gamma, 0, horizon, d).dist;
  };
  TrajRelation rel("frequency_embedded",
                   [rc = rel_circ, freq_of](const TrajDist& a, const TrajDist& b) {
                     return rc.compare(freq_of(a), freq_of(b));
                   });
  if (rel_circ.value()) {
    auto inner = *rel_circ.value();
    rel.set_value([inner, freq_of](const TrajDist& d) { return inner(freq_of(d)); },
                  rel_circ.linear_value());
  }
  return rel;
}

std::string to_string(MfaVerdict v) {
  return v == MfaVerdict::Holds ? "holds" : "violated";
}

MfaReport check_markov_feature(const Interface& iface, const Environment& env,
                               const FeatureMap& phi) {
  AttainableSets sets = attainable(iface, env);
  for (std::size_t t = 0; t + 1 < sets.per_level.size(); ++t) {
    std::map<FeatureId, const History*> rep;
    for (const History& h : sets.level(t)) {
      auto [it, fresh] = rep.emplace(phi.at(h), &h);
      if (fresh) continue;
      const History& r = *it->second;
      for (ActId a = 0; a < iface.num_actions(); ++a) {
        if (!(env.transition(r, a) == env.transition(h, a)))
          return {MfaVerdict::Violated, MfaWitness{r, h, a, std::nullopt, 1}};
        for (ObsId o = 0; o < iface.num_observations(); ++o)
          if (phi.at(r.extended(a, o)) != phi.at(h.extended(a, o)))
            return {MfaVerdict::Violated, MfaWitness{r, h, a, o, 2}};
      }
    }
  }
  return {MfaVerdict::Holds, std::nullopt};
}

FeaturePolicyResult feature_policy_exists(const Interface& iface,
                                          const Environment& env,
                                          const FeatureMap& phi,
                                          const OptimalActionSets& sets) {
  AttainableSets att = attainable(iface, env);
  auto actions_of = [&](const History& h) -> const std::vector<ActId>& {
    auto it = sets.table.find(h);
    if (it == sets.table.end())
      throw ContractError("optimal-action table missing history " +
                          history_key(h, iface));
    return it->second;
  };
  std::map<History, ActId> choice;
  for (std::size_t t = 0; t + 1 < att.per_level.size(); ++t) {
    std::map<FeatureId, std::vector<const History*>> classes;
    for (const History& h : att.level(t)) classes[phi.at(h)].push_back(&h);
    for (const auto& [x, members] : classes) {
      std::vector<ActId> common;
      for (ActId a = 0; a < iface.num_actions(); ++a) {
        bool everywhere = true;
        for (const History* h : members) {
          const std::vector<ActId>& opts = actions_of(*h);
          if (std::find(opts.begin(), opts.end(), a) == opts.end()) {
            everywhere = false;
            break;
          }
        }
        if (everywhere) common.push_back(a);
      }
      if (common.empty()) {
        FeaturePolicyResult out;
        out.exists = false;
        out.witness_level = t;
        out.witness_feature = phi.features.at(x);
        for (const History* h : members) out.witness_class.push_back(*h);
        return out;
      }
      for (const History* h : members) choice.emplace(*h, common.front());
    }
  }
  FeaturePolicyResult out;
  out.exists = true;
  out.policy = Policy::deterministic(choice, 0);
  return out;
}

FrequencyPlanResult plan_frequency(const Interface& iface, const Environment& env,
                                   const FreqRelation& rel_circ, const FeatureMap& phi,
                                   const GammaWeights& gamma) {
  std::size_t horizon = static_cast<std::size_t>(iface.horizon());
  if (gamma.weights.size() != horizon)
    throw ContractError("gamma length must equal the horizon");
  AttainableSets sets = attainable(iface, env);
  MfaReport mfa = check_markov_feature(iface, env, phi);

  std::vector<Rational> suffix(horizon + 1, Rational(0));
  for (std::size_t t = horizon; t-- > 0;) suffix[t] = suffix[t + 1] + gamma.weights[t];

  std::map<History, FreqDist> memo;
  for (const History& w : sets.trajectories()) memo.emplace(w, FreqDist{});
  std::map<History, ActId> choice;
  std::map<History, LubCertificate> certs;

  for (std::size_t t = horizon; t-- > 0;) {
    const std::vector<History>& level = sets.level(t);
    if (suffix[t] == 0) {
      // No remaining weight: every action is optimal everywhere on this level.
      for (const History& h : level) {
        choice.emplace(h, 0);
        certs.emplace(h, LubCertificate{0, std::vector<CompareResult>(
                                               iface.num_actions(),
                                               CompareResult::Equivalent)});
        memo.emplace(h, FreqDist{});
      }
      continue;
    }
    // Remaining-window frequencies after each action, per history.
    std::vector<std::vector<Dist<FAKey>>> after(level.size());
    for (std::size_t i = 0; i < level.size(); ++i) {
      const History& h = level[i];
      after[i].reserve(iface.num_actions());
      for (ActId a = 0; a < iface.num_actions(); ++a) {
        Dist<FAKey> head = Dist<FAKey>::dirac(FAKey{phi.at(h), a});
        std::vector<std::pair<Rational, const Dist<FAKey>*>> terms;
        terms.push_back({gamma.weights[t] / suffix[t], &head});
        if (suffix[t + 1] > 0)
          for (const auto& [o, p] : env.transition(h, a).entries())
            terms.push_back({p * suffix[t + 1] / suffix[t],
                             &memo.at(h.extended(a, o)).dist.value()});
        after[i].push_back(Dist<FAKey>::combine(terms));
      }
    }
    auto settle = [&](std::size_t i, LubCertificate cert) {
      const History& h = level[i];
      choice.emplace(h, cert.chosen);
      memo.emplace(h, FreqDist{after[i][cert.chosen]});
      certs.emplace(h, std::move(cert));
    };
    if (mfa.verdict == MfaVerdict::Holds) {
      // Tie-break per feature class so the policy is feature-based.
      std::map<FeatureId, std::vector<std::size_t>> classes;
      for (std::size_t i = 0; i < level.size(); ++i)
        classes[phi.at(level[i])].push_back(i);
      for (const auto& [x, members] : classes) {
        LubCertificate lead = select_lub(
            rel_circ, after[members.front()],
            "history " + history_key(level[members.front()], iface));
        for (std::size_t i : members) {
          LubCertificate cert;
          cert.chosen = lead.chosen;
          cert.table.resize(iface.num_actions());
          for (ActId a = 0; a < iface.num_actions(); ++a) {
            cert.table[a] = rel_circ.compare(after[i][a], after[i][lead.chosen]);
            if (cert.table[a] == CompareResult::Greater)
              throw ContractError(
                  "feature classes disagree on optimal actions despite the "
                  "Markov check holding; at history " + history_key(level[i], iface));
          }
          settle(i, std::move(cert));
        }
      }
    } else {
      for (std::size_t i = 0; i < level.size(); ++i)
        settle(i, select_lub(rel_circ, after[i],
                             "history " + history_key(level[i], iface)));
    }
  }
  FrequencyPlanResult out;
  out.policy = Policy::deterministic(choice, 0);
  out.certificates = std::move(certs);
  out.mfa = std::move(mfa);
  if (out.mfa.verdict == MfaVerdict::Violated)
    out.note = "feature-markov check violated; policy planned per history";
  return out;
}

}  // namespace dpp
