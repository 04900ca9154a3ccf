#include "dpp/policy.hpp"

namespace dpp {

Policy Policy::deterministic(const std::map<History, ActId>& choice,
                             std::optional<ActId> fallback) {
  std::map<History, Dist<ActId>> rule;
  for (const auto& [h, a] : choice) rule.emplace(h, Dist<ActId>::dirac(a));
  return Policy(std::move(rule), fallback);
}

const Dist<ActId>& Policy::action_dist(const History& h) const {
  auto it = rule_.find(h);
  if (it != rule_.end()) return it->second;
  if (fallback_) {
    auto [cit, inserted] = fallback_cache_.try_emplace(*fallback_);
    if (inserted) cit->second = Dist<ActId>::dirac(*fallback_);
    return cit->second;
  }
  std::string key = "#" + std::to_string(h.initial);
  for (const auto& [a, o] : h.steps)
    key += "|#" + std::to_string(a) + "|#" + std::to_string(o);
  throw ContractError("policy undefined at required history " + key);
}

bool Policy::is_deterministic() const {
  for (const auto& [h, d] : rule_)
    if (d.support_size() != 1) return false;
  return true;
}

ActId Policy::action_at(const History& h) const {
  const Dist<ActId>& d = action_dist(h);
  if (d.support_size() != 1)
    throw ContractError("action_at called on a stochastic policy");
  return d.entries().front().first;
}

}  // namespace dpp
