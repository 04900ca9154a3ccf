#pragma once

#include <map>
#include <optional>

#include "dpp/dist.hpp"
#include "dpp/model.hpp"

namespace dpp {

// Policy: action distribution per decision history (length < T). Stored rules
// cover the histories the owner cares about (typically the attainable ones);
// `fallback` extends the policy to every other history so it is total.
// Lookup at a history with neither a rule nor a fallback is a contract error.
class Policy {
 public:
  Policy() = default;
  Policy(std::map<History, Dist<ActId>> rule, std::optional<ActId> fallback)
      : rule_(std::move(rule)), fallback_(fallback) {}

  static Policy deterministic(const std::map<History, ActId>& choice,
                              std::optional<ActId> fallback = std::nullopt);
  // Same fixed action everywhere.
  static Policy constant(ActId a) { return Policy({}, a); }

  const Dist<ActId>& action_dist(const History& h) const;
  bool is_deterministic() const;
  // Requires a deterministic policy; the single chosen action at h.
  ActId action_at(const History& h) const;

  const std::map<History, Dist<ActId>>& rules() const { return rule_; }
  std::optional<ActId> fallback() const { return fallback_; }

  friend bool operator==(const Policy&, const Policy&) = default;

 private:
  std::map<History, Dist<ActId>> rule_;
  std::optional<ActId> fallback_;
  mutable std::map<ActId, Dist<ActId>> fallback_cache_;
};

}  // namespace dpp
