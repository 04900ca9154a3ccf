#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "dpp/errors.hpp"

namespace dpp {

// Symbols are indices into the declaring Interface's tables; declaration order
// is the canonical order used by every enumeration and tie-break in the toolkit.
using ObsId = std::uint32_t;
using ActId = std::uint32_t;

// Finite observation set, finite action set, horizon T >= 1.
class Interface {
 public:
  Interface(std::vector<std::string> observations, std::vector<std::string> actions,
            int horizon);

  int horizon() const { return horizon_; }
  std::size_t num_observations() const { return observations_.size(); }
  std::size_t num_actions() const { return actions_.size(); }
  const std::string& observation_name(ObsId o) const { return observations_.at(o); }
  const std::string& action_name(ActId a) const { return actions_.at(a); }
  const std::vector<std::string>& observations() const { return observations_; }
  const std::vector<std::string>& actions() const { return actions_; }

  // Lookup by name; throws ParseError naming `where` on unknown symbols.
  ObsId observation_id(const std::string& name, const std::string& where = {}) const;
  ActId action_id(const std::string& name, const std::string& where = {}) const;

 private:
  std::vector<std::string> observations_;
  std::vector<std::string> actions_;
  int horizon_;
};

// A t-history: initial observation plus t (action, observation) steps.
// A trajectory is a History of full length T. Ordering is lexicographic on
// (initial, steps), which agrees with canonical enumeration order within a level.
struct History {
  ObsId initial = 0;
  std::vector<std::pair<ActId, ObsId>> steps;

  History() = default;
  explicit History(ObsId o) : initial(o) {}

  std::size_t length() const { return steps.size(); }

  ObsId observation_at(std::size_t t) const {
    return t == 0 ? initial : steps[t - 1].second;
  }
  ObsId last_observation() const { return observation_at(length()); }
  ActId action_at(std::size_t t) const { return steps.at(t).first; }

  History extended(ActId a, ObsId o) const {
    History h = *this;
    h.steps.emplace_back(a, o);
    return h;
  }

  // xi_{0:t}: the length-t prefix.
  History prefix(std::size_t t) const {
    History h(initial);
    h.steps.assign(steps.begin(), steps.begin() + static_cast<std::ptrdiff_t>(t));
    return h;
  }

  bool has_prefix(const History& p) const {
    if (p.length() > length() || p.initial != initial) return false;
    for (std::size_t i = 0; i < p.length(); ++i)
      if (steps[i] != p.steps[i]) return false;
    return true;
  }

  friend auto operator<=>(const History&, const History&) = default;
};

using Trajectory = History;

// Wire form "o0|a0|o1|...": observation and action names joined with '|'.
std::string history_key(const History& h, const Interface& iface);
History parse_history_key(const std::string& key, const Interface& iface,
                          const std::string& where = {});

// All histories of the given length, in canonical order. Grows as
// |O| * (|A||O|)^length; callers are expected to stay at desk scale.
std::vector<History> all_histories(const Interface& iface, std::size_t length);

}  // namespace dpp
