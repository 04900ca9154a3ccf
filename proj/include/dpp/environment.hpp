#pragma once

#include <map>
#include <optional>
#include <vector>

#include "dpp/dist.hpp"
#include "dpp/model.hpp"

namespace dpp {

// Environment e = (rho0, rho): an initial observation distribution plus a
// transition kernel rho(o | h, a) for decision histories (length < T).
// Rows may be given for unattainable histories too; a missing row falls back to
// default_dist when present and is otherwise a contract error.
class Environment {
 public:
  Environment(Dist<ObsId> rho0, std::map<std::pair<History, ActId>, Dist<ObsId>> rho,
              std::optional<Dist<ObsId>> default_dist = std::nullopt)
      : rho0_(std::move(rho0)), rho_(std::move(rho)),
        default_dist_(std::move(default_dist)) {}

  const Dist<ObsId>& initial() const { return rho0_; }

  const Dist<ObsId>& transition(const History& h, ActId a) const;
  bool has_row(const History& h, ActId a) const;

  const std::map<std::pair<History, ActId>, Dist<ObsId>>& rows() const { return rho_; }
  const std::optional<Dist<ObsId>>& default_dist() const { return default_dist_; }

 private:
  Dist<ObsId> rho0_;
  std::map<std::pair<History, ActId>, Dist<ObsId>> rho_;
  std::optional<Dist<ObsId>> default_dist_;
};

// Attainable histories per level: level 0 is supp(rho0); level t+1 extends level
// t by every action and every observation with positive transition mass.
// per_level[t] is sorted in canonical order; per_level.size() == T + 1.
struct AttainableSets {
  std::vector<std::vector<History>> per_level;

  bool contains(const History& h) const;
  const std::vector<History>& level(std::size_t t) const { return per_level.at(t); }
  // Attainable histories of length < T, level-major in canonical order.
  std::vector<History> decision_histories() const;
  const std::vector<History>& trajectories() const { return per_level.back(); }
};

// Enumerates attainable sets up to the horizon. Validates on the way that every
// (attainable history, action) pair has a transition row (or a default).
AttainableSets attainable(const Interface& iface, const Environment& env);

// All trajectories extending h: every completion by arbitrary actions and
// observations, attainable or not. |cylinder| = (|A||O|)^(T - len(h)).
std::vector<Trajectory> cylinder(const History& h, const Interface& iface);

}  // namespace dpp
