#include "dpp/environment.hpp"

#include <algorithm>

namespace dpp {

const Dist<ObsId>& Environment::transition(const History& h, ActId a) const {
  auto it = rho_.find({h, a});
  if (it != rho_.end()) return it->second;
  if (default_dist_) return *default_dist_;
  throw ContractError("no transition row for (history, action) and no default");
}

bool Environment::has_row(const History& h, ActId a) const {
  return rho_.count({h, a}) > 0 || default_dist_.has_value();
}

bool AttainableSets::contains(const History& h) const {
  if (h.length() >= per_level.size()) return false;
  const auto& lvl = per_level[h.length()];
  return std::binary_search(lvl.begin(), lvl.end(), h);
}

std::vector<History> AttainableSets::decision_histories() const {
  std::vector<History> out;
  for (std::size_t t = 0; t + 1 < per_level.size(); ++t)
    out.insert(out.end(), per_level[t].begin(), per_level[t].end());
  return out;
}

AttainableSets attainable(const Interface& iface, const Environment& env) {
  AttainableSets sets;
  std::vector<History> level;
  for (const auto& [o, p] : env.initial().entries()) level.emplace_back(o);
  sets.per_level.push_back(level);
  for (int t = 0; t < iface.horizon(); ++t) {
    std::vector<History> next;
    for (const History& h : level) {
      for (ActId a = 0; a < iface.num_actions(); ++a) {
        if (!env.has_row(h, a))
          throw ContractError("transition row missing at attainable history \"" +
                              history_key(h, iface) + "\", action \"" +
                              iface.action_name(a) + "\"");
        for (const auto& [o, p] : env.transition(h, a).entries())
          next.push_back(h.extended(a, o));
      }
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    level = next;
    sets.per_level.push_back(std::move(next));
  }
  return sets;
}

std::vector<Trajectory> cylinder(const History& h, const Interface& iface) {
  std::vector<Trajectory> out{h};
  for (int t = static_cast<int>(h.length()); t < iface.horizon(); ++t) {
    std::vector<Trajectory> next;
    next.reserve(out.size() * iface.num_actions() * iface.num_observations());
    for (const Trajectory& p : out)
      for (ActId a = 0; a < iface.num_actions(); ++a)
        for (ObsId o = 0; o < iface.num_observations(); ++o)
          next.push_back(p.extended(a, o));
    out = std::move(next);
  }
  return out;
}

}  // namespace dpp
