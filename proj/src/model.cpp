#include "dpp/model.hpp"

#include <set>
#include <sstream>

namespace dpp {

Interface::Interface(std::vector<std::string> observations,
                     std::vector<std::string> actions, int horizon)
    : observations_(std::move(observations)), actions_(std::move(actions)),
      horizon_(horizon) {
  if (observations_.empty()) throw ContractError("observation set is empty");
  if (actions_.empty()) throw ContractError("action set is empty");
  if (horizon_ < 1) throw ContractError("horizon must be at least 1");
  std::set<std::string> seen(observations_.begin(), observations_.end());
  if (seen.size() != observations_.size())
    throw ContractError("duplicate observation symbol");
  seen.clear();
  seen.insert(actions_.begin(), actions_.end());
  if (seen.size() != actions_.size()) throw ContractError("duplicate action symbol");
}

ObsId Interface::observation_id(const std::string& name, const std::string& where) const {
  for (std::size_t i = 0; i < observations_.size(); ++i)
    if (observations_[i] == name) return static_cast<ObsId>(i);
  throw ParseError(where, "unknown observation \"" + name + "\"");
}

ActId Interface::action_id(const std::string& name, const std::string& where) const {
  for (std::size_t i = 0; i < actions_.size(); ++i)
    if (actions_[i] == name) return static_cast<ActId>(i);
  throw ParseError(where, "unknown action \"" + name + "\"");
}

std::string history_key(const History& h, const Interface& iface) {
  std::ostringstream out;
  out << iface.observation_name(h.initial);
  for (const auto& [a, o] : h.steps)
    out << '|' << iface.action_name(a) << '|' << iface.observation_name(o);
  return out.str();
}

History parse_history_key(const std::string& key, const Interface& iface,
                          const std::string& where) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : key) {
    if (c == '|') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  parts.push_back(cur);
  if (parts.size() % 2 != 1)
    throw ParseError(where, "history key \"" + key + "\" must alternate obs|act|obs");
  History h(iface.observation_id(parts[0], where));
  for (std::size_t i = 1; i + 1 < parts.size(); i += 2) {
    ActId a = iface.action_id(parts[i], where);
    ObsId o = iface.observation_id(parts[i + 1], where);
    h.steps.emplace_back(a, o);
  }
  return h;
}

std::vector<History> all_histories(const Interface& iface, std::size_t length) {
  std::vector<History> level;
  for (ObsId o = 0; o < iface.num_observations(); ++o) level.emplace_back(o);
  for (std::size_t t = 0; t < length; ++t) {
    std::vector<History> next;
    next.reserve(level.size() * iface.num_actions() * iface.num_observations());
    for (const History& h : level)
      for (ActId a = 0; a < iface.num_actions(); ++a)
        for (ObsId o = 0; o < iface.num_observations(); ++o)
          next.push_back(h.extended(a, o));
    level = std::move(next);
  }
  return level;
}

}  // namespace dpp
