#include "dpp/relation.hpp"

#include <algorithm>

namespace dpp {

CompareResult cmp_flip(CompareResult c) {
  switch (c) {
    case CompareResult::Less: return CompareResult::Greater;
    case CompareResult::Greater: return CompareResult::Less;
    default: return c;
  }
}

std::string to_string(CompareResult c) {
  switch (c) {
    case CompareResult::Less: return "less";
    case CompareResult::Equivalent: return "equivalent";
    case CompareResult::Greater: return "greater";
    case CompareResult::Incomparable: return "incomparable";
  }
  return "incomparable";
}

CompareResult compare_values(const Rational& a, const Rational& b) {
  if (a < b) return CompareResult::Less;
  if (a > b) return CompareResult::Greater;
  return CompareResult::Equivalent;
}

Rational cumulative_utility(const std::map<History, Rational>& r, const Trajectory& w) {
  Rational total(0);
  for (std::size_t t = 0; t <= w.length(); ++t) {
    auto it = r.find(w.prefix(t));
    if (it == r.end())
      throw ContractError("reward undefined at a prefix of a support trajectory");
    total += it->second;
  }
  return total;
}

namespace {

Rational lookup_utility(const std::map<Trajectory, Rational>& u, const Trajectory& w,
                        const char* what) {
  auto it = u.find(w);
  if (it == u.end())
    throw ContractError(std::string(what) + " undefined at a support trajectory");
  return it->second;
}

Rational expected_utility(const std::map<Trajectory, Rational>& u, const TrajDist& d,
                          const char* what) {
  Rational total(0);
  for (const auto& [w, p] : d.entries()) total += p * lookup_utility(u, w, what);
  return total;
}

}  // namespace

TrajRelation expected_reward_relation(const Interface& iface,
                                      std::map<History, Rational> r) {
  for (int t = 0; t <= iface.horizon(); ++t)
    for (const History& h : all_histories(iface, static_cast<std::size_t>(t)))
      if (!r.count(h))
        throw ContractError("reward map not total: missing history \"" +
                            history_key(h, iface) + "\"");
  auto shared = std::make_shared<const std::map<History, Rational>>(std::move(r));
  auto value = [shared](const TrajDist& d) {
    Rational total(0);
    for (const auto& [w, p] : d.entries()) total += p * cumulative_utility(*shared, w);
    return total;
  };
  TrajRelation rel("expected_reward", [value](const TrajDist& a, const TrajDist& b) {
    return compare_values(value(a), value(b));
  });
  rel.set_value(value, /*linear=*/true);
  return rel;
}

TrajRelation linear_utility_relation(std::map<Trajectory, Rational> u) {
  auto shared = std::make_shared<const std::map<Trajectory, Rational>>(std::move(u));
  auto value = [shared](const TrajDist& d) {
    return expected_utility(*shared, d, "utility");
  };
  TrajRelation rel("linear_utility", [value](const TrajDist& a, const TrajDist& b) {
    return compare_values(value(a), value(b));
  });
  rel.set_value(value, /*linear=*/true);
  return rel;
}

TrajRelation risk_relation(std::map<Trajectory, Rational> u, Rational beta,
                           std::set<Trajectory> event) {
  if (event.empty()) throw ContractError("risk event set is empty");
  if (event.size() >= u.size())
    throw ContractError("risk event must be a proper subset of the utility domain");
  Rational min_u;
  bool first = true;
  for (const Trajectory& w : event)
    if (!u.count(w)) throw ContractError("risk event contains an unknown trajectory");
  for (const auto& [w, val] : u) {
    if (first || val < min_u) min_u = val;
    first = false;
  }
  if (!(beta < 0 && beta < min_u))
    throw ContractError("risk beta must be negative and below min utility");
  bool nonconstant = false;
  std::optional<Rational> seen;
  for (const auto& [w, val] : u) {
    if (event.count(w)) continue;
    if (seen && *seen != val) nonconstant = true;
    seen = val;
  }
  if (!nonconstant)
    throw ContractError("utility is constant outside the risk event");

  auto su = std::make_shared<const std::map<Trajectory, Rational>>(std::move(u));
  auto sev = std::make_shared<const std::set<Trajectory>>(std::move(event));
  auto event_mass = [su, sev](const TrajDist& d) {
    Rational total(0);
    for (const auto& [w, p] : d.entries()) {
      lookup_utility(*su, w, "utility");  // domain check even off the event
      if (sev->count(w)) total += p;
    }
    return total;
  };
  return TrajRelation("risk", [su, sev, event_mass](const TrajDist& a, const TrajDist& b) {
    Rational ea = event_mass(a), eb = event_mass(b);
    bool risky_a = ea > 0, risky_b = eb > 0;
    if (!risky_a && !risky_b)
      return compare_values(expected_utility(*su, a, "utility"),
                            expected_utility(*su, b, "utility"));
    if (risky_a && risky_b) return compare_values(eb, ea);  // more risk is worse
    return risky_a ? CompareResult::Less : CompareResult::Greater;
  });
}

TrajRelation lexicographic_relation(std::map<Trajectory, Rational> u1,
                                    std::map<Trajectory, Rational> u2) {
  if (u1.size() != u2.size())
    throw ContractError("lexicographic utilities must share a domain");
  for (const auto& [w, v] : u1)
    if (!u2.count(w))
      throw ContractError("lexicographic utilities must share a domain");
  bool u1_nonconstant = false;
  bool genuine_tiebreak = false;
  for (auto it = u1.begin(); it != u1.end(); ++it)
    for (auto jt = std::next(it); jt != u1.end(); ++jt) {
      if (it->second != jt->second) u1_nonconstant = true;
      if (it->second == jt->second && u2.at(it->first) != u2.at(jt->first))
        genuine_tiebreak = true;
    }
  if (!u1_nonconstant) throw ContractError("primary utility is constant");
  if (!genuine_tiebreak)
    throw ContractError("no primary-utility tie carries a secondary gap");

  auto s1 = std::make_shared<const std::map<Trajectory, Rational>>(std::move(u1));
  auto s2 = std::make_shared<const std::map<Trajectory, Rational>>(std::move(u2));
  return TrajRelation("lexicographic", [s1, s2](const TrajDist& a, const TrajDist& b) {
    CompareResult first = compare_values(expected_utility(*s1, a, "primary utility"),
                                         expected_utility(*s1, b, "primary utility"));
    if (first != CompareResult::Equivalent) return first;
    return compare_values(expected_utility(*s2, a, "secondary utility"),
                          expected_utility(*s2, b, "secondary utility"));
  });
}

}  // namespace dpp
