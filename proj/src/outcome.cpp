#include "dpp/outcome.hpp"

namespace dpp {

TrajDist outcome_dist(const Interface& iface, const Environment& env,
                      const Policy& pi, const History& h) {
  if (static_cast<int>(h.length()) == iface.horizon()) return TrajDist::dirac(h);
  const Dist<ActId>& act = pi.action_dist(h);
  std::vector<TrajDist> parts;
  parts.reserve(act.support_size());
  std::vector<std::pair<Rational, const TrajDist*>> terms;
  for (const auto& [a, w] : act.entries())
    parts.push_back(outcome_dist_after_action(iface, env, pi, h, a));
  std::size_t i = 0;
  for (const auto& [a, w] : act.entries()) terms.emplace_back(w, &parts[i++]);
  return TrajDist::combine(terms);
}

TrajDist outcome_dist_after_action(const Interface& iface, const Environment& env,
                                   const Policy& pi, const History& h, ActId a) {
  if (static_cast<int>(h.length()) >= iface.horizon())
    throw ContractError("no action step remains at a full-length history");
  const Dist<ObsId>& obs = env.transition(h, a);
  std::vector<TrajDist> parts;
  parts.reserve(obs.support_size());
  for (const auto& [o, p] : obs.entries())
    parts.push_back(outcome_dist(iface, env, pi, h.extended(a, o)));
  std::vector<std::pair<Rational, const TrajDist*>> terms;
  std::size_t i = 0;
  for (const auto& [o, p] : obs.entries()) terms.emplace_back(p, &parts[i++]);
  return TrajDist::combine(terms);
}

Rational reach_probability(const Environment& env, const Policy& pi, const History& h) {
  Rational p = env.initial().mass(h.initial);
  History prefix(h.initial);
  for (const auto& [a, o] : h.steps) {
    if (p == 0) return p;
    p *= pi.action_dist(prefix).mass(a);
    if (p == 0) return p;
    p *= env.transition(prefix, a).mass(o);
    prefix.steps.emplace_back(a, o);
  }
  return p;
}

}  // namespace dpp
