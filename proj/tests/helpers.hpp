#pragma once

// Shared builders for unit tests. Test-only; not part of the library.

#include <initializer_list>
#include <map>
#include <vector>

#include "dpp/environment.hpp"
#include "dpp/model.hpp"
#include "dpp/outcome.hpp"
#include "dpp/policy.hpp"

namespace dpp::testing {

inline Rational rat(long long num, long long den = 1) {
  return Rational(num, den);
}

// History from flat indices: {o0, a0, o1, a1, o2, ...}.
inline History hist(std::initializer_list<std::uint32_t> ids) {
  std::vector<std::uint32_t> v(ids);
  History h(v.at(0));
  for (std::size_t i = 1; i + 1 < v.size(); i += 2)
    h.steps.emplace_back(v[i], v[i + 1]);
  return h;
}

// Environment with a fixed initial observation and the same transition
// distribution after every (history, action).
inline Environment uniform_env(const Interface& iface, ObsId start,
                               const Dist<ObsId>& step) {
  return Environment(Dist<ObsId>::dirac(start), {}, step);
}

// Deterministic single-observation environment: the only observation repeats.
inline Environment single_obs_env(const Interface& iface) {
  return Environment(Dist<ObsId>::dirac(0), {}, Dist<ObsId>::dirac(0));
}

// Uniform distribution over all observations of the interface.
inline Dist<ObsId> uniform_obs(const Interface& iface) {
  std::vector<Dist<ObsId>::Entry> raw;
  auto n = static_cast<long long>(iface.num_observations());
  for (ObsId o = 0; o < iface.num_observations(); ++o)
    raw.emplace_back(o, Rational(1, n));
  return Dist<ObsId>::make(std::move(raw));
}

}  // namespace dpp::testing
