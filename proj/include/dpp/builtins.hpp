#pragma once

#include <functional>

#include "dpp/environment.hpp"
#include "dpp/relation.hpp"

namespace dpp {

// Built-in problem instances for the repro command and the test suites. Each is
// constructed in code (no data files) and is fully deterministic.

// Two-observation, two-action, horizon-2 instance whose relation is a total
// preorder that violates consistency: the sign of the performance metric flips
// on support outside the cylinder of one distinguished level-1 history, and no
// policy (deterministic or not) is optimal.
struct CounterexampleCase {
  Interface iface;
  Environment env;
  TrajRelation relation;
  History pivot;  // the distinguished level-1 history
  std::function<Rational(const TrajDist&)> metric;
  Trajectory demo_w1, demo_w2, demo_w3;  // consistency-violation exhibit
};
CounterexampleCase counterexample_case();

// Single-observation, two-action, horizon-2 instance under the risk-averse
// relation: total and consistent (so planning works) but neither convex nor
// interpolating, hence not expressible by any utility.
struct RiskCase {
  Interface iface;
  Environment env;
  TrajRelation relation;
  std::map<Trajectory, Rational> utility;
  Rational beta;
  std::set<Trajectory> event;
  Trajectory safe_low, safe_high, risky;  // convexity-witness family
};
RiskCase risk_case();

// Single-observation, two-action, horizon-2 instance under the lexicographic
// relation: total and convex but without interpolation.
struct LexicographicCase {
  Interface iface;
  Environment env;
  TrajRelation relation;
  std::map<Trajectory, Rational> u1, u2;
};
LexicographicCase lexicographic_case();

}  // namespace dpp
