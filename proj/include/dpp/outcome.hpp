#pragma once

#include "dpp/environment.hpp"
#include "dpp/policy.hpp"

namespace dpp {

using TrajDist = Dist<Trajectory>;

// Trajectory distribution induced by following pi from h onward:
//   full-length h        -> point mass on h;
//   otherwise            -> sum over a of pi(a | h) * outcome after a.
// Defined for unattainable h too (use AttainableSets to restrict quantification).
TrajDist outcome_dist(const Interface& iface, const Environment& env,
                      const Policy& pi, const History& h);

// Same, conditioned on playing a at h first:
//   sum over o of rho(o | h, a) * outcome_dist at h.(a, o).
TrajDist outcome_dist_after_action(const Interface& iface, const Environment& env,
                                   const Policy& pi, const History& h, ActId a);

// P(reach h) under pi: product of rho0/rho masses along h times pi's action
// masses. Positive for some pi exactly when h is attainable.
Rational reach_probability(const Environment& env, const Policy& pi, const History& h);

}  // namespace dpp
