#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dpp/axioms.hpp"
#include "dpp/features.hpp"

namespace dpp {

enum class FitVerdict { Representable, RefutedOnTestset, Infeasible };

std::string to_string(FitVerdict v);

// Attempt to express a trajectory-distribution relation by expected utility.
// representable: the induced linear relation reproduced the oracle on every
//   tested pair; the utility lands inside [0, 1] with endpoints pinned.
// refuted-on-testset: a tested pair disagrees with the best candidate; the
//   pair is the witness.
// infeasible: the Dirac comparisons contain a cycle with a strict step; the
//   closed chain (first step strict) is the certificate.
struct TrajectoryFit {
  FitVerdict verdict = FitVerdict::Infeasible;
  std::optional<std::map<Trajectory, Rational>> utility;
  Rational margin;  // least value gap over strictly compared Dirac pairs
  std::optional<std::pair<TrajDist, TrajDist>> witness;
  std::vector<Trajectory> cycle;
};

// Dirac-order analysis, then calibration of every trajectory against the best
// and worst Diracs (binary mediant search for the equivalent mixture weight,
// with a rank fallback when no mixture matches), then exact verification of
// the induced linear relation on the full testset built over omega.
TrajectoryFit fit_utility(const TrajRelation& rel,
                          const std::vector<Trajectory>& omega,
                          const TestsetSpec& spec);

// Attempt to express the relation by a gamma-weighted feature-action reward:
// compare(A, B) should equal the value order of sum_(x,a) f(x,a|.) r(x,a).
// The reward covers exactly the visited feature-action pairs.
struct FeatureFit {
  FitVerdict verdict = FitVerdict::RefutedOnTestset;
  std::optional<std::map<FAKey, Rational>> reward;
  Rational margin;  // maximized shared slack of strict constraints
  std::optional<std::pair<TrajDist, TrajDist>> witness;
};

// Margin-maximizing exact linear program over the distinct tested frequency
// vectors, then exact verification on the tested pairs plus held-out mixtures.
FeatureFit fit_feature_reward(const TrajRelation& rel, const FeatureMap& phi,
                              const GammaWeights& gamma,
                              const std::vector<Trajectory>& omega,
                              const TestsetSpec& spec);

template <class X>
struct AffineResult {
  bool equivalent = false;
  Rational scale;  // positive when equivalent
  Rational shift;
  std::optional<std::pair<X, X>> witness;  // a pair the maps disagree on
};

// Decides whether u2 = scale * u1 + shift with scale > 0 over a shared domain.
// Constant maps count as equivalent to each other.
template <class X>
AffineResult<X> affine_equivalence(const std::map<X, Rational>& u1,
                                   const std::map<X, Rational>& u2) {
  if (u1.size() != u2.size())
    throw ContractError("utility maps cover different domains");
  for (const auto& [k, v] : u1)
    if (!u2.count(k))
      throw ContractError("utility maps cover different domains");
  AffineResult<X> out;
  auto anchor = u1.end();
  for (auto it = u1.begin(); it != u1.end(); ++it)
    if (it->second != u1.begin()->second) {
      anchor = it;
      break;
    }
  if (anchor == u1.end()) {
    // u1 constant: equivalent exactly when u2 is constant too.
    for (const auto& [k, v] : u2)
      if (v != u2.begin()->second) {
        out.witness = {u2.begin()->first, k};
        return out;
      }
    out.equivalent = true;
    out.scale = 1;
    out.shift = u2.begin()->second - u1.begin()->second;
    return out;
  }
  const X& p = u1.begin()->first;
  const X& q = anchor->first;
  out.scale = (u2.at(q) - u2.at(p)) / (anchor->second - u1.begin()->second);
  if (out.scale <= 0) {
    out.scale = 0;
    out.witness = {p, q};
    return out;
  }
  out.shift = u2.at(p) - out.scale * u1.begin()->second;
  for (const auto& [k, v] : u1)
    if (u2.at(k) != out.scale * v + out.shift) {
      out.scale = 0;
      out.shift = 0;
      out.witness = {p, k};
      return out;
    }
  out.equivalent = true;
  return out;
}

}  // namespace dpp
