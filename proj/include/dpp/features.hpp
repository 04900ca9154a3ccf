#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dpp/planner.hpp"

namespace dpp {

using FeatureId = std::uint32_t;

// A feature-action pair, the domain the frequency machinery works over.
struct FAKey {
  FeatureId feature = 0;
  ActId action = 0;

  friend auto operator<=>(const FAKey&, const FAKey&) = default;
};

// Total map from histories (length <= T) into a finite ordered feature set.
struct FeatureMap {
  std::string kind;                   // "k_window" or "table"
  std::vector<std::string> features;  // feature names in canonical order
  std::function<FeatureId(const History&)> fn;

  FeatureId at(const History& h) const { return fn(h); }
  std::size_t num_features() const { return features.size(); }
};

// Sliding-window feature: histories shorter than k map to themselves; longer
// ones to their last k observations and the k-1 actions between them. The
// feature set is every history shape of length < k. Requires 1 <= k < T.
FeatureMap k_window_feature(int k, const Interface& iface);

// Explicit table, total over all histories of length <= T (checked eagerly).
FeatureMap table_feature(const Interface& iface,
                         const std::map<History, std::string>& entries);

// Nonnegative weights indexed t = 0..T-1, not all zero (checked).
struct GammaWeights {
  std::vector<Rational> weights;

  explicit GammaWeights(std::vector<Rational> w);
  // Gamma_{t1:t2} = sum of weights[t] for t1 <= t < t2.
  Rational sum(std::size_t t1, std::size_t t2) const;
};

// Weighted visitation frequency over feature-action pairs, or the designated
// zero element when the weight mass of the window is zero.
struct FreqDist {
  std::optional<Dist<FAKey>> dist;

  bool is_zero() const { return !dist.has_value(); }

  friend bool operator==(const FreqDist&, const FreqDist&) = default;
};

// f_{t1:t2}(x, a | D): for each t in [t1, t2), the D-probability that the
// time-t prefix has feature x and the time-t action is a, weighted by
// weights[t] and normalized by their sum. Requires t1 <= t2 <= T and every
// support trajectory of length >= t2.
FreqDist frequency(const FeatureMap& phi, const GammaWeights& gamma,
                   std::size_t t1, std::size_t t2, const TrajDist& D);

using FreqRelation = Relation<FAKey>;

// Pulls a relation over frequency distributions back to trajectory
// distributions: compare(A, B) = rel_circ.compare(f(.|A), f(.|B)) over the
// full window 0..T. Inherits rel_circ's value functional when present.
TrajRelation embedded_relation(FreqRelation rel_circ, FeatureMap phi,
                               GammaWeights gamma);

enum class MfaVerdict { Holds, Violated };

std::string to_string(MfaVerdict v);

// Violation witness: two feature-equal histories whose rows differ at `action`
// (clause 1) or whose extensions by (action, observation) get different
// features (clause 2).
struct MfaWitness {
  History h1, h2;
  ActId action = 0;
  std::optional<ObsId> observation;
  int clause = 0;
};

struct MfaReport {
  MfaVerdict verdict = MfaVerdict::Holds;
  std::optional<MfaWitness> witness;
};

// Checks both feature-Markov clauses over all attainable same-length pairs
// with equal features; first violation in canonical order is returned.
MfaReport check_markov_feature(const Interface& iface, const Environment& env,
                               const FeatureMap& phi);

// Outcome of the feature-based-policy existence test: intersect the
// optimal-action sets over each feature class of attainable same-length
// histories. Empty intersection refutes existence with the class as witness.
struct FeaturePolicyResult {
  bool exists = false;
  std::optional<Policy> policy;             // class-constant choices when exists
  std::size_t witness_level = 0;            // when not-exists:
  std::string witness_feature;              //   the empty-intersection class
  std::vector<History> witness_class;
};

FeaturePolicyResult feature_policy_exists(const Interface& iface,
                                          const Environment& env,
                                          const FeatureMap& phi,
                                          const OptimalActionSets& sets);

// Frequency planner: backward induction choosing actions whose remaining-window
// frequency is a least upper bound under rel_circ; zero remaining weight makes
// every action optimal. When the feature-Markov check holds, ties break per
// feature class and the policy is feature-based; otherwise it falls back to
// per-history planning and says so in `note`.
struct FrequencyPlanResult {
  Policy policy;
  std::map<History, LubCertificate> certificates;
  MfaReport mfa;
  std::string note;
};

FrequencyPlanResult plan_frequency(const Interface& iface, const Environment& env,
                                   const FreqRelation& rel_circ, const FeatureMap& phi,
                                   const GammaWeights& gamma);

}  // namespace dpp
