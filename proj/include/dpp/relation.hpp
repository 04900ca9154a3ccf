#pragma once

#include <functional>
#include <map>
#include <memory>
#include <set>
#include <string>

#include "dpp/dist.hpp"
#include "dpp/model.hpp"
#include "dpp/outcome.hpp"

namespace dpp {

enum class CompareResult { Less, Equivalent, Greater, Incomparable };

constexpr bool cmp_leq(CompareResult c) {
  return c == CompareResult::Less || c == CompareResult::Equivalent;
}
constexpr bool cmp_geq(CompareResult c) {
  return c == CompareResult::Greater || c == CompareResult::Equivalent;
}
CompareResult cmp_flip(CompareResult c);
std::string to_string(CompareResult c);

// Exact trichotomy on rationals.
CompareResult compare_values(const Rational& a, const Rational& b);

// Total comparison oracle over distributions on X. Pure: equal inputs always
// produce equal results. An optional exact value functional may be attached;
// `linear` additionally asserts it is affine in mixtures, which enables
// closed-form interpolation solving.
template <class X>
class Relation {
 public:
  using D = Dist<X>;
  using CompareFn = std::function<CompareResult(const D&, const D&)>;
  using ValueFn = std::function<Rational(const D&)>;

  Relation() = default;
  Relation(std::string kind, CompareFn cmp)
      : kind_(std::move(kind)), cmp_(std::move(cmp)) {}

  CompareResult compare(const D& a, const D& b) const { return cmp_(a, b); }
  const std::string& kind() const { return kind_; }

  void set_value(ValueFn v, bool linear) {
    value_ = std::make_shared<ValueFn>(std::move(v));
    linear_ = linear;
  }
  const ValueFn* value() const { return value_ ? value_.get() : nullptr; }
  bool linear_value() const { return value_ && linear_; }

 private:
  std::string kind_;
  CompareFn cmp_;
  std::shared_ptr<ValueFn> value_;
  bool linear_ = false;
};

using TrajRelation = Relation<Trajectory>;

// Orders distributions on X by expected value of a fixed table. The table must
// cover every support element compared (ContractError otherwise).
template <class X>
Relation<X> linear_value_relation(std::string kind, std::map<X, Rational> u) {
  auto shared = std::make_shared<const std::map<X, Rational>>(std::move(u));
  auto val = [shared](const Dist<X>& d) {
    return d.expectation([&](const X& x) {
      auto it = shared->find(x);
      if (it == shared->end())
        throw ContractError("value table undefined on a compared element");
      return it->second;
    });
  };
  Relation<X> rel(std::move(kind), [val](const Dist<X>& a, const Dist<X>& b) {
    return compare_values(val(a), val(b));
  });
  rel.set_value(val, /*linear=*/true);
  return rel;
}

// u_r(w) = sum of r over all prefixes of w (lengths 0..T). Missing entries are
// contract errors.
Rational cumulative_utility(const std::map<History, Rational>& r, const Trajectory& w);

// Orders by E[u_r]; total, and linear in mixtures. r must be total on all
// histories of length 0..T (checked at construction).
TrajRelation expected_reward_relation(const Interface& iface,
                                      std::map<History, Rational> r);

// Orders by E[u] for a per-trajectory utility (total on the given domain).
TrajRelation linear_utility_relation(std::map<Trajectory, Rational> u);

// Risk-averse relation over Dist(dom u): distributions clear of the event set
// compare by E[u]; distributions touching it rank strictly below and compare by
// event mass reversed (more risk is worse). Total and consistent, not convex.
// Preconditions (checked): event a proper nonempty subset of dom(u); beta < 0
// and beta < min u; u non-constant off the event.
TrajRelation risk_relation(std::map<Trajectory, Rational> u, Rational beta,
                           std::set<Trajectory> event);

// Orders by (E[u1], E[u2]) lexicographically. Preconditions (checked): equal
// domains; u1 non-constant; some u1-tie carries a u2-gap (so the tie-break is
// genuine). Total and convex, without interpolation.
TrajRelation lexicographic_relation(std::map<Trajectory, Rational> u1,
                                    std::map<Trajectory, Rational> u2);

}  // namespace dpp
