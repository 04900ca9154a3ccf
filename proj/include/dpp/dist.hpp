#pragma once

#include <algorithm>
#include <functional>
#include <utility>
#include <vector>

#include "dpp/errors.hpp"
#include "dpp/rational.hpp"

namespace dpp {

// Finitely supported exact distribution over an ordered value type X.
// Invariants: entries sorted ascending by value, no duplicates, every mass > 0,
// masses sum to exactly 1. Equality of canonical forms is semantic equality.
template <class X>
class Dist {
 public:
  using Entry = std::pair<X, Rational>;

  Dist() = default;  // empty support; only valid as a building intermediate

  static Dist dirac(X x) {
    Dist d;
    d.entries_.emplace_back(std::move(x), Rational(1));
    return d;
  }

  // Canonicalizes: merges duplicates, drops zeros, checks nonnegativity and
  // total mass exactly 1.
  static Dist make(std::vector<Entry> raw) {
    std::sort(raw.begin(), raw.end(),
              [](const Entry& l, const Entry& r) { return l.first < r.first; });
    Dist d;
    Rational total(0);
    for (auto& [x, p] : raw) {
      if (p < 0) throw ContractError("distribution mass is negative");
      if (p == 0) continue;
      total += p;
      if (!d.entries_.empty() && d.entries_.back().first == x)
        d.entries_.back().second += p;
      else
        d.entries_.emplace_back(std::move(x), std::move(p));
    }
    if (total != 1) throw ContractError("distribution masses do not sum to 1");
    return d;
  }

  // Exact convex combination sum_i w_i * D_i with w_i >= 0 summing to 1.
  static Dist combine(const std::vector<std::pair<Rational, const Dist*>>& terms) {
    std::vector<Entry> raw;
    for (const auto& [w, dist] : terms) {
      if (w < 0) throw ContractError("combination weight is negative");
      if (w == 0) continue;
      for (const auto& [x, p] : dist->entries_) raw.emplace_back(x, w * p);
    }
    return make(std::move(raw));
  }

  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t support_size() const { return entries_.size(); }

  Rational mass(const X& x) const {
    auto it = std::lower_bound(
        entries_.begin(), entries_.end(), x,
        [](const Entry& e, const X& v) { return e.first < v; });
    if (it != entries_.end() && it->first == x) return it->second;
    return Rational(0);
  }

  // Total mass of {x : pred(x)}.
  Rational event_mass(const std::function<bool(const X&)>& pred) const {
    Rational total(0);
    for (const auto& [x, p] : entries_)
      if (pred(x)) total += p;
    return total;
  }

  Rational expectation(const std::function<Rational(const X&)>& value) const {
    Rational total(0);
    for (const auto& [x, p] : entries_) total += p * value(x);
    return total;
  }

  friend bool operator==(const Dist& a, const Dist& b) = default;
  friend auto operator<=>(const Dist& a, const Dist& b) = default;

 private:
  std::vector<Entry> entries_;
};

// mix(alpha, A, B) = alpha*A + (1-alpha)*B, exact. Requires alpha in [0, 1].
template <class X>
Dist<X> mix(const Rational& alpha, const Dist<X>& a, const Dist<X>& b) {
  if (alpha < 0 || alpha > 1) throw ContractError("mixture weight outside [0, 1]");
  return Dist<X>::combine({{alpha, &a}, {Rational(1) - alpha, &b}});
}

}  // namespace dpp
