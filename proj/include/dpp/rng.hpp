#pragma once

#include <random>
#include <vector>

#include "dpp/dist.hpp"

namespace dpp {

// Deterministic RNG wrapper. Avoids std::uniform_int_distribution, whose output
// is implementation-defined; raw modulo keeps byte-identical runs everywhere.
struct Rng {
  std::mt19937_64 g;
  explicit Rng(std::uint64_t seed) : g(seed) {}

  std::uint64_t next(std::uint64_t bound) { return bound ? g() % bound : 0; }

  // Rational in [0, 1] with denominator <= max_den.
  Rational unit_rational(std::uint64_t max_den = 8) {
    std::uint64_t den = 1 + next(max_den);
    return Rational(next(den + 1), den);
  }
};

// Random exact distribution over a subset of `universe`: up to max_support
// distinct values with integer weights in [1, max_weight], normalized.
template <class X>
Dist<X> random_dist(Rng& rng, const std::vector<X>& universe,
                    std::size_t max_support = 6, std::uint64_t max_weight = 5) {
  std::size_t n = universe.size();
  std::size_t k = 1 + rng.next(std::min(n, max_support));
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  for (std::size_t i = 0; i < k; ++i)
    std::swap(idx[i], idx[i + rng.next(n - i)]);
  std::vector<std::uint64_t> w(k);
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < k; ++i) total += w[i] = 1 + rng.next(max_weight);
  std::vector<typename Dist<X>::Entry> raw;
  raw.reserve(k);
  for (std::size_t i = 0; i < k; ++i)
    raw.emplace_back(universe[idx[i]], Rational(w[i], total));
  return Dist<X>::make(std::move(raw));
}

}  // namespace dpp
