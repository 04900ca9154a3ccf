#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dpp/environment.hpp"
#include "dpp/relation.hpp"
#include "dpp/rng.hpp"

namespace dpp {

enum class Axiom { Totality, Transitivity, Consistency, Convexity, Interpolation };

std::string to_string(Axiom ax);
Axiom axiom_from_string(const std::string& name, const std::string& where);
inline const std::vector<Axiom>& all_axioms() {
  static const std::vector<Axiom> v{Axiom::Totality, Axiom::Transitivity,
                                    Axiom::Consistency, Axiom::Convexity,
                                    Axiom::Interpolation};
  return v;
}

enum class AxiomVerdict { PassedOnTestset, Refuted };
std::string to_string(AxiomVerdict v);

// A refutation witness re-evaluates to a violation: re-running the compares on
// `dists` (mixed at `alpha` where applicable) reproduces `observed`.
template <class X>
struct AxiomWitness {
  std::vector<Dist<X>> dists;
  std::optional<Rational> alpha;
  std::vector<CompareResult> observed;
  std::string note;
};

template <class X>
struct AxiomReport {
  Axiom axiom = Axiom::Totality;
  AxiomVerdict verdict = AxiomVerdict::PassedOnTestset;
  std::optional<AxiomWitness<X>> witness;
  long long tuples_checked = 0;
  std::size_t testset_size = 0;
};

// Testset recipe: Dirac distributions on all attainable trajectories, pairwise
// mixtures of the first `mixture_base` Diracs at each grid alpha, and
// `random_count` seeded random rational distributions with bounded denominators.
// Quantified axioms enumerate tuples exhaustively while the tuple count fits
// `tuple_budget` and otherwise check a seeded uniform sample of that size.
struct TestsetSpec {
  std::uint64_t seed = 0;
  int random_count = 16;
  int mixture_base = 8;
  std::vector<Rational> alphas{Rational(1, 4), Rational(1, 2), Rational(3, 4)};
  long long tuple_budget = 60000;
};

std::vector<TrajDist> build_testset(const Interface& iface, const Environment& env,
                                    const AttainableSets& sets, const TestsetSpec& spec);

// Same recipe over an explicit trajectory set.
std::vector<TrajDist> build_testset(const std::vector<Trajectory>& omega,
                                    const TestsetSpec& spec);

namespace detail {

// Visits index tuples over the given dims: exhaustively when the product fits
// the budget, otherwise `budget` seeded uniform draws. Stops when fn returns
// false. Returns the number of tuples visited.
template <class Fn>
long long for_tuples(const std::vector<std::size_t>& dims, long long budget,
                     std::uint64_t seed, Fn&& fn) {
  long long product = 1;
  bool exhaustive = true;
  for (std::size_t d : dims) {
    if (d == 0) return 0;
    if (product > budget / static_cast<long long>(d)) {
      exhaustive = false;
      break;
    }
    product *= static_cast<long long>(d);
  }
  std::vector<std::size_t> idx(dims.size(), 0);
  long long visited = 0;
  if (exhaustive) {
    bool done = false;
    while (!done) {
      ++visited;
      if (!fn(idx)) return visited;
      done = true;
      for (std::size_t k = dims.size(); k-- > 0;) {
        if (++idx[k] < dims[k]) {
          done = false;
          break;
        }
        idx[k] = 0;
      }
    }
    return visited;
  }
  Rng rng(seed);
  for (long long n = 0; n < budget; ++n) {
    for (std::size_t k = 0; k < dims.size(); ++k) idx[k] = rng.next(dims[k]);
    ++visited;
    if (!fn(idx)) return visited;
  }
  return visited;
}

// Lazily memoized pairwise compare matrix.
template <class X>
class PairCache {
 public:
  PairCache(const Relation<X>& rel, const std::vector<Dist<X>>& ts)
      : rel_(rel), ts_(ts), cache_(ts.size() * ts.size(), -1) {}

  CompareResult at(std::size_t i, std::size_t j) {
    signed char& slot = cache_[i * ts_.size() + j];
    if (slot < 0) slot = static_cast<signed char>(rel_.compare(ts_[i], ts_[j]));
    return static_cast<CompareResult>(slot);
  }

 private:
  const Relation<X>& rel_;
  const std::vector<Dist<X>>& ts_;
  std::vector<signed char> cache_;
};

}  // namespace detail

// Evaluates one axiom of a claimed total preorder over the given testset. A
// falsifier: PassedOnTestset is evidence, Refuted is a checked counterexample
// (for interpolation, "refuted" means no alpha in the documented search set
// achieves equivalence for some chain).
template <class X>
AxiomReport<X> check_axiom(const Relation<X>& rel, Axiom ax,
                           const std::vector<Dist<X>>& ts, const TestsetSpec& spec) {
  using W = AxiomWitness<X>;
  AxiomReport<X> report;
  report.axiom = ax;
  report.testset_size = ts.size();
  const std::size_t n = ts.size();
  if (n == 0) return report;
  detail::PairCache<X> pairs(rel, ts);
  const std::uint64_t tuple_seed =
      spec.seed * 1000003ull + static_cast<std::uint64_t>(ax);
  long long evaluated = 0;

  // Convexity quantifies alpha over (0, 1]; the closed grid adds both endpoints
  // where the axiom admits them.
  std::vector<Rational> closed_grid = spec.alphas;
  closed_grid.push_back(Rational(0));
  closed_grid.push_back(Rational(1));
  std::sort(closed_grid.begin(), closed_grid.end());
  closed_grid.erase(std::unique(closed_grid.begin(), closed_grid.end()),
                    closed_grid.end());
  std::vector<Rational> open_grid;
  for (const Rational& a : closed_grid)
    if (a > 0) open_grid.push_back(a);

  switch (ax) {
    case Axiom::Totality: {
      detail::for_tuples({n, n}, spec.tuple_budget, tuple_seed, [&](const auto& ix) {
        ++evaluated;
        CompareResult c = pairs.at(ix[0], ix[1]);
        if (c == CompareResult::Incomparable) {
          report.verdict = AxiomVerdict::Refuted;
          report.witness = W{{ts[ix[0]], ts[ix[1]]}, std::nullopt, {c},
                             "pair answered incomparable"};
          return false;
        }
        return true;
      });
      break;
    }
    case Axiom::Transitivity: {
      detail::for_tuples({n, n, n}, spec.tuple_budget, tuple_seed, [&](const auto& ix) {
        CompareResult ab = pairs.at(ix[0], ix[1]);
        CompareResult bc = pairs.at(ix[1], ix[2]);
        if (!cmp_leq(ab) || !cmp_leq(bc)) return true;
        ++evaluated;
        CompareResult ac = pairs.at(ix[0], ix[2]);
        if (!cmp_leq(ac)) {
          report.verdict = AxiomVerdict::Refuted;
          report.witness = W{{ts[ix[0]], ts[ix[1]], ts[ix[2]]}, std::nullopt,
                             {ab, bc, ac},
                             "A leq B and B leq C but not A leq C"};
          return false;
        }
        return true;
      });
      break;
    }
    case Axiom::Consistency: {
      // Exhaustive mode hoists mix(alpha, A, C) out of the B loop; the sampled
      // fallback keeps the flat tuple shape.
      long long full = static_cast<long long>(n) * n * n *
                       static_cast<long long>(closed_grid.size());
      bool exhaustive = full >= 0 && full <= spec.tuple_budget;
      if (exhaustive) {
        for (std::size_t i = 0; i < n && !report.witness; ++i)
          for (std::size_t k = 0; k < n && !report.witness; ++k)
            for (const Rational& alpha : closed_grid) {
              Dist<X> ma = mix(alpha, ts[i], ts[k]);
              for (std::size_t j = 0; j < n; ++j) {
                if (i == j) continue;
                CompareResult ab = pairs.at(i, j);
                if (!cmp_leq(ab)) continue;
                ++evaluated;
                CompareResult mixed = rel.compare(ma, mix(alpha, ts[j], ts[k]));
                if (!cmp_leq(mixed)) {
                  report.verdict = AxiomVerdict::Refuted;
                  report.witness = W{{ts[i], ts[j], ts[k]}, alpha, {ab, mixed},
                                     "A leq B but the C-mixtures do not compare leq"};
                  break;
                }
              }
              if (report.witness) break;
            }
      } else {
        detail::for_tuples({n, n, n, closed_grid.size()}, spec.tuple_budget,
                           tuple_seed, [&](const auto& ix) {
          if (ix[0] == ix[1]) return true;
          CompareResult ab = pairs.at(ix[0], ix[1]);
          if (!cmp_leq(ab)) return true;
          ++evaluated;
          const Rational& alpha = closed_grid[ix[3]];
          Dist<X> ma = mix(alpha, ts[ix[0]], ts[ix[2]]);
          Dist<X> mb = mix(alpha, ts[ix[1]], ts[ix[2]]);
          CompareResult mixed = rel.compare(ma, mb);
          if (!cmp_leq(mixed)) {
            report.verdict = AxiomVerdict::Refuted;
            report.witness = W{{ts[ix[0]], ts[ix[1]], ts[ix[2]]}, alpha, {ab, mixed},
                               "A leq B but the C-mixtures do not compare leq"};
            return false;
          }
          return true;
        });
      }
      break;
    }
    case Axiom::Convexity: {
      long long full = static_cast<long long>(n) * n * n *
                       static_cast<long long>(open_grid.size());
      bool exhaustive = full >= 0 && full <= spec.tuple_budget;
      if (exhaustive) {
        for (std::size_t i = 0; i < n && !report.witness; ++i)
          for (std::size_t k = 0; k < n && !report.witness; ++k)
            for (const Rational& alpha : open_grid) {
              Dist<X> ma = mix(alpha, ts[i], ts[k]);
              for (std::size_t j = i + 1; j < n; ++j) {
                ++evaluated;
                CompareResult ab = pairs.at(i, j);
                CompareResult mixed = rel.compare(ma, mix(alpha, ts[j], ts[k]));
                if (cmp_leq(ab) != cmp_leq(mixed) || cmp_geq(ab) != cmp_geq(mixed)) {
                  report.verdict = AxiomVerdict::Refuted;
                  report.witness = W{{ts[i], ts[j], ts[k]}, alpha, {ab, mixed},
                                     "A-vs-B and mixture-vs-mixture orders disagree"};
                  break;
                }
              }
              if (report.witness) break;
            }
      } else {
        detail::for_tuples({n, n, n, open_grid.size()}, spec.tuple_budget, tuple_seed,
                           [&](const auto& ix) {
          if (ix[0] >= ix[1]) return true;
          ++evaluated;
          CompareResult ab = pairs.at(ix[0], ix[1]);
          const Rational& alpha = open_grid[ix[3]];
          Dist<X> ma = mix(alpha, ts[ix[0]], ts[ix[2]]);
          Dist<X> mb = mix(alpha, ts[ix[1]], ts[ix[2]]);
          CompareResult mixed = rel.compare(ma, mb);
          if (cmp_leq(ab) != cmp_leq(mixed) || cmp_geq(ab) != cmp_geq(mixed)) {
            report.verdict = AxiomVerdict::Refuted;
            report.witness = W{{ts[ix[0]], ts[ix[1]], ts[ix[2]]}, alpha, {ab, mixed},
                               "A-vs-B and mixture-vs-mixture orders disagree"};
            return false;
          }
          return true;
        });
      }
      break;
    }
    case Axiom::Interpolation: {
      detail::for_tuples({n, n, n}, spec.tuple_budget, tuple_seed, [&](const auto& ix) {
        CompareResult ab = pairs.at(ix[0], ix[1]);
        CompareResult bc = pairs.at(ix[1], ix[2]);
        if (!cmp_leq(ab) || !cmp_leq(bc)) return true;
        ++evaluated;
        const Dist<X>&A = ts[ix[0]], &B = ts[ix[1]], &C = ts[ix[2]];
        bool found = false;
        if (rel.linear_value()) {
          // Solve value(alpha*A + (1-alpha)*C) = value(B) exactly.
          const auto& value = *rel.value();
          Rational va = value(A), vb = value(B), vc = value(C);
          Rational alpha = (va == vc) ? Rational(1, 2) : (vc - vb) / (vc - va);
          if (alpha >= 0 && alpha <= 1 &&
              rel.compare(mix(alpha, A, C), B) == CompareResult::Equivalent)
            found = true;
        }
        if (!found) {
          for (const Rational& alpha : closed_grid) {
            if (rel.compare(mix(alpha, A, C), B) == CompareResult::Equivalent) {
              found = true;
              break;
            }
          }
        }
        if (!found) {
          report.verdict = AxiomVerdict::Refuted;
          report.witness = W{{A, B, C}, std::nullopt, {ab, bc},
                             "no alpha in the search set mixes A and C to match B"};
          return false;
        }
        return true;
      });
      break;
    }
  }
  report.tuples_checked = evaluated;
  return report;
}

// Mixture monotonicity harness: checks sum_i alpha_i A_i leq-compares to
// sum_i alpha_i B_i whenever every A_i leq B_i. A violation falsifies the
// consistency claim; tuples whose hypothesis fails pass vacuously.
template <class X>
AxiomReport<X> mixture_monotonicity_check(const Relation<X>& rel,
                                          const std::vector<Rational>& alphas,
                                          const std::vector<Dist<X>>& as,
                                          const std::vector<Dist<X>>& bs) {
  if (alphas.size() != as.size() || as.size() != bs.size() || as.empty())
    throw ContractError("mixture monotonicity needs parallel nonempty tuples");
  AxiomReport<X> report;
  report.axiom = Axiom::Consistency;
  report.testset_size = as.size();
  std::vector<CompareResult> hypothesis;
  for (std::size_t i = 0; i < as.size(); ++i) {
    CompareResult c = rel.compare(as[i], bs[i]);
    if (!cmp_leq(c)) return report;  // vacuous
    hypothesis.push_back(c);
  }
  report.tuples_checked = 1;
  std::vector<std::pair<Rational, const Dist<X>*>> ta, tb;
  for (std::size_t i = 0; i < as.size(); ++i) {
    ta.emplace_back(alphas[i], &as[i]);
    tb.emplace_back(alphas[i], &bs[i]);
  }
  Dist<X> ma = Dist<X>::combine(ta), mb = Dist<X>::combine(tb);
  CompareResult mixed = rel.compare(ma, mb);
  if (!cmp_leq(mixed)) {
    report.verdict = AxiomVerdict::Refuted;
    hypothesis.push_back(mixed);
    report.witness = AxiomWitness<X>{{ma, mb}, std::nullopt, hypothesis,
                                     "componentwise leq but mixture order broke"};
  }
  return report;
}

}  // namespace dpp
