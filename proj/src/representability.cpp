#include "dpp/representability.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "dpp/simplex.hpp"

namespace dpp {
namespace {

constexpr int kCalibrationSteps = 4096;

std::string member_label(std::size_t i, std::size_t j) {
  return "testset members " + std::to_string(i) + " vs " + std::to_string(j);
}

// Pairwise comparisons over a fixed testset, precomputing the relation's value
// functional when it exposes one. Incomparable is a totality failure.
class Oracle {
 public:
  Oracle(const TrajRelation& rel, const std::vector<TrajDist>& ts)
      : rel_(rel), ts_(ts) {
    if (const auto* v = rel.value()) {
      vals_.reserve(ts.size());
      for (const TrajDist& d : ts) vals_.push_back((*v)(d));
    }
  }

  CompareResult at(std::size_t i, std::size_t j) const {
    CompareResult c = vals_.empty() ? rel_.compare(ts_[i], ts_[j])
                                    : compare_values(vals_[i], vals_[j]);
    if (c == CompareResult::Incomparable)
      throw NotTotalError("comparison answered Incomparable while fitting",
                          member_label(i, j));
    return c;
  }

 private:
  const TrajRelation& rel_;
  const std::vector<TrajDist>& ts_;
  std::vector<Rational> vals_;
};

// Mediant (Stern-Brocot) search for the alpha making target equivalent to
// alpha * best + (1 - alpha) * worst. Exact when such a rational alpha exists
// and it is reached within the step budget; empty otherwise.
std::optional<Rational> calibrate(const TrajRelation& rel, const TrajDist& target,
                                  const TrajDist& best, const TrajDist& worst,
                                  const std::string& label) {
  if (rel.linear_value()) {
    const auto* v = rel.value();
    Rational vb = (*v)(best), vw = (*v)(worst);
    if (vb == vw) return std::nullopt;
    return ((*v)(target) - vw) / (vb - vw);
  }
  BigInt ln = 0, ld = 1, hn = 1, hd = 1;
  for (int step = 0; step < kCalibrationSteps; ++step) {
    Rational med(ln + hn, ld + hd);
    CompareResult c = rel.compare(target, mix(med, best, worst));
    if (c == CompareResult::Incomparable)
      throw NotTotalError("comparison answered Incomparable while fitting", label);
    if (c == CompareResult::Equivalent) return med;
    if (c == CompareResult::Less) {
      hn = ln + hn;
      hd = ld + hd;
    } else {
      ln = ln + hn;
      ld = ld + hd;
    }
  }
  return std::nullopt;
}

}  // namespace

std::string to_string(FitVerdict v) {
  switch (v) {
    case FitVerdict::Representable: return "representable";
    case FitVerdict::RefutedOnTestset: return "refuted-on-testset";
    default: return "infeasible";
  }
}

TrajectoryFit fit_utility(const TrajRelation& rel,
                          const std::vector<Trajectory>& omega,
                          const TestsetSpec& spec) {
  if (omega.empty()) throw ContractError("utility fitting needs a nonempty trajectory set");
  const std::size_t n = omega.size();
  std::vector<TrajDist> diracs;
  diracs.reserve(n);
  for (const Trajectory& w : omega) diracs.push_back(TrajDist::dirac(w));
  Oracle points(rel, diracs);

  std::vector<std::vector<CompareResult>> comp(
      n, std::vector<CompareResult>(n, CompareResult::Equivalent));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      comp[i][j] = points.at(i, j);
      comp[j][i] = cmp_flip(comp[i][j]);
    }

  // Reachability along non-strict steps, with parents for chain rebuilding.
  std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
  std::vector<std::vector<int>> parent(n, std::vector<int>(n, -1));
  for (std::size_t s = 0; s < n; ++s) {
    std::vector<std::size_t> queue{s};
    reach[s][s] = 1;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      std::size_t v = queue[qi];
      for (std::size_t w = 0; w < n; ++w)
        if (!reach[s][w] && cmp_leq(comp[v][w])) {
          reach[s][w] = 1;
          parent[s][w] = static_cast<int>(v);
          queue.push_back(w);
        }
    }
  }

  TrajectoryFit out;
  out.margin = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (comp[i][j] == CompareResult::Less && reach[j][i]) {
        // Closed chain: omega[i] strictly below omega[j], then back to omega[i].
        out.verdict = FitVerdict::Infeasible;
        out.cycle.push_back(omega[i]);
        std::vector<std::size_t> path{i};
        while (path.back() != j)
          path.push_back(static_cast<std::size_t>(parent[j][path.back()]));
        for (std::size_t k = path.size(); k-- > 0;) out.cycle.push_back(omega[path[k]]);
        return out;
      }

  std::vector<std::size_t> below(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (comp[j][i] == CompareResult::Less) ++below[i];
  std::vector<std::size_t> levels(below);
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  auto rank_of = [&](std::size_t i) {
    return static_cast<std::size_t>(
        std::lower_bound(levels.begin(), levels.end(), below[i]) - levels.begin());
  };
  const std::size_t R = levels.size();

  std::vector<Rational> u(n, Rational(0));
  if (R > 1) {
    std::size_t best = n, worst = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (best == n && rank_of(i) == R - 1) best = i;
      if (worst == n && rank_of(i) == 0) worst = i;
    }
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t r = rank_of(i);
      if (r == 0) continue;
      if (r == R - 1) {
        u[i] = 1;
        continue;
      }
      std::optional<Rational> alpha =
          calibrate(rel, diracs[i], diracs[best], diracs[worst],
                    "calibration of trajectory " + std::to_string(i));
      u[i] = alpha ? *alpha : Rational(static_cast<long long>(r),
                                       static_cast<long long>(R - 1));
    }
    bool first = true;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (comp[i][j] == CompareResult::Less) {
          Rational gap = u[j] - u[i];
          if (first || gap < out.margin) out.margin = gap;
          first = false;
        }
  }

  std::map<Trajectory, Rational> table;
  for (std::size_t i = 0; i < n; ++i) table.emplace(omega[i], u[i]);
  out.utility = table;

  std::vector<TrajDist> ts = build_testset(omega, spec);
  std::vector<Rational> induced;
  induced.reserve(ts.size());
  for (const TrajDist& d : ts) {
    Rational v = 0;
    for (const auto& [w, p] : d.entries()) v += p * table.at(w);
    induced.push_back(v);
  }
  Oracle oracle(rel, ts);
  for (std::size_t i = 0; i < ts.size(); ++i)
    for (std::size_t j = i + 1; j < ts.size(); ++j)
      if (oracle.at(i, j) != compare_values(induced[i], induced[j])) {
        out.verdict = FitVerdict::RefutedOnTestset;
        out.witness = {ts[i], ts[j]};
        return out;
      }
  out.verdict = FitVerdict::Representable;
  return out;
}

FeatureFit fit_feature_reward(const TrajRelation& rel, const FeatureMap& phi,
                              const GammaWeights& gamma,
                              const std::vector<Trajectory>& omega,
                              const TestsetSpec& spec) {
  if (omega.empty()) throw ContractError("reward fitting needs a nonempty trajectory set");
  const std::size_t horizon = gamma.weights.size();
  for (const Trajectory& w : omega)
    if (w.length() < horizon)
      throw ContractError("trajectory shorter than the gamma horizon");

  std::vector<TrajDist> train = build_testset(omega, spec);
  std::vector<Dist<FAKey>> fs;
  fs.reserve(train.size());
  for (const TrajDist& d : train)
    fs.push_back(*frequency(phi, gamma, 0, horizon, d).dist);

  // Group members sharing a frequency vector; one LP unknown block serves all.
  std::map<std::vector<Dist<FAKey>::Entry>, std::size_t> group_of;
  std::vector<std::size_t> rep;
  std::vector<std::size_t> member_group(train.size());
  for (std::size_t i = 0; i < train.size(); ++i) {
    auto [it, fresh] = group_of.emplace(fs[i].entries(), rep.size());
    if (fresh) rep.push_back(i);
    member_group[i] = it->second;
  }

  Oracle oracle(rel, train);
  FeatureFit out;
  out.margin = 0;

  // Equal frequencies must be equivalent, or no frequency reward can work.
  for (std::size_t i = 0; i < train.size(); ++i) {
    std::size_t r = rep[member_group[i]];
    if (r == i) continue;
    if (oracle.at(r, i) != CompareResult::Equivalent) {
      out.verdict = FitVerdict::RefutedOnTestset;
      out.witness = {train[r], train[i]};
      return out;
    }
  }

  const std::size_t G = rep.size();
  std::vector<std::vector<CompareResult>> comp(
      G, std::vector<CompareResult>(G, CompareResult::Equivalent));
  for (std::size_t a = 0; a < G; ++a)
    for (std::size_t b = a + 1; b < G; ++b) {
      comp[a][b] = oracle.at(rep[a], rep[b]);
      comp[b][a] = cmp_flip(comp[a][b]);
    }
  std::vector<std::size_t> below(G, 0);
  for (std::size_t a = 0; a < G; ++a)
    for (std::size_t b = 0; b < G; ++b)
      if (comp[b][a] == CompareResult::Less) ++below[a];
  std::vector<std::size_t> levels(below);
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  const std::size_t R = levels.size();
  std::vector<std::vector<std::size_t>> by_level(R);
  for (std::size_t a = 0; a < G; ++a)
    by_level[std::lower_bound(levels.begin(), levels.end(), below[a]) -
             levels.begin()]
        .push_back(a);

  std::set<FAKey> kset;
  for (const Dist<FAKey>& f : fs)
    for (const auto& [k, p] : f.entries()) kset.insert(k);
  std::vector<FAKey> keys(kset.begin(), kset.end());
  std::map<FAKey, std::size_t> kidx;
  for (std::size_t k = 0; k < keys.size(); ++k) kidx.emplace(keys[k], k);

  const std::size_t nr = keys.size();
  std::map<FAKey, Rational> reward;
  Rational margin(0);
  bool fitted = false;
  auto value_with = [&](const std::map<FAKey, Rational>& r, std::size_t member) {
    Rational v = 0;
    for (const auto& [k, p] : fs[member].entries()) v += p * r.at(k);
    return v;
  };
  auto min_strict_gap = [&](const std::map<FAKey, Rational>& r) {
    std::optional<Rational> gap;
    for (std::size_t l = 0; l + 1 < R; ++l) {
      Rational g = value_with(r, rep[by_level[l + 1][0]]) -
                   value_with(r, rep[by_level[l][0]]);
      if (!gap || g < *gap) gap = g;
    }
    return gap ? *gap : Rational(0);
  };

  // Phase A: elicit a normalized value per group against best/worst mixtures
  // and fit those values exactly, up to a positive scale a and a shift d.
  // Matching values rather than orderings is what makes held-out mixtures
  // agree: the fitted functional is then linear across the whole simplex.
  if (R >= 2) {
    const TrajDist& top = train[rep[by_level.back()[0]]];
    const TrajDist& bottom = train[rep[by_level.front()[0]]];
    std::vector<Rational> val(G, Rational(0));
    bool calibrated = true;
    for (std::size_t l = 0; l < R && calibrated; ++l)
      for (std::size_t g : by_level[l]) {
        if (l == 0) continue;
        if (l == R - 1) {
          val[g] = 1;
          continue;
        }
        std::optional<Rational> alpha = calibrate(
            rel, train[rep[g]], top, bottom,
            "calibration of testset member " + std::to_string(rep[g]));
        if (!alpha) {
          calibrated = false;
          break;
        }
        val[g] = *alpha;
      }
    if (calibrated) {
      const std::size_t nv = nr + 2;  // per-key reward, shift d, scale a
      std::vector<LpConstraint> rows;
      for (std::size_t k = 0; k < nv; ++k) {
        std::vector<Rational> e(nv, Rational(0));
        e[k] = 1;
        rows.push_back({std::move(e), 'L', Rational(1)});
      }
      for (std::size_t g = 0; g < G; ++g) {
        std::vector<Rational> row(nv, Rational(0));
        for (const auto& [k, p] : fs[rep[g]].entries()) row[kidx.at(k)] += p;
        row[nr] = -1;
        row[nr + 1] = -val[g];
        rows.push_back({std::move(row), 'E', Rational(0)});
      }
      std::vector<Rational> objective(nv, Rational(0));
      objective[nr + 1] = 1;
      LpResult lp = solve_lp(nv, rows, objective);
      if (lp.status == LpStatus::Optimal && lp.solution[nr + 1] > 0) {
        std::map<FAKey, Rational> cand;
        for (std::size_t k = 0; k < nr; ++k)
          cand.emplace(keys[k], lp.solution[k] - lp.solution[nr]);
        Rational gap = min_strict_gap(cand);
        if (gap > 0) {
          reward = std::move(cand);
          margin = gap;
          fitted = true;
        }
      }
    }
  }

  // Phase B: order constraints only (equal levels chained, consecutive levels
  // separated by a shared maximized margin). Looser than phase A; the
  // verification pass below decides the verdict either way.
  if (!fitted && R >= 2) {
    const std::size_t nv = nr + 1;
    auto diff_row = [&](std::size_t lo, std::size_t hi) {
      std::vector<Rational> row(nv, Rational(0));
      for (const auto& [k, p] : fs[rep[hi]].entries()) row[kidx.at(k)] += p;
      for (const auto& [k, p] : fs[rep[lo]].entries()) row[kidx.at(k)] -= p;
      return row;
    };
    std::vector<LpConstraint> rows;
    for (std::size_t k = 0; k < nv; ++k) {
      std::vector<Rational> e(nv, Rational(0));
      e[k] = 1;
      rows.push_back({std::move(e), 'L', Rational(1)});
    }
    for (const std::vector<std::size_t>& lvl : by_level)
      for (std::size_t k = 0; k + 1 < lvl.size(); ++k)
        rows.push_back({diff_row(lvl[k], lvl[k + 1]), 'E', Rational(0)});
    for (std::size_t l = 0; l + 1 < R; ++l) {
      std::vector<Rational> row = diff_row(by_level[l][0], by_level[l + 1][0]);
      row[nr] = -1;
      rows.push_back({std::move(row), 'G', Rational(0)});
    }
    std::vector<Rational> objective(nv, Rational(0));
    objective[nr] = 1;
    LpResult lp = solve_lp(nv, rows, objective);
    if (lp.status != LpStatus::Optimal)
      throw Error("reward fitting linear program must be solvable");
    for (std::size_t k = 0; k < nr; ++k) reward.emplace(keys[k], lp.solution[k]);
    margin = lp.solution[nr];
    if (margin <= 0) {
      out.reward = reward;
      out.margin = margin;
      for (std::size_t l = 0; l + 1 < R; ++l) {
        std::size_t lo = rep[by_level[l][0]], hi = rep[by_level[l + 1][0]];
        if (value_with(reward, hi) - value_with(reward, lo) <= 0) {
          out.verdict = FitVerdict::RefutedOnTestset;
          out.witness = {train[lo], train[hi]};
          return out;
        }
      }
      throw Error("zero margin without a tight strict pair");
    }
  }
  if (R < 2)
    for (const FAKey& k : keys) reward.emplace(k, Rational(0));
  out.reward = reward;
  out.margin = margin;

  TestsetSpec held = spec;
  held.seed = spec.seed + 1;
  held.alphas = {Rational(1, 3), Rational(2, 3), Rational(1, 5)};
  std::vector<TrajDist> verify = train;
  {
    std::vector<TrajDist> extra = build_testset(omega, held);
    for (std::size_t i = omega.size(); i < extra.size(); ++i)
      verify.push_back(std::move(extra[i]));
  }
  std::vector<Rational> induced;
  induced.reserve(verify.size());
  for (const TrajDist& d : verify) {
    Dist<FAKey> f = *frequency(phi, gamma, 0, horizon, d).dist;
    Rational v = 0;
    for (const auto& [k, p] : f.entries()) {
      auto it = kidx.find(k);
      if (it == kidx.end())
        throw ContractError("tested distribution visits an unfitted feature-action pair");
      v += p * reward.at(k);
    }
    induced.push_back(v);
  }
  Oracle voracle(rel, verify);
  for (std::size_t i = 0; i < verify.size(); ++i)
    for (std::size_t j = i + 1; j < verify.size(); ++j)
      if (voracle.at(i, j) != compare_values(induced[i], induced[j])) {
        out.verdict = FitVerdict::RefutedOnTestset;
        out.witness = {verify[i], verify[j]};
        return out;
      }
  out.verdict = FitVerdict::Representable;
  return out;
}

}  // namespace dpp
