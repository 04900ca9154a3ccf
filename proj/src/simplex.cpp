#include "dpp/simplex.hpp"

#include <cstdint>
#include <limits>

#include "dpp/errors.hpp"

namespace dpp {
namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

struct Tableau {
  // Each row has cols coefficient entries plus the rhs at index cols.
  std::vector<std::vector<Rational>> rows;
  std::vector<Rational> obj;  // z_j - c_j per column, current z at index cols
  std::vector<std::size_t> basis;
  std::size_t cols = 0;

  void pivot(std::size_t r, std::size_t c) {
    Rational p = rows[r][c];
    for (Rational& v : rows[r]) v /= p;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r) continue;
      Rational f = rows[i][c];
      if (f == 0) continue;
      for (std::size_t j = 0; j <= cols; ++j) rows[i][j] -= f * rows[r][j];
    }
    Rational f = obj[c];
    if (f != 0)
      for (std::size_t j = 0; j <= cols; ++j) obj[j] -= f * rows[r][j];
    basis[r] = c;
  }

  // Sets the objective row for costs c (zero beyond c.size()) given the basis.
  void load_objective(const std::vector<Rational>& c) {
    obj.assign(cols + 1, Rational(0));
    for (std::size_t j = 0; j < c.size(); ++j) obj[j] = -c[j];
    for (std::size_t i = 0; i < rows.size(); ++i) {
      Rational cb = basis[i] < c.size() ? c[basis[i]] : Rational(0);
      if (cb == 0) continue;
      for (std::size_t j = 0; j <= cols; ++j) obj[j] += cb * rows[i][j];
    }
  }

  // Bland's rule; returns false when the entering column is unbounded below.
  bool run(const std::vector<char>& allowed) {
    for (;;) {
      std::size_t enter = kNone;
      for (std::size_t j = 0; j < cols; ++j)
        if (allowed[j] && obj[j] < 0) {
          enter = j;
          break;
        }
      if (enter == kNone) return true;
      std::size_t leave = kNone;
      Rational best;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i][enter] <= 0) continue;
        Rational ratio = rows[i][cols] / rows[i][enter];
        if (leave == kNone || ratio < best ||
            (ratio == best && basis[i] < basis[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == kNone) return false;
      pivot(leave, enter);
    }
  }
};

}  // namespace

std::string to_string(LpStatus s) {
  switch (s) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    default: return "unbounded";
  }
}

LpResult solve_lp(std::size_t num_vars, const std::vector<LpConstraint>& rows_in,
                  const std::vector<Rational>& objective) {
  if (objective.size() != num_vars)
    throw ContractError("objective length does not match the variable count");
  for (const LpConstraint& row : rows_in) {
    if (row.coeffs.size() != num_vars)
      throw ContractError("constraint length does not match the variable count");
    if (row.sense != 'L' && row.sense != 'E' && row.sense != 'G')
      throw ContractError("constraint sense must be one of L, E, G");
  }

  const std::size_t m = rows_in.size();
  std::vector<std::vector<Rational>> a(m);
  std::vector<Rational> b(m);
  std::vector<char> sense(m);
  std::vector<bool> flipped(m, false);
  for (std::size_t i = 0; i < m; ++i) {
    a[i] = rows_in[i].coeffs;
    b[i] = rows_in[i].rhs;
    sense[i] = rows_in[i].sense;
    if (b[i] < 0) {
      for (Rational& v : a[i]) v = -v;
      b[i] = -b[i];
      sense[i] = sense[i] == 'L' ? 'G' : sense[i] == 'G' ? 'L' : 'E';
      flipped[i] = true;
    }
  }

  std::size_t cols = num_vars;
  std::vector<std::size_t> slack_col(m, kNone), surp_col(m, kNone), art_col(m, kNone);
  for (std::size_t i = 0; i < m; ++i) {
    if (sense[i] == 'L') slack_col[i] = cols++;
    if (sense[i] == 'G') surp_col[i] = cols++;
  }
  const std::size_t first_art = cols;
  for (std::size_t i = 0; i < m; ++i)
    if (sense[i] != 'L') art_col[i] = cols++;

  Tableau t;
  t.cols = cols;
  t.rows.assign(m, std::vector<Rational>(cols + 1, Rational(0)));
  t.basis.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < num_vars; ++j) t.rows[i][j] = a[i][j];
    if (slack_col[i] != kNone) t.rows[i][slack_col[i]] = 1;
    if (surp_col[i] != kNone) t.rows[i][surp_col[i]] = -1;
    if (art_col[i] != kNone) t.rows[i][art_col[i]] = 1;
    t.rows[i][cols] = b[i];
    t.basis[i] = sense[i] == 'L' ? slack_col[i] : art_col[i];
  }

  std::vector<char> allowed(cols, 1);
  LpResult out;

  if (first_art < cols) {
    // Phase 1: maximize minus the artificial sum.
    std::vector<Rational> phase1(cols, Rational(0));
    for (std::size_t j = first_art; j < cols; ++j) phase1[j] = -1;
    t.load_objective(phase1);
    if (!t.run(allowed))
      throw Error("phase-1 objective cannot be unbounded");
    if (t.obj[cols] < 0) {
      out.status = LpStatus::Infeasible;
      out.farkas.resize(m);
      for (std::size_t i = 0; i < m; ++i) {
        std::size_t unit = sense[i] == 'L' ? slack_col[i] : art_col[i];
        Rational y = t.obj[unit] + phase1[unit];
        out.farkas[i] = flipped[i] ? -y : y;
      }
      // The multipliers must dominate zero on every column and cut the rhs.
      for (std::size_t j = 0; j < num_vars; ++j) {
        Rational s = 0;
        for (std::size_t i = 0; i < m; ++i)
          s += out.farkas[i] * rows_in[i].coeffs[j];
        if (s < 0) throw Error("infeasibility certificate failed to verify");
      }
      Rational cut = 0;
      for (std::size_t i = 0; i < m; ++i) cut += out.farkas[i] * rows_in[i].rhs;
      if (!(cut < 0)) throw Error("infeasibility certificate failed to verify");
      return out;
    }
    // Drive remaining artificials out; a row that cannot pivot is redundant.
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
      if (t.basis[i] < first_art) {
        keep.push_back(i);
        continue;
      }
      std::size_t j = 0;
      while (j < first_art && t.rows[i][j] == 0) ++j;
      if (j < first_art) {
        t.pivot(i, j);
        keep.push_back(i);
      }
    }
    if (keep.size() < t.rows.size()) {
      std::vector<std::vector<Rational>> pruned_rows;
      std::vector<std::size_t> pruned_basis;
      for (std::size_t i : keep) {
        pruned_rows.push_back(std::move(t.rows[i]));
        pruned_basis.push_back(t.basis[i]);
      }
      t.rows = std::move(pruned_rows);
      t.basis = std::move(pruned_basis);
    }
    for (std::size_t j = first_art; j < cols; ++j) allowed[j] = 0;
  }

  t.load_objective(objective);
  if (!t.run(allowed)) {
    out.status = LpStatus::Unbounded;
    return out;
  }
  out.status = LpStatus::Optimal;
  out.solution.assign(num_vars, Rational(0));
  for (std::size_t i = 0; i < t.rows.size(); ++i)
    if (t.basis[i] < num_vars) out.solution[t.basis[i]] = t.rows[i][cols];
  out.objective = 0;
  for (std::size_t j = 0; j < num_vars; ++j)
    out.objective += objective[j] * out.solution[j];
  return out;
}

}  // namespace dpp
