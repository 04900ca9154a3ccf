#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "dpp/rational.hpp"

namespace dpp {

enum class LpStatus { Optimal, Infeasible, Unbounded };

std::string to_string(LpStatus s);

// One linear row: coeffs . x (sense) rhs, with sense 'L' (<=), 'E' (=), 'G' (>=).
struct LpConstraint {
  std::vector<Rational> coeffs;
  char sense = 'L';
  Rational rhs;
};

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  std::vector<Rational> solution;  // primal point, when Optimal
  Rational objective;              // objective . solution, when Optimal
  // When Infeasible: one multiplier per row (>= 0 for 'L', <= 0 for 'G', free
  // for 'E') with sum_i y_i a_i >= 0 componentwise and y . b < 0, certifying
  // that { x >= 0 : all rows hold } is empty.
  std::vector<Rational> farkas;
};

// Maximizes objective . x over { x >= 0 : every row holds }, in exact rational
// arithmetic. Two-phase tableau simplex under Bland's rule, so it terminates
// on degenerate instances too. Deterministic.
LpResult solve_lp(std::size_t num_vars, const std::vector<LpConstraint>& rows,
                  const std::vector<Rational>& objective);

}  // namespace dpp
