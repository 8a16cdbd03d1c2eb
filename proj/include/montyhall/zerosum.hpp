#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "montyhall/game_model.hpp"
#include "montyhall/lp.hpp"

namespace monty {

// Win-indicator matrix of the pure-strategy game: rows are complete player
// plans, columns complete team plans, entry 1 when the plan pair ends with
// the player on the car door.
struct PayoffMatrix {
  GameConfig config;
  std::vector<PurePlayerStrategy> row_strategies;
  std::vector<PureTeamStrategy> col_strategies;
  std::vector<uint8_t> entries;  // row-major

  int rows() const { return static_cast<int>(row_strategies.size()); }
  int cols() const { return static_cast<int>(col_strategies.size()); }
  int entry(int i, int j) const {
    return entries[static_cast<size_t>(i) * col_strategies.size() + j];
  }
  Matrix to_matrix() const;
};

// Matrices bigger than this stall the dense solve; the bound is separate
// from the per-side enumeration cap and can be raised by callers with time
// to spare.
inline constexpr double kDefaultMatrixEntryCap = 4e6;

// Deterministic row/column order follows the enumeration order (lexicographic
// in the strategy encodings). The OpenMP build fills rows in parallel and is
// bit-identical to build_payoff_matrix_serial, which stays as the reference.
PayoffMatrix build_payoff_matrix(const GameConfig& config,
                                 double cap = kDefaultEnumerationCap,
                                 double max_entries = kDefaultMatrixEntryCap);
PayoffMatrix build_payoff_matrix_serial(const GameConfig& config,
                                        double cap = kDefaultEnumerationCap,
                                        double max_entries = kDefaultMatrixEntryCap);

struct MixedStrategy {
  std::vector<double> weights;

  static MixedStrategy uniform(int n) {
    return {std::vector<double>(n, 1.0 / n)};
  }
};

enum class Side { kPlayer, kTeam };

struct SolveResult {
  double value = 0.0;
  MixedStrategy player_optimal;
  MixedStrategy team_optimal;
  double duality_gap = 0.0;
};

// Minimax value and optimal mixed strategies via the LP in lp.hpp. The gap
// between the two returned strategies' security levels is certified <= tol;
// otherwise SolverFailure.
SolveResult solve_minimax(const PayoffMatrix& matrix, double tol = 1e-9);
SolveResult solve_minimax(const Matrix& payoff, double tol = 1e-9);

// Worst-case expected payoff of a fixed mixed strategy: the player minimizes
// over opponent columns, the team maximizes over player rows.
double security_level(const Matrix& payoff, const MixedStrategy& strategy,
                      Side side);
double security_level(const PayoffMatrix& matrix, const MixedStrategy& strategy,
                      Side side);

struct BestResponse {
  int index = 0;    // pure strategy of the responding side; lowest index on ties
  double value = 0.0;  // expected player payoff of the reply
};

// Extremal pure reply of `side` against the opponent's mixed strategy.
BestResponse best_response(const Matrix& payoff, const MixedStrategy& opponent,
                           Side side);
BestResponse best_response(const PayoffMatrix& matrix,
                           const MixedStrategy& opponent, Side side);

// x^T A y.
double expected_payoff(const Matrix& payoff, const MixedStrategy& row,
                       const MixedStrategy& col);
double expected_payoff(const PayoffMatrix& matrix, const MixedStrategy& row,
                       const MixedStrategy& col);

// Conditional win probabilities of the switching player at each host bias q,
// for the three-door game with uniform car and the pick fixed at door 1.
// closed_form_high carries 1/(1+q), the hand-derived value at O={3}.
struct SweepRow {
  double q = 0.0;
  double cond_open_low = 0.0;   // observation O={2}
  double cond_open_high = 0.0;  // observation O={3}
  double minimum = 0.0;
  double closed_form_high = 0.0;  // 1/(1+q)
};

struct SweepTable {
  std::vector<SweepRow> rows;
  double global_min = 0.0;
};

SweepTable conditional_lower_bound_sweep(const std::vector<double>& q_grid);

}  // namespace monty
