#include "montyhall/zerosum.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>

#include "montyhall/errors.hpp"
#include "montyhall/exact_engine.hpp"

namespace monty {

namespace {

void check_strategy_dimension(int expected, const MixedStrategy& s,
                              const char* side) {
  if (static_cast<int>(s.weights.size()) != expected)
    throw InvalidArgument(std::string(side) + " strategy has " +
                          std::to_string(s.weights.size()) + " weights, matrix needs " +
                          std::to_string(expected));
}

// Per-pick lookup from opened set to its index in the canonical set order.
std::vector<std::map<DoorSet, int>> observation_indices(const GameConfig& config) {
  std::vector<std::map<DoorSet, int>> by_pick(config.n_doors);
  for (Door p = 1; p <= config.n_doors; ++p) {
    const auto sets = player_observation_sets(config, p);
    for (size_t i = 0; i < sets.size(); ++i)
      by_pick[p - 1].emplace(sets[i], static_cast<int>(i));
  }
  return by_pick;
}

PayoffMatrix build_matrix_impl(const GameConfig& config, double cap,
                               double max_entries, bool parallel) {
  const double product = player_pure_count(config) * team_pure_count(config);
  if (product > max_entries) {
    char buf[128];
    std::snprintf(buf, sizeof(buf),
                  "payoff matrix needs %.6g entries, exceeding cap %.6g",
                  product, max_entries);
    throw CapExceeded(buf, product);
  }

  PayoffMatrix matrix;
  matrix.config = config;
  matrix.row_strategies = enumerate_player_pure(config, cap);
  matrix.col_strategies = enumerate_team_pure(config, cap);
  const int rows = matrix.rows();
  const int cols = matrix.cols();
  matrix.entries.assign(static_cast<size_t>(rows) * cols, 0);

  const auto obs_index = observation_indices(config);

#pragma omp parallel for schedule(static) if (parallel)
  for (int i = 0; i < rows; ++i) {
    const auto& row = matrix.row_strategies[i];
    uint8_t* out = matrix.entries.data() + static_cast<size_t>(i) * cols;
    for (int j = 0; j < cols; ++j) {
      const auto& col = matrix.col_strategies[j];
      const DoorSet& opened = col.opens_by_pick[row.pick - 1];
      const int idx = obs_index[row.pick - 1].at(opened);
      const Door final_door = row.final_by_set[idx];
      out[j] = (final_door == col.car) ? 1 : 0;
    }
  }
  return matrix;
}

}  // namespace

Matrix PayoffMatrix::to_matrix() const {
  Matrix out(rows(), cols());
  for (size_t i = 0; i < entries.size(); ++i)
    out.data[i] = static_cast<double>(entries[i]);
  return out;
}

PayoffMatrix build_payoff_matrix(const GameConfig& config, double cap,
                                 double max_entries) {
  return build_matrix_impl(config, cap, max_entries, true);
}

PayoffMatrix build_payoff_matrix_serial(const GameConfig& config, double cap,
                                        double max_entries) {
  return build_matrix_impl(config, cap, max_entries, false);
}

SolveResult solve_minimax(const Matrix& payoff, double tol) {
  MatrixGameSolution lp = solve_matrix_game(payoff, tol);
  SolveResult result;
  result.value = lp.value;
  result.player_optimal.weights = std::move(lp.row_strategy);
  result.team_optimal.weights = std::move(lp.col_strategy);
  result.duality_gap = std::abs(lp.duality_gap);
  return result;
}

SolveResult solve_minimax(const PayoffMatrix& matrix, double tol) {
  return solve_minimax(matrix.to_matrix(), tol);
}

double security_level(const Matrix& payoff, const MixedStrategy& strategy,
                      Side side) {
  if (side == Side::kPlayer) {
    check_strategy_dimension(payoff.rows, strategy, "player");
    double worst = std::numeric_limits<double>::infinity();
#pragma omp parallel for schedule(static) reduction(min : worst) \
    if (payoff.cols >= 256)
    for (int j = 0; j < payoff.cols; ++j) {
      double v = 0.0;
      for (int i = 0; i < payoff.rows; ++i)
        v += strategy.weights[i] * payoff.at(i, j);
      worst = std::min(worst, v);
    }
    return worst;
  }
  check_strategy_dimension(payoff.cols, strategy, "team");
  double worst = -std::numeric_limits<double>::infinity();
#pragma omp parallel for schedule(static) reduction(max : worst) \
    if (payoff.rows >= 256)
  for (int i = 0; i < payoff.rows; ++i) {
    double v = 0.0;
    for (int j = 0; j < payoff.cols; ++j)
      v += payoff.at(i, j) * strategy.weights[j];
    worst = std::max(worst, v);
  }
  return worst;
}

double security_level(const PayoffMatrix& matrix, const MixedStrategy& strategy,
                      Side side) {
  return security_level(matrix.to_matrix(), strategy, side);
}

BestResponse best_response(const Matrix& payoff, const MixedStrategy& opponent,
                           Side side) {
  BestResponse best;
  if (side == Side::kPlayer) {
    check_strategy_dimension(payoff.cols, opponent, "team (opponent)");
    best.value = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < payoff.rows; ++i) {
      double v = 0.0;
      for (int j = 0; j < payoff.cols; ++j)
        v += payoff.at(i, j) * opponent.weights[j];
      if (v > best.value) {
        best.value = v;
        best.index = i;
      }
    }
    return best;
  }
  check_strategy_dimension(payoff.rows, opponent, "player (opponent)");
  best.value = std::numeric_limits<double>::infinity();
  for (int j = 0; j < payoff.cols; ++j) {
    double v = 0.0;
    for (int i = 0; i < payoff.rows; ++i)
      v += opponent.weights[i] * payoff.at(i, j);
    if (v < best.value) {
      best.value = v;
      best.index = j;
    }
  }
  return best;
}

BestResponse best_response(const PayoffMatrix& matrix,
                           const MixedStrategy& opponent, Side side) {
  return best_response(matrix.to_matrix(), opponent, side);
}

double expected_payoff(const Matrix& payoff, const MixedStrategy& row,
                       const MixedStrategy& col) {
  check_strategy_dimension(payoff.rows, row, "player");
  check_strategy_dimension(payoff.cols, col, "team");
  double total = 0.0;
  for (int i = 0; i < payoff.rows; ++i) {
    double inner = 0.0;
    for (int j = 0; j < payoff.cols; ++j)
      inner += payoff.at(i, j) * col.weights[j];
    total += row.weights[i] * inner;
  }
  return total;
}

double expected_payoff(const PayoffMatrix& matrix, const MixedStrategy& row,
                       const MixedStrategy& col) {
  return expected_payoff(matrix.to_matrix(), row, col);
}

SweepTable conditional_lower_bound_sweep(const std::vector<double>& q_grid) {
  if (q_grid.empty()) throw InvalidArgument("empty q grid");
  SweepTable table;
  table.global_min = std::numeric_limits<double>::infinity();
  const DoorSet open_low({2});
  const DoorSet open_high({3});
  for (double q : q_grid) {
    if (q < 0.0 || q > 1.0)
      throw InvalidArgument("host bias q must lie in [0,1], got " +
                            std::to_string(q));
    GameModel model = make_preset(PresetName::kHostBiased, {.q = q});
    model.player.pick = DoorDistribution::point(3, 1);
    const JointDistribution joint = joint_distribution(model);

    SweepRow row;
    row.q = q;
    row.cond_open_low = conditional_win_prob(joint, 1, open_low).win_prob;
    row.cond_open_high = conditional_win_prob(joint, 1, open_high).win_prob;
    row.minimum = std::min(row.cond_open_low, row.cond_open_high);
    row.closed_form_high = 1.0 / (1.0 + q);
    table.global_min = std::min(table.global_min, row.minimum);
    table.rows.push_back(row);
  }
  return table;
}

}  // namespace monty
