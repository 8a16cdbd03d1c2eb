#include "montyhall/lp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "montyhall/errors.hpp"

namespace monty {

namespace {

constexpr double kEnterEps = 1e-12;  // reduced cost threshold
constexpr double kPivotEps = 1e-11;  // minimum usable pivot magnitude
constexpr int kParallelRowThreshold = 64;

// One Gauss-Jordan pivot on the (m+1) x width tableau (objective row last).
// Rows other than the pivot row update independently.
void pivot(std::vector<double>& t, int n_rows, int width, int pr, int pc,
           bool parallel) {
  double* tab = t.data();
  double* prow = tab + static_cast<size_t>(pr) * width;
  const double inv = 1.0 / prow[pc];
  for (int j = 0; j < width; ++j) prow[j] *= inv;
  prow[pc] = 1.0;

#pragma omp parallel for if (parallel && n_rows >= kParallelRowThreshold)
  for (int r = 0; r < n_rows; ++r) {
    if (r == pr) continue;
    double* row = tab + static_cast<size_t>(r) * width;
    const double factor = row[pc];
    if (factor == 0.0) continue;
    for (int j = 0; j < width; ++j) row[j] -= factor * prow[j];
    row[pc] = 0.0;
  }
}

double security_min_over_cols(const Matrix& a, const std::vector<double>& x) {
  double worst = std::numeric_limits<double>::infinity();
  for (int j = 0; j < a.cols; ++j) {
    double v = 0.0;
    for (int i = 0; i < a.rows; ++i) v += x[i] * a.at(i, j);
    worst = std::min(worst, v);
  }
  return worst;
}

double security_max_over_rows(const Matrix& a, const std::vector<double>& y) {
  double worst = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < a.rows; ++i) {
    double v = 0.0;
    for (int j = 0; j < a.cols; ++j) v += a.at(i, j) * y[j];
    worst = std::max(worst, v);
  }
  return worst;
}

void clip_and_normalize(std::vector<double>& w) {
  double sum = 0.0;
  for (double& x : w) {
    if (x < 0.0) x = 0.0;
    sum += x;
  }
  if (sum <= 0.0) throw SolverFailure("degenerate strategy weights", 0.0, 0.0);
  for (double& x : w) x /= sum;
}

struct LpStrategies {
  std::vector<double> row_strategy;
  std::vector<double> col_strategy;
  int iterations = 0;
};

LpStrategies simplex_core(const Matrix& payoff, bool parallel_pivots) {
  const int m = payoff.rows;
  const int n = payoff.cols;

  // Shift so every entry is >= 1; keeps the feasible region bounded and the
  // game value positive, which the reciprocal transform needs.
  double lo = payoff.data[0];
  for (double v : payoff.data) lo = std::min(lo, v);
  const double shift = 1.0 - lo;

  // Tableau rows: m constraints (B y <= 1) then the objective (max sum y).
  const int width = n + m + 1;
  std::vector<double> tab(static_cast<size_t>(m + 1) * width, 0.0);
  for (int i = 0; i < m; ++i) {
    double* row = tab.data() + static_cast<size_t>(i) * width;
    for (int j = 0; j < n; ++j) row[j] = payoff.at(i, j) + shift;
    row[n + i] = 1.0;
    row[width - 1] = 1.0;
  }
  double* obj = tab.data() + static_cast<size_t>(m) * width;
  for (int j = 0; j < n; ++j) obj[j] = -1.0;

  std::vector<int> basis(m);
  for (int i = 0; i < m; ++i) basis[i] = n + i;

  const int bland_after = 50 * (m + n) + 1000;
  const int max_iterations = 1000 * (m + n) + 10000;
  int iterations = 0;
  while (true) {
    // entering column: most negative reduced cost (Bland's rule once the
    // iteration count suggests cycling)
    int enter = -1;
    if (iterations <= bland_after) {
      double best = -kEnterEps;
      for (int j = 0; j < width - 1; ++j) {
        if (obj[j] < best) {
          best = obj[j];
          enter = j;
        }
      }
    } else {
      for (int j = 0; j < width - 1; ++j) {
        if (obj[j] < -kEnterEps) {
          enter = j;
          break;
        }
      }
    }
    if (enter < 0) break;  // optimal

    int leave = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i) {
      const double coeff = tab[static_cast<size_t>(i) * width + enter];
      if (coeff <= kPivotEps) continue;
      const double ratio = tab[static_cast<size_t>(i) * width + width - 1] / coeff;
      if (ratio < best_ratio - 1e-15 ||
          (ratio <= best_ratio + 1e-15 && (leave < 0 || basis[i] < basis[leave]))) {
        best_ratio = ratio;
        leave = i;
      }
    }
    if (leave < 0)
      throw SolverFailure("simplex detected an unbounded direction", 0.0, 0.0);

    pivot(tab, m + 1, width, leave, enter, parallel_pivots);
    basis[leave] = enter;

    if (++iterations > max_iterations)
      throw SolverFailure("simplex failed to converge within iteration limit",
                          std::abs(obj[width - 1]), 0.0);
  }

  // Column player's variables from the basis, row player's from the duals
  // (reduced costs of the slack columns).
  LpStrategies out;
  out.iterations = iterations;
  out.col_strategy.assign(n, 0.0);
  for (int i = 0; i < m; ++i)
    if (basis[i] < n)
      out.col_strategy[basis[i]] = tab[static_cast<size_t>(i) * width + width - 1];
  out.row_strategy.assign(m, 0.0);
  for (int i = 0; i < m; ++i) out.row_strategy[i] = obj[n + i];
  clip_and_normalize(out.row_strategy);
  clip_and_normalize(out.col_strategy);
  return out;
}

}  // namespace

MatrixGameSolution solve_matrix_game(const Matrix& payoff, double tol,
                                     bool parallel_pivots) {
  if (payoff.rows < 1 || payoff.cols < 1)
    throw InvalidArgument("empty payoff matrix");
  if (tol <= 0.0) throw InvalidArgument("tolerance must be positive");

  // The tableau carries one constraint row per row strategy; when the row
  // side is larger, solve the transposed game (negated payoffs swap the
  // players) and swap the strategies back.
  LpStrategies lp;
  if (payoff.rows <= payoff.cols) {
    lp = simplex_core(payoff, parallel_pivots);
  } else {
    Matrix transposed(payoff.cols, payoff.rows);
    for (int i = 0; i < payoff.rows; ++i)
      for (int j = 0; j < payoff.cols; ++j)
        transposed.at(j, i) = -payoff.at(i, j);
    LpStrategies swapped = simplex_core(transposed, parallel_pivots);
    lp.row_strategy = std::move(swapped.col_strategy);
    lp.col_strategy = std::move(swapped.row_strategy);
    lp.iterations = swapped.iterations;
  }

  MatrixGameSolution solution;
  solution.iterations = lp.iterations;
  solution.row_strategy = std::move(lp.row_strategy);
  solution.col_strategy = std::move(lp.col_strategy);

  // Certify on the input matrix, not on solver internals.
  solution.maximin = security_min_over_cols(payoff, solution.row_strategy);
  solution.minimax = security_max_over_rows(payoff, solution.col_strategy);
  solution.duality_gap = solution.minimax - solution.maximin;
  solution.value = 0.5 * (solution.maximin + solution.minimax);

  if (!(std::abs(solution.duality_gap) <= tol)) {
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "simplex finished but the duality gap %.3e exceeds tol %.3e "
                  "(maximin %.12g, minimax %.12g)",
                  solution.duality_gap, tol, solution.maximin, solution.minimax);
    throw SolverFailure(buf, solution.value - solution.maximin,
                        solution.minimax - solution.value);
  }
  return solution;
}

}  // namespace monty
