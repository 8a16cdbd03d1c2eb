#pragma once

#include <vector>

namespace monty {

// Dense row-major matrix of player payoffs (row player maximizes).
struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(int r, int c) : rows(r), cols(c), data(static_cast<size_t>(r) * c, 0.0) {}

  double& at(int i, int j) { return data[static_cast<size_t>(i) * cols + j]; }
  double at(int i, int j) const { return data[static_cast<size_t>(i) * cols + j]; }
};

struct MatrixGameSolution {
  double value = 0.0;
  std::vector<double> row_strategy;
  std::vector<double> col_strategy;
  double maximin = 0.0;      // worst-case payoff of row_strategy
  double minimax = 0.0;      // worst-case payoff conceded by col_strategy
  double duality_gap = 0.0;  // minimax - maximin, certified on the input matrix
  int iterations = 0;
};

// Solves the zero-sum matrix game by primal simplex on the bounded form
//   max 1.y  s.t.  (A + shift) y <= 1,  y >= 0,
// with the row player's strategy read off the dual values. The returned
// strategies are re-certified directly on the input matrix; if the gap
// between their security levels exceeds tol the solve fails loudly
// (SolverFailure) rather than returning an uncertified value.
//
// Pivot row-elimination runs under OpenMP once the tableau is large enough;
// results are bit-identical to the serial path because every row update is
// independent. parallel_pivots=false forces the serial reference.
MatrixGameSolution solve_matrix_game(const Matrix& payoff, double tol = 1e-9,
                                     bool parallel_pivots = true);

}  // namespace monty
