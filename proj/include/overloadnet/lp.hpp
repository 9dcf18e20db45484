#pragma once

#include <utility>
#include <vector>

namespace onet {

// Maximize objective . x over x >= 0 subject to sparse linear rows. Rows use
// rel '<' for <=, '>' for >=, '=' for equality.
struct LpProblem {
  struct Row {
    std::vector<std::pair<int, double>> terms;  // (variable, coefficient)
    char rel = '<';
    double rhs = 0;
  };

  int n_vars = 0;
  std::vector<double> objective;
  std::vector<Row> rows;

  int add_var(double obj = 0.0) {
    objective.push_back(obj);
    return n_vars++;
  }
  void add_row(std::vector<std::pair<int, double>> terms, char rel, double rhs) {
    rows.push_back(Row{std::move(terms), rel, rhs});
  }
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

struct LpResult {
  LpStatus status = LpStatus::kInfeasible;
  double objective = 0;
  std::vector<double> x;
};

// Two-phase dense-tableau simplex with Bland's pivot rule (deterministic,
// cycle-free). Tolerance 1e-9; meant for desk-scale problems, not large ones.
LpResult lp_solve(const LpProblem& p);

}  // namespace onet
