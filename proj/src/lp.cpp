#include "overloadnet/lp.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>

namespace onet {
namespace {

constexpr double kTol = 1e-9;

// Dense tableau: rows express basic variables in terms of the nonbasic ones,
//   x_basic[i] = rhs[i] - sum_j T[i][j] * x_j.
struct Tableau {
  int cols = 0;  // excluding rhs
  std::vector<std::vector<double>> t;
  std::vector<double> rhs;
  std::vector<int> basic;  // basic variable of each row

  void pivot(int row, int col) {
    double piv = t[row][col];
    for (double& v : t[row]) v /= piv;
    rhs[row] /= piv;
    t[row][col] = 1.0;  // fight roundoff on the pivot itself
    for (size_t i = 0; i < t.size(); ++i) {
      if (static_cast<int>(i) == row) continue;
      double f = t[i][col];
      if (f == 0.0) continue;
      for (int j = 0; j < cols; ++j) t[i][j] -= f * t[row][j];
      t[i][col] = 0.0;
      rhs[i] -= f * rhs[row];
    }
    basic[row] = col;
  }
};

// One simplex phase minimizing cost . x. Reduced costs are recomputed from
// the cost vector every iteration instead of being carried in an objective
// row, so they cannot drift. `enterable[j]` gates which columns may enter.
// Returns false when the phase detected unboundedness.
bool run_phase(Tableau& tab, const std::vector<double>& cost, const std::vector<char>& enterable) {
  const int m = static_cast<int>(tab.t.size());
  for (;;) {
    int enter = -1;
    for (int j = 0; j < tab.cols && enter < 0; ++j) {
      if (!enterable[j]) continue;
      double d = cost[j];
      for (int i = 0; i < m; ++i) {
        if (cost[tab.basic[i]] != 0.0) d -= cost[tab.basic[i]] * tab.t[i][j];
      }
      if (d < -kTol) enter = j;  // Bland: first improving column
    }
    if (enter < 0) return true;  // optimal for this phase

    int leave = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i) {
      if (tab.t[i][enter] <= kTol) continue;
      double ratio = tab.rhs[i] / tab.t[i][enter];
      // Bland tie-break: smallest basic variable index among minimizers.
      if (ratio < best_ratio - kTol ||
          (ratio < best_ratio + kTol && (leave < 0 || tab.basic[i] < tab.basic[leave]))) {
        best_ratio = ratio;
        leave = i;
      }
    }
    if (leave < 0) return false;  // unbounded direction
    tab.pivot(leave, enter);
  }
}

}  // namespace

LpResult lp_solve(const LpProblem& p) {
  const int n = p.n_vars;
  const int m = static_cast<int>(p.rows.size());

  // Column layout: [0, n) originals, then one slack/surplus per inequality,
  // then one artificial per '>' or '=' row.
  int n_slack = 0, n_art = 0;
  for (const auto& r : p.rows) {
    // A negative rhs flips the row, turning '<' into '>' and vice versa.
    char rel = r.rel;
    if (r.rhs < 0.0) rel = (rel == '<') ? '>' : (rel == '>') ? '<' : '=';
    if (r.rel != '=') ++n_slack;
    if (rel != '<') ++n_art;
  }

  Tableau tab;
  tab.cols = n + n_slack + n_art;
  tab.t.assign(m, std::vector<double>(tab.cols, 0.0));
  tab.rhs.assign(m, 0.0);
  tab.basic.assign(m, -1);

  int slack_at = n, art_at = n + n_slack;
  for (int i = 0; i < m; ++i) {
    const auto& r = p.rows[i];
    double sign = (r.rhs < 0.0) ? -1.0 : 1.0;
    for (auto [var, coef] : r.terms) tab.t[i][var] += sign * coef;
    tab.rhs[i] = sign * r.rhs;
    char rel = r.rel;
    if (sign < 0.0) rel = (rel == '<') ? '>' : (rel == '>') ? '<' : '=';
    if (r.rel != '=') {
      tab.t[i][slack_at] = (rel == '<') ? 1.0 : -1.0;
      if (rel == '<') tab.basic[i] = slack_at;
      ++slack_at;
    }
    if (rel != '<') {
      tab.t[i][art_at] = 1.0;
      tab.basic[i] = art_at;
      ++art_at;
    }
  }

  const int first_art = n + n_slack;
  LpResult res;

  if (n_art > 0) {
    std::vector<double> cost1(tab.cols, 0.0);
    std::vector<char> enterable(tab.cols, 1);
    for (int j = first_art; j < tab.cols; ++j) {
      cost1[j] = 1.0;
      enterable[j] = 0;  // artificials never re-enter
    }
    run_phase(tab, cost1, enterable);  // bounded below by zero

    double art_sum = 0.0;
    for (int i = 0; i < m; ++i) {
      if (tab.basic[i] >= first_art) art_sum += tab.rhs[i];
    }
    if (art_sum > 1e-7) {
      res.status = LpStatus::kInfeasible;
      return res;
    }
    // Drive remaining (zero-valued) artificials out of the basis; rows that
    // cannot pivot are linearly dependent and are deleted outright.
    for (int i = static_cast<int>(tab.t.size()) - 1; i >= 0; --i) {
      if (tab.basic[i] < first_art) continue;
      int col = -1;
      for (int j = 0; j < first_art && col < 0; ++j) {
        if (std::abs(tab.t[i][j]) > kTol) col = j;
      }
      if (col >= 0) {
        tab.pivot(i, col);
      } else {
        tab.t.erase(tab.t.begin() + i);
        tab.rhs.erase(tab.rhs.begin() + i);
        tab.basic.erase(tab.basic.begin() + i);
      }
    }
  }

  std::vector<double> cost2(tab.cols, 0.0);
  std::vector<char> enterable(tab.cols, 1);
  for (int j = 0; j < n; ++j) cost2[j] = -p.objective[j];  // maximize
  for (int j = first_art; j < tab.cols; ++j) enterable[j] = 0;
  if (!run_phase(tab, cost2, enterable)) {
    res.status = LpStatus::kUnbounded;
    return res;
  }

  res.status = LpStatus::kOptimal;
  res.x.assign(n, 0.0);
  for (size_t i = 0; i < tab.basic.size(); ++i) {
    if (tab.basic[i] < n) res.x[tab.basic[i]] = tab.rhs[i];
  }
  res.objective = 0.0;
  for (int j = 0; j < n; ++j) res.objective += p.objective[j] * res.x[j];
  return res;
}

}  // namespace onet
