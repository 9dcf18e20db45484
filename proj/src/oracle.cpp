#include "overloadnet/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "overloadnet/errors.hpp"
#include "overloadnet/lp.hpp"

namespace onet {
namespace {

constexpr double kTol = 1e-9;

// Shared LP skeleton for the flow relations. Variable maps hold -1 where a
// variable does not exist (disallowed link-class pair, destination overflow,
// or overflow suppressed entirely).
struct RegionLp {
  LpProblem lp;
  std::vector<int> fvar;  // [link * C + cls]
  std::vector<int> qvar;  // [node * C + cls]
  int n_classes = 0;
};

RegionLp build_region_lp(const NetworkTopology& topo, const std::vector<TrafficClass>& classes,
                         const std::vector<double>& lambda, bool with_overflow) {
  const int C = static_cast<int>(classes.size());
  const int L = topo.link_count();
  const int N = topo.node_count();
  auto mask = link_class_mask(topo, classes);

  RegionLp out;
  out.n_classes = C;
  out.fvar.assign(static_cast<size_t>(L) * C, -1);
  out.qvar.assign(static_cast<size_t>(N) * C, -1);
  for (int l = 0; l < L; ++l) {
    for (int c = 0; c < C; ++c) {
      if (mask[static_cast<size_t>(l) * C + c]) {
        out.fvar[static_cast<size_t>(l) * C + c] = out.lp.add_var();
      }
    }
  }
  if (with_overflow) {
    for (int n = 0; n < N; ++n) {
      for (int c = 0; c < C; ++c) {
        if (n != classes[c].destination) {
          out.qvar[static_cast<size_t>(n) * C + c] = out.lp.add_var();
        }
      }
    }
  }

  // Conservation at every non-destination node: inflow - outflow - overflow
  // equals -arrivals.
  for (int c = 0; c < C; ++c) {
    for (int n = 0; n < N; ++n) {
      if (n == classes[c].destination) continue;
      std::vector<std::pair<int, double>> terms;
      for (int l : topo.in_links(n)) {
        int v = out.fvar[static_cast<size_t>(l) * C + c];
        if (v >= 0) terms.emplace_back(v, 1.0);
      }
      for (int l : topo.out_links(n)) {
        int v = out.fvar[static_cast<size_t>(l) * C + c];
        if (v >= 0) terms.emplace_back(v, -1.0);
      }
      int qv = out.qvar[static_cast<size_t>(n) * C + c];
      if (qv >= 0) terms.emplace_back(qv, -1.0);
      out.lp.add_row(std::move(terms), '=', -lambda[static_cast<size_t>(n) * C + c]);
    }
  }
  for (int l = 0; l < L; ++l) {
    std::vector<std::pair<int, double>> terms;
    for (int c = 0; c < C; ++c) {
      int v = out.fvar[static_cast<size_t>(l) * C + c];
      if (v >= 0) terms.emplace_back(v, 1.0);
    }
    out.lp.add_row(std::move(terms), '<', topo.link(l).capacity);
  }
  return out;
}

// Terms of the class-c inflow at its destination.
std::vector<std::pair<int, double>> dest_inflow_terms(const RegionLp& reg,
                                                      const NetworkTopology& topo, int dest,
                                                      int c) {
  std::vector<std::pair<int, double>> terms;
  for (int l : topo.in_links(dest)) {
    int v = reg.fvar[static_cast<size_t>(l) * reg.n_classes + c];
    if (v >= 0) terms.emplace_back(v, 1.0);
  }
  return terms;
}

FlowSolution extract_solution(const RegionLp& reg, const LpResult& res,
                              const std::vector<double>& r) {
  FlowSolution sol;
  sol.f.assign(reg.fvar.size(), 0.0);
  sol.q.assign(reg.qvar.size(), 0.0);
  sol.r = r;
  for (size_t i = 0; i < reg.fvar.size(); ++i) {
    if (reg.fvar[i] >= 0) sol.f[i] = res.x[reg.fvar[i]];
  }
  for (size_t i = 0; i < reg.qvar.size(); ++i) {
    if (reg.qvar[i] >= 0) sol.q[i] = res.x[reg.qvar[i]];
  }
  return sol;
}

}  // namespace

VerifyReport verify_flow_solution(const NetworkTopology& topo,
                                  const std::vector<TrafficClass>& classes,
                                  const std::vector<double>& lambda, const FlowSolution& sol) {
  const int C = static_cast<int>(classes.size());
  auto mask = link_class_mask(topo, classes);
  auto fail = [](std::string d) { return VerifyReport{false, std::move(d)}; };

  for (size_t i = 0; i < sol.f.size(); ++i) {
    if (sol.f[i] < -kTol) return fail("negative flow entry " + std::to_string(i));
    if (!mask[i] && std::abs(sol.f[i]) > kTol) {
      return fail("flow on disallowed link-class pair " + std::to_string(i));
    }
  }
  for (size_t i = 0; i < sol.q.size(); ++i) {
    if (sol.q[i] < -kTol) return fail("negative overflow entry " + std::to_string(i));
  }

  for (int c = 0; c < C; ++c) {
    const int dest = classes[c].destination;
    for (int n = 0; n < topo.node_count(); ++n) {
      if (n == dest) continue;
      double in = 0.0, out = 0.0;
      for (int l : topo.in_links(n)) in += sol.f[static_cast<size_t>(l) * C + c];
      for (int l : topo.out_links(n)) out += sol.f[static_cast<size_t>(l) * C + c];
      double resid = lambda[static_cast<size_t>(n) * C + c] + in -
                     sol.q[static_cast<size_t>(n) * C + c] - out;
      if (std::abs(resid) > kTol) {
        return fail("conservation residual " + std::to_string(resid) + " at node " +
                    topo.node_name(n) + " class " + std::to_string(classes[c].id));
      }
    }
    double inflow = 0.0;
    for (int l : topo.in_links(dest)) inflow += sol.f[static_cast<size_t>(l) * C + c];
    if (sol.r[c] > inflow + kTol) {
      return fail("throughput exceeds destination inflow for class " +
                  std::to_string(classes[c].id));
    }
  }

  for (int l = 0; l < topo.link_count(); ++l) {
    double tot = 0.0;
    for (int c = 0; c < C; ++c) tot += sol.f[static_cast<size_t>(l) * C + c];
    if (tot > topo.link(l).capacity + kTol) {
      return fail("capacity exceeded on link " + std::to_string(l));
    }
  }
  return {};
}

std::optional<FlowSolution> region_membership(const std::vector<double>& lambda,
                                              const std::vector<double>& r,
                                              const NetworkTopology& topo,
                                              const std::vector<TrafficClass>& classes) {
  RegionLp reg = build_region_lp(topo, classes, lambda, /*with_overflow=*/true);
  for (size_t c = 0; c < classes.size(); ++c) {
    auto terms = dest_inflow_terms(reg, topo, classes[c].destination, static_cast<int>(c));
    reg.lp.add_row(std::move(terms), '>', r[c]);
  }
  LpResult res = lp_solve(reg.lp);
  if (res.status != LpStatus::kOptimal) return std::nullopt;
  return extract_solution(reg, res, r);
}

bool capacity_membership(const std::vector<double>& lambda, const NetworkTopology& topo,
                         const std::vector<TrafficClass>& classes) {
  RegionLp reg = build_region_lp(topo, classes, lambda, /*with_overflow=*/false);
  return lp_solve(reg.lp).status == LpStatus::kOptimal;
}

OptimalLinearResult optimal_linear(const std::vector<double>& weights,
                                   const std::vector<double>& lambda,
                                   const NetworkTopology& topo,
                                   const std::vector<TrafficClass>& classes) {
  const int C = static_cast<int>(classes.size());
  RegionLp reg = build_region_lp(topo, classes, lambda, /*with_overflow=*/true);
  std::vector<int> rvar(C);
  for (int c = 0; c < C; ++c) {
    rvar[c] = reg.lp.add_var(weights[c]);
    auto terms = dest_inflow_terms(reg, topo, classes[c].destination, c);
    terms.emplace_back(rvar[c], -1.0);
    // r_c - inflow <= 0, i.e. throughput is carried by real flow.
    for (auto& t : terms) t.second = -t.second;
    reg.lp.add_row(std::move(terms), '<', 0.0);
  }
  LpResult res = lp_solve(reg.lp);
  if (res.status != LpStatus::kOptimal) {
    // The region always contains r = 0, so this cannot happen on valid input.
    throw InvariantViolation("throughput region LP unexpectedly " +
                             std::string(res.status == LpStatus::kInfeasible ? "infeasible"
                                                                             : "unbounded"));
  }
  OptimalLinearResult out;
  out.value = res.objective;
  out.r.resize(C);
  for (int c = 0; c < C; ++c) out.r[c] = res.x[rvar[c]];
  out.certificate = extract_solution(reg, res, out.r);
  return out;
}

OptimalConcaveResult optimal_concave(const std::vector<TrafficClass>& classes,
                                     const std::vector<double>& lambda,
                                     const NetworkTopology& topo, double grid_step,
                                     long long budget) {
  const int C = static_cast<int>(classes.size());
  if (!(grid_step > 0.0) || !std::isfinite(grid_step)) {
    throw ConfigError("oracle.grid_step", "must be a positive number");
  }

  // Per-class maximum throughput fixes the grid extent in each coordinate.
  std::vector<long long> points(C);
  double full_grid = 1.0;
  for (int c = 0; c < C; ++c) {
    std::vector<double> e(C, 0.0);
    e[c] = 1.0;
    double r_ub = optimal_linear(e, lambda, topo, classes).value;
    points[c] = static_cast<long long>(std::floor(r_ub / grid_step + 1e-9)) + 1;
    full_grid *= static_cast<double>(points[c]);
  }
  if (full_grid > static_cast<double>(budget)) {
    throw ConfigError("oracle.grid_step",
                      "grid of about " +
                          std::to_string(static_cast<long long>(std::min(full_grid, 9.0e18))) +
                          " points exceeds the budget of " + std::to_string(budget) +
                          "; increase the step");
  }

  // Exhaustive search, organized as: enumerate the first C-1 coordinates,
  // then take the largest feasible grid value of the last coordinate (its LP
  // maximum snapped down to the grid) — identical to scanning the full grid
  // because utilities are increasing and the region is downward closed.
  std::vector<long long> idx(C, 0);
  std::vector<double> r(C, 0.0), best_r;
  double best_u = -std::numeric_limits<double>::infinity();
  bool found = false;

  for (;;) {
    for (int c = 0; c + 1 < C; ++c) r[c] = static_cast<double>(idx[c]) * grid_step;

    RegionLp reg = build_region_lp(topo, classes, lambda, /*with_overflow=*/true);
    for (int c = 0; c + 1 < C; ++c) {
      auto terms = dest_inflow_terms(reg, topo, classes[c].destination, c);
      reg.lp.add_row(std::move(terms), '>', r[c]);
    }
    {
      auto terms = dest_inflow_terms(reg, topo, classes[C - 1].destination, C - 1);
      for (auto [var, coef] : terms) reg.lp.objective[var] += coef;
    }
    LpResult res = lp_solve(reg.lp);
    if (res.status == LpStatus::kOptimal) {
      long long k = static_cast<long long>(std::floor(res.objective / grid_step + 1e-9));
      k = std::min(k, points[C - 1] - 1);
      r[C - 1] = static_cast<double>(k) * grid_step;
      double u = 0.0;
      for (int c = 0; c < C; ++c) u += classes[c].utility.value(r[c]);
      if (!found || u > best_u) {
        found = true;
        best_u = u;
        best_r = r;
      }
    }

    int d = C - 2;  // advance the prefix odometer
    while (d >= 0 && ++idx[d] == points[d]) idx[d--] = 0;
    if (d < 0) break;
  }

  if (!found) {
    // r = 0 is always achievable, so the scan cannot come up empty.
    throw InvariantViolation("grid search found no feasible throughput vector");
  }

  OptimalConcaveResult out;
  out.r = best_r;
  out.utility = best_u;
  out.grid_points = static_cast<long long>(full_grid);
  double slope_sum = 0.0;
  for (const auto& cls : classes) slope_sum += derivative_bound(cls.utility, grid_step);
  out.error_bound = grid_step * static_cast<double>(C) * slope_sum;

  auto cert = region_membership(lambda, best_r, topo, classes);
  if (!cert) {
    // Snapping already rounded down; one more step down absorbs LP roundoff.
    best_r[C - 1] = std::max(0.0, best_r[C - 1] - grid_step);
    out.r = best_r;
    out.utility = 0.0;
    for (int c = 0; c < C; ++c) out.utility += classes[c].utility.value(best_r[c]);
    cert = region_membership(lambda, best_r, topo, classes);
    if (!cert) throw InvariantViolation("grid optimum failed membership re-verification");
  }
  out.certificate = *cert;
  return out;
}

}  // namespace onet
