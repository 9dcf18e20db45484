#pragma once

#include <optional>
#include <string>
#include <vector>

#include "overloadnet/topology.hpp"
#include "overloadnet/utility.hpp"

namespace onet {

// Certificate that a throughput vector is achievable: per-link-class flow
// rates, per-node-class overflow (drop) rates, and the throughputs they
// support. Entries for disallowed (link, class) pairs are zero.
struct FlowSolution {
  std::vector<double> f;  // [link * C + cls]
  std::vector<double> q;  // [node * C + cls], zero on destination rows
  std::vector<double> r;  // [cls]
};

struct VerifyReport {
  bool ok = true;
  std::string detail;  // first violated relation when !ok
};

// Independent re-check of a certificate against the flow relations:
// nonnegativity, per-node-per-class conservation (arrivals + inflow equals
// overflow + outflow away from the destination), link capacity, and
// r_c <= inflow at the destination. All residuals are held to 1e-9.
VerifyReport verify_flow_solution(const NetworkTopology& topo,
                                  const std::vector<TrafficClass>& classes,
                                  const std::vector<double>& lambda, const FlowSolution& sol);

// Achievability of throughput vector r under arrival-rate matrix lambda
// ([node * C + cls]): feasibility of the flow relations with free overflow.
// Returns a certificate when feasible.
std::optional<FlowSolution> region_membership(const std::vector<double>& lambda,
                                              const std::vector<double>& r,
                                              const NetworkTopology& topo,
                                              const std::vector<TrafficClass>& classes);

// Membership of lambda in the no-drop capacity region: conservation must hold
// with every overflow rate pinned to zero.
bool capacity_membership(const std::vector<double>& lambda, const NetworkTopology& topo,
                         const std::vector<TrafficClass>& classes);

struct OptimalLinearResult {
  std::vector<double> r;
  double value = 0;
  FlowSolution certificate;
};

// Maximizes weights . r over the achievable region (a plain LP).
OptimalLinearResult optimal_linear(const std::vector<double>& weights,
                                   const std::vector<double>& lambda,
                                   const NetworkTopology& topo,
                                   const std::vector<TrafficClass>& classes);

struct OptimalConcaveResult {
  std::vector<double> r;
  double utility = 0;
  double error_bound = 0;      // grid_step * |C| * sum_c m_c(grid_step)
  long long grid_points = 0;   // size of the conceptual full grid
  FlowSolution certificate;
};

// Maximizes sum_c g_c(r_c) over grid points of spacing grid_step inside the
// achievable region. Equivalent to exhaustive search over the full grid: for
// each prefix of the first |C|-1 coordinates, the last coordinate's best grid
// value is the LP maximum snapped down to the grid (utilities increase).
// Throws ConfigError when the full grid would exceed `budget` points. The
// returned utility is a lower bound on the true optimum within error_bound.
OptimalConcaveResult optimal_concave(const std::vector<TrafficClass>& classes,
                                     const std::vector<double>& lambda,
                                     const NetworkTopology& topo, double grid_step,
                                     long long budget = 10000000);

}  // namespace onet
