#pragma once

#include <string>
#include <vector>

#include "overloadnet/queues.hpp"
#include "overloadnet/topology.hpp"
#include "overloadnet/utility.hpp"

namespace onet {

// Derived receiver-flow-control parameters. theta[c] is the marginal utility
// at eps; w shrinks like eps * exp(-eps/delta_max) / delta_max^2 so that the
// exponential pseudo-backlogs stay within the deterministic queue bounds.
struct UoraParams {
  double V = 0;
  double eps = 0;
  double nu_max = 0;
  double delta_max = 0;
  double w = 0;
  double q_center = 0;
  double d_max = 0;
  std::vector<double> theta;    // per class
  std::vector<double> m_bound;  // per class slope cap used in gap reporting
  std::vector<std::string> warnings;
};

// Validates inputs and derives the remaining parameters. Hard requirements
// (ConfigError): eps > 0, nu_max > 0, q_center >= nu_max, and
// V * theta_c + 2 * d_max >= w for every class. A nu_max below the
// receiver-capacity surrogate (total capacity into destination nodes + eps/2)
// only appends a warning.
UoraParams derive_uora_params(const NetworkTopology& topo,
                              const std::vector<TrafficClass>& classes, double V, double eps,
                              double nu_max, double q_center, double d_max);

// Signed pseudo-backlog advertised by the receiver of each class:
//    w * exp(w * (Z - q_center))  when Z >= q_center,
//   -w * exp(w * (q_center - Z))  otherwise.
void pseudo_backlogs(const QueueState& state, const UoraParams& p, std::vector<double>& out);
double pseudo_backlog_one(double z, double w, double q_center);

// Maximizer of V * (g(v) - theta * v) + v * pseudo over [0, nu_max], in
// closed form per utility family. A non-positive pseudo-backlog never yields
// a rate above the point where g' equals theta.
double flow_control_rate(const UtilitySpec& g, double theta, double V, double pseudo,
                         double nu_max);

// Reference maximizer of the same objective via bisection on its (monotone
// decreasing) derivative; used to cross-check the closed forms.
double flow_control_rate_bisect(const UtilitySpec& g, double theta, double V, double pseudo,
                                double nu_max);

// Bounded-slope companion of g: equal to g on [eps, inf), extended linearly
// with slope g'(eps) below eps when g' blows up at 0. The analytic utility
// gap is stated for slopes capped at m_c = g'(eps), so comparisons against
// that gap must price starvation with this function, not with g itself
// (whose value can be arbitrarily low near 0).
double bounded_slope_utility(const UtilitySpec& g, double eps, double x);

struct UtilityGapConstants {
  std::vector<double> z_max;  // per-class deterministic bound on Z
  double b1 = 0;              // additive drift constant
  double gap = 0;             // b1 / V + (3 eps / 2) * sum_c (m_c + theta_c)
};

// z_max[c] = q_center + mu_in_max + log((V theta_c + 2 d_max) / w) / w, and
// b1 extends the fixed-routing constant with the flow-control terms
//   |C| [ w (2 delta_max + eps) + e^{w (nu_max + mu_in_max)}
//         + (w eps / 2) e^{w q_center} + e^{w q_center} ].
UtilityGapConstants utility_gap_constants(const NetworkTopology& topo,
                                          const std::vector<TrafficClass>& classes,
                                          const UoraParams& p, double a_max);

}  // namespace onet
