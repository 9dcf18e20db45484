#include "overloadnet/policy_uora.hpp"

#include <algorithm>
#include <cmath>

#include "overloadnet/errors.hpp"
#include "overloadnet/policy_ora.hpp"

namespace onet {

UoraParams derive_uora_params(const NetworkTopology& topo,
                              const std::vector<TrafficClass>& classes, double V, double eps,
                              double nu_max, double q_center, double d_max) {
  if (!(V > 0.0) || !std::isfinite(V)) throw ConfigError("policy.v", "must be a positive number");
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    throw ConfigError("policy.epsilon", "must be a positive number");
  }
  if (!(nu_max > 0.0) || !std::isfinite(nu_max)) {
    throw ConfigError("policy.nu_max", "must be a positive number");
  }
  if (!(d_max > 0.0) || !std::isfinite(d_max)) {
    throw ConfigError("policy.d_max", "must be a positive number");
  }

  UoraParams p;
  p.V = V;
  p.eps = eps;
  p.nu_max = nu_max;
  p.q_center = q_center;
  p.d_max = d_max;

  auto [in_max, out_max] = max_in_out_rates(topo);
  (void)out_max;
  p.delta_max = std::max(nu_max, in_max);
  p.w = eps / (p.delta_max * p.delta_max) * std::exp(-eps / p.delta_max);

  if (q_center < nu_max) {
    throw ConfigError("policy.q_center",
                      "must be at least nu_max (" + std::to_string(nu_max) +
                          ") so the virtual queues can absorb a full service quantum");
  }

  p.theta.reserve(classes.size());
  p.m_bound.reserve(classes.size());
  for (const auto& cls : classes) {
    double theta = cls.utility.derivative(eps);
    if (!(theta > 0.0) || !std::isfinite(theta)) {
      throw ConfigError("policy.epsilon",
                        "marginal utility of class " + std::to_string(cls.id) +
                            " at epsilon is not a positive finite number");
    }
    if (V * theta + 2.0 * d_max < p.w) {
      throw ConfigError("policy.v", "V * theta_c + 2 * d_max must be at least w for class " +
                                        std::to_string(cls.id));
    }
    p.theta.push_back(theta);
    p.m_bound.push_back(derivative_bound(cls.utility, eps));
  }

  // Feasible default for nu_max: total capacity into the destination nodes
  // plus eps/2. Falling short may starve the virtual queues; warn only.
  double into_receivers = 0.0;
  std::vector<char> is_dest(topo.node_count(), 0);
  for (const auto& cls : classes) is_dest[cls.destination] = 1;
  for (const auto& lk : topo.links()) {
    if (is_dest[lk.to]) into_receivers += lk.capacity;
  }
  double surrogate = into_receivers + eps / 2.0;
  if (nu_max < surrogate) {
    p.warnings.push_back("policy.nu_max = " + std::to_string(nu_max) +
                         " is below the receiver-capacity surrogate " +
                         std::to_string(surrogate) +
                         "; the virtual queues may not keep up with peak delivery");
  }
  return p;
}

double pseudo_backlog_one(double z, double w, double q_center) {
  if (z >= q_center) return w * std::exp(w * (z - q_center));
  return -w * std::exp(w * (q_center - z));
}

void pseudo_backlogs(const QueueState& state, const UoraParams& p, std::vector<double>& out) {
  out.resize(state.Z.size());
  for (size_t c = 0; c < state.Z.size(); ++c) {
    out[c] = pseudo_backlog_one(state.Z[c], p.w, p.q_center);
  }
}

double flow_control_rate(const UtilitySpec& g, double theta, double V, double pseudo,
                         double nu_max) {
  // Objective J(v) = V * (g(v) - theta * v) + v * pseudo is concave, so the
  // sign of J'(v) = V * (g'(v) - theta) + pseudo decides everything.
  const double s = theta - pseudo / V;  // J'(v) > 0 iff g'(v) > s
  switch (g.kind) {
    case UtilitySpec::Kind::Linear:
      return (g.weight > s) ? nu_max : 0.0;
    case UtilitySpec::Kind::Log: {
      if (s <= 0.0) return nu_max;
      return std::clamp(g.weight / s - g.shift, 0.0, nu_max);
    }
    case UtilitySpec::Kind::AlphaFair: {
      if (s <= 0.0) return nu_max;
      return std::clamp(std::pow(g.weight / s, 1.0 / g.alpha), 0.0, nu_max);
    }
  }
  return 0.0;
}

double flow_control_rate_bisect(const UtilitySpec& g, double theta, double V, double pseudo,
                                double nu_max) {
  auto deriv = [&](double v) { return V * (g.derivative(v) - theta) + pseudo; };
  if (deriv(nu_max) >= 0.0) return nu_max;
  if (deriv(0.0) <= 0.0) return 0.0;  // g'(0) may be +inf; then this is false
  double lo = 0.0, hi = nu_max;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    (deriv(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double bounded_slope_utility(const UtilitySpec& g, double eps, double x) {
  if (!unbounded_derivative_at_zero(g) || x >= eps) return g.value(x);
  return g.value(eps) - g.derivative(eps) * (eps - x);
}

UtilityGapConstants utility_gap_constants(const NetworkTopology& topo,
                                          const std::vector<TrafficClass>& classes,
                                          const UoraParams& p, double a_max) {
  UtilityGapConstants out;
  auto [in_max, out_max] = max_in_out_rates(topo);
  (void)out_max;

  double slope_sum = 0.0;
  out.z_max.reserve(classes.size());
  for (size_t c = 0; c < classes.size(); ++c) {
    double qmax = p.V * p.theta[c] + 2.0 * p.d_max;
    out.z_max.push_back(p.q_center + in_max + std::log(qmax / p.w) / p.w);
    slope_sum += p.m_bound[c] + p.theta[c];
  }

  double b = ora_gap_constant(topo, static_cast<int>(classes.size()), a_max, p.d_max);
  double ewq = std::exp(p.w * p.q_center);
  double extra = p.w * (2.0 * p.delta_max + p.eps) + std::exp(p.w * (p.nu_max + in_max)) +
                 0.5 * p.w * p.eps * ewq + ewq;
  out.b1 = b + static_cast<double>(classes.size()) * extra;
  out.gap = out.b1 / p.V + 1.5 * p.eps * slope_sum;
  return out;
}

}  // namespace onet
