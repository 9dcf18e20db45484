#include "overloadnet/sim.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "overloadnet/errors.hpp"
#include "overloadnet/policy_ora.hpp"
#include "overloadnet/policy_uora.hpp"
#include "overloadnet/queues.hpp"
#include "overloadnet/rng.hpp"

namespace onet {

void validate_experiment(const ExperimentConfig& cfg) {
  if (cfg.policy.name != "ora" && cfg.policy.name != "uora") {
    throw ConfigError("policy.name",
                      "unknown policy '" + cfg.policy.name + "' (expected ora or uora)");
  }
  if (!(cfg.policy.V > 0.0) || !std::isfinite(cfg.policy.V)) {
    throw ConfigError("policy.v", "must be a positive number");
  }
  if (cfg.run.slots < 1) throw ConfigError("run.slots", "must be at least 1");
  if (cfg.run.stride < 0) {
    throw ConfigError("run.stride", "must be nonnegative (0 disables time-series sampling)");
  }
  if (!cfg.arrivals.finalized()) throw ConfigError("arrivals", "schedule was not finalized");
  if (cfg.arrivals.n_nodes() != cfg.topology.node_count() ||
      cfg.arrivals.n_classes() != static_cast<int>(cfg.classes.size())) {
    throw ConfigError("arrivals", "schedule dimensions do not match topology/classes");
  }
  if (static_cast<std::uint64_t>(cfg.run.slots) > cfg.arrivals.horizon()) {
    throw ConfigError("run.slots", "exceeds the arrival schedule horizon of " +
                                       std::to_string(cfg.arrivals.horizon()));
  }
  for (size_t i = 0; i < cfg.run.intervals.size(); ++i) {
    auto [lo, hi] = cfg.run.intervals[i];
    if (lo < 0 || hi <= lo || hi > cfg.run.slots) {
      throw ConfigError("run.intervals[" + std::to_string(i) + "]",
                        "must satisfy 0 <= start < end <= slots");
    }
  }

  auto [in_max, out_max] = max_in_out_rates(cfg.topology);
  (void)out_max;
  DmaxCheck chk = validate_dmax(cfg.policy.d_max, cfg.arrivals.a_max(), in_max);
  if (!chk.ok) {
    throw ConfigError("policy.d_max",
                      "must be at least a_max + mu_in_max = " + std::to_string(chk.required));
  }

  if (cfg.policy.name == "ora") {
    for (size_t i = 0; i < cfg.classes.size(); ++i) {
      if (!cfg.classes[i].utility.is_linear()) {
        throw ConfigError("classes[" + std::to_string(i) + "].utility.kind",
                          "policy ora maximizes weighted throughput and requires linear "
                          "utilities");
      }
      if (!(cfg.classes[i].utility.weight > 0.0)) {
        throw ConfigError("classes[" + std::to_string(i) + "].utility.weight",
                          "policy ora requires a positive weight");
      }
    }
  } else {
    // Surfaces parameter errors before any slot runs.
    derive_uora_params(cfg.topology, cfg.classes, cfg.policy.V, cfg.policy.eps,
                       cfg.policy.nu_max, cfg.policy.q_center, cfg.policy.d_max);
  }
}

namespace {

struct Bounds {
  std::vector<double> q_hi, d_hi, d_lo;  // per class
};

[[noreturn]] void bound_failure(const char* what, long long slot, const std::string& where,
                                double value, double limit) {
  throw InvariantViolation(std::string(what) + " violated at slot " + std::to_string(slot) +
                           " (" + where + "): value " + std::to_string(value) + " vs limit " +
                           std::to_string(limit));
}

void check_slot(const ExperimentConfig& cfg, const QueueState& st, const SlotLedger& led,
                const ConservationAccount& acct, const Bounds& b,
                const std::vector<double>& z_bound, long long t) {
  const int C = st.n_classes;
  constexpr double kTol = 1e-9;
  for (int n = 0; n < st.n_nodes; ++n) {
    for (int c = 0; c < C; ++c) {
      const size_t i = st.at(n, c);
      std::string where = cfg.topology.node_name(n) + "/class " + std::to_string(c);
      if (st.Q[i] < -1e-12) bound_failure("queue nonnegativity", t, where, st.Q[i], 0.0);
      if (st.Q[i] > b.q_hi[c] + kTol) {
        bound_failure("queue upper bound", t, where, st.Q[i], b.q_hi[c]);
      }
      if (n == cfg.classes[c].destination && st.Q[i] != 0.0) {
        bound_failure("destination buffers nothing", t, where, st.Q[i], 0.0);
      }
      if (st.D[i] < b.d_lo[c] - kTol) {
        bound_failure("drop-queue lower bound", t, where, st.D[i], b.d_lo[c]);
      }
      if (st.D[i] > b.d_hi[c] + kTol) {
        bound_failure("drop-queue upper bound", t, where, st.D[i], b.d_hi[c]);
      }
    }
  }
  for (int l = 0; l < cfg.topology.link_count(); ++l) {
    double used = 0.0;
    for (int c = 0; c < C; ++c) used += led.mu_actual[static_cast<size_t>(l) * C + c];
    if (used > cfg.topology.link(l).capacity + kTol) {
      bound_failure("link capacity", t, "link " + std::to_string(l), used,
                    cfg.topology.link(l).capacity);
    }
  }
  if (!z_bound.empty()) {
    for (int c = 0; c < C; ++c) {
      if (st.Z[c] > z_bound[c] + kTol) {
        bound_failure("virtual queue bound", t, "class " + std::to_string(c), st.Z[c],
                      z_bound[c]);
      }
    }
  }
  ConservationReport rep = check_conservation(acct, st);
  if (!rep.ok) {
    bound_failure("conservation", t, "class " + std::to_string(rep.cls), rep.residual, 0.0);
  }
}

}  // namespace

RunResult run(const ExperimentConfig& cfg) {
  validate_experiment(cfg);
  const NetworkTopology& topo = cfg.topology;
  const auto& classes = cfg.classes;
  const int N = topo.node_count();
  const int C = static_cast<int>(classes.size());
  const int L = topo.link_count();
  const bool uora = cfg.policy.name == "uora";
  const double V = cfg.policy.V;
  const double d_max = cfg.policy.d_max;
  const long long T = cfg.run.slots;

  RunResult out;
  Metrics& met = out.metrics;

  UoraParams up;
  std::vector<double> theta(C);
  if (uora) {
    up = derive_uora_params(topo, classes, V, cfg.policy.eps, cfg.policy.nu_max,
                            cfg.policy.q_center, d_max);
    theta = up.theta;
    met.warnings = up.warnings;
  } else {
    for (int c = 0; c < C; ++c) theta[c] = classes[c].utility.weight;
  }

  std::vector<double> v_theta(C);
  Bounds bounds;
  bounds.q_hi.resize(C);
  bounds.d_hi.resize(C);
  bounds.d_lo.resize(C);
  met.q_bound.resize(C);
  for (int c = 0; c < C; ++c) {
    v_theta[c] = V * theta[c];
    bounds.q_hi[c] = v_theta[c] + 2.0 * d_max;
    bounds.d_hi[c] = v_theta[c] + d_max;
    bounds.d_lo[c] = v_theta[c] - d_max;
    met.q_bound[c] = bounds.q_hi[c];
  }
  if (uora) {
    UtilityGapConstants gc = utility_gap_constants(topo, classes, up, cfg.arrivals.a_max());
    met.z_bound = gc.z_max;
    met.gap_constant = gc.b1;
    met.analytic_gap = gc.gap;
  } else {
    met.gap_constant = ora_gap_constant(topo, C, cfg.arrivals.a_max(), d_max);
    met.analytic_gap = met.gap_constant / V;
  }

  QueueState st;
  st.init(N, C);
  for (int n = 0; n < N; ++n) {
    for (int c = 0; c < C; ++c) st.D[st.at(n, c)] = v_theta[c];
  }
  SlotDecision dec;
  dec.init(L, N, C);
  SlotLedger led;
  led.init(L, N, C);
  ConservationAccount acct;
  acct.init(C);
  ArrivalSampler sampler(cfg.run.seed, cfg.arrivals);
  const std::vector<char> mask = link_class_mask(topo, classes);

  met.delivered.assign(C, 0.0);
  met.dropped.assign(C, 0.0);
  met.window_throughput.assign(cfg.run.intervals.size(), std::vector<double>(C, 0.0));
  met.max_q.assign(static_cast<size_t>(N) * C, 0.0);
  met.max_d = st.D;
  met.min_d = st.D;
  met.max_z.assign(C, 0.0);
  met.slots = T;
  met.seed = cfg.run.seed;
  out.series.stride = cfg.run.stride;

  std::vector<double> rb(C, 0.0);  // receiver-side backlog surrogate
  std::vector<double> arr;

  for (long long t = 0; t < T; ++t) {
    if (cfg.run.stride > 0 && t % cfg.run.stride == 0) {
      out.series.slots.push_back(t);
      out.series.q.push_back(st.Q);
      out.series.d.push_back(st.D);
      out.series.z.push_back(st.Z);
    }

    dec.clear();
    if (uora) pseudo_backlogs(st, up, rb);
    route_backpressure(st, topo, classes, mask, rb, dec);
    drop_decision(st, d_max, dec);
    drop_queue_service(st, v_theta, d_max, dec);
    if (uora) {
      for (int c = 0; c < C; ++c) {
        dec.nu[c] = flow_control_rate(classes[c].utility, up.theta[c], V, rb[c], up.nu_max);
        // Push-back guarantee: a receiver at or below center never grants
        // more than eps of virtual service (theta_c = g'(eps) makes the
        // stationary rate <= eps whenever the pseudo-backlog is <= 0).
        if (rb[c] <= 0.0 && dec.nu[c] > up.eps + 1e-12) {
          bound_failure("flow-control push-back", t, "class " + std::to_string(c), dec.nu[c],
                        up.eps);
        }
      }
    }

    sampler.sample(t, arr);
    actual_transfers(st, dec, topo, classes, led);
    actual_drops(st, dec, led);
    apply_slot(st, dec, arr, topo, classes, led, acct);
    // Virtual queues exist only under uora; keep them pinned at zero
    // otherwise so metrics and snapshots stay clean.
    if (!uora) std::fill(st.Z.begin(), st.Z.end(), 0.0);

    for (int c = 0; c < C; ++c) {
      met.delivered[c] += led.delivered[c];
      if (st.Z[c] > met.max_z[c]) met.max_z[c] = st.Z[c];
    }
    for (size_t i = 0; i < cfg.run.intervals.size(); ++i) {
      auto [lo, hi] = cfg.run.intervals[i];
      if (t >= lo && t < hi) {
        for (int c = 0; c < C; ++c) met.window_throughput[i][c] += led.delivered[c];
      }
    }
    for (size_t i = 0; i < met.max_q.size(); ++i) {
      if (st.Q[i] > met.max_q[i]) met.max_q[i] = st.Q[i];
      if (st.D[i] > met.max_d[i]) met.max_d[i] = st.D[i];
      if (st.D[i] < met.min_d[i]) met.min_d[i] = st.D[i];
    }

    if (cfg.run.checked || (t + 1) % 1000 == 0 || t + 1 == T) {
      check_slot(cfg, st, led, acct, bounds, met.z_bound, t);
    }
  }

  met.conservation_residual = std::abs(check_conservation(acct, st).residual);
  met.utility = 0.0;
  met.throughput.resize(C);
  for (int c = 0; c < C; ++c) {
    met.throughput[c] = met.delivered[c] / static_cast<double>(T);
    met.dropped[c] = acct.dropped[c];
    met.utility += classes[c].utility.value(met.throughput[c]);
  }
  for (size_t i = 0; i < cfg.run.intervals.size(); ++i) {
    auto [lo, hi] = cfg.run.intervals[i];
    for (int c = 0; c < C; ++c) {
      met.window_throughput[i][c] /= static_cast<double>(hi - lo);
    }
  }
  return out;
}

std::vector<double> interval_throughput(const Metrics& m, std::size_t window) {
  return m.window_throughput.at(window);
}

std::uint64_t derive_run_seed(std::uint64_t master, double v) {
  return rng::mix(rng::mix(master) ^ std::bit_cast<std::uint64_t>(v));
}

std::vector<Metrics> sweep_v(const ExperimentConfig& cfg, std::vector<double> v_values) {
  std::sort(v_values.begin(), v_values.end());
  std::vector<Metrics> table;
  table.reserve(v_values.size());
  for (double v : v_values) {
    ExperimentConfig point = cfg;
    point.policy.V = v;
    point.run.seed = derive_run_seed(cfg.run.seed, v);
    point.run.stride = 0;  // sweeps report metrics, not sample paths
    table.push_back(run(point).metrics);
  }
  return table;
}

}  // namespace onet
