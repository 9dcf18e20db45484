#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "overloadnet/arrivals.hpp"
#include "overloadnet/topology.hpp"

namespace onet {

struct PolicyConfig {
  std::string name;  // "ora" | "uora"
  double V = 100.0;
  double d_max = 0.0;
  // Flow-control knobs, used only by "uora".
  double eps = 0.1;
  double nu_max = 0.0;
  double q_center = 0.0;
};

struct RunConfig {
  long long slots = 0;
  std::uint64_t seed = 0;
  long long stride = 0;  // 0 disables time-series sampling
  bool checked = false;  // invariant checks every slot instead of every 10^3
  std::vector<std::pair<long long, long long>> intervals;  // [start, end)
};

struct ExperimentConfig {
  NetworkTopology topology;
  std::vector<TrafficClass> classes;
  ArrivalSchedule arrivals;
  PolicyConfig policy;
  RunConfig run;
};

// Cross-module validation beyond what each part checks locally: policy name,
// d_max against a_max + mu_in_max, interval sanity, ora-needs-linear-utility.
// Throws ConfigError. Called by run() as well.
void validate_experiment(const ExperimentConfig& cfg);

struct Metrics {
  std::vector<double> delivered;   // per class
  std::vector<double> throughput;  // delivered / slots
  std::vector<double> dropped;     // per class
  std::vector<std::vector<double>> window_throughput;  // [interval][class]
  std::vector<double> max_q;  // [node * C + cls], observed maxima
  std::vector<double> max_d;  // [node * C + cls]
  std::vector<double> min_d;  // [node * C + cls]
  std::vector<double> max_z;  // [cls]
  std::vector<double> q_bound;   // per class: V theta_c + 2 d_max
  std::vector<double> z_bound;   // per class (empty for ora)
  double utility = 0;            // sum_c g_c(throughput_c)
  double gap_constant = 0;       // B (ora) or B1 (uora)
  double analytic_gap = 0;       // B/V, or B1/V + (3 eps/2) sum_c (m_c + theta_c)
  double conservation_residual = 0;  // worst per-class residual at final check
  long long slots = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> warnings;
};

// Start-of-slot snapshots taken at slot % stride == 0.
struct TimeSeries {
  long long stride = 0;
  std::vector<long long> slots;
  std::vector<std::vector<double>> q;  // per sample, [node * C + cls]
  std::vector<std::vector<double>> d;
  std::vector<std::vector<double>> z;  // per sample, [cls]
};

struct RunResult {
  Metrics metrics;
  TimeSeries series;  // empty when stride == 0
};

// Executes the slotted loop: decide, transmit, drop, arrive, account. Aborts
// with InvariantViolation if any deterministic bound, capacity, or
// conservation check fails at a checked slot (always an implementation bug).
// (config, seed) determines the result bit-for-bit.
RunResult run(const ExperimentConfig& cfg);

// Per-class throughput of a declared measurement window.
std::vector<double> interval_throughput(const Metrics& m, std::size_t window);

// Seed for one V point of a sweep, mixed from the master seed so runs are
// independent but reproducible.
std::uint64_t derive_run_seed(std::uint64_t master, double v);

// Independent runs at each V (ascending), fresh seed per V.
std::vector<Metrics> sweep_v(const ExperimentConfig& cfg, std::vector<double> v_values);

}  // namespace onet
