// Acceptance gate: reruns the shipped presets in checked mode and holds the
// results to the published reference values, the deterministic bounds, and
// the oracle. Prints one PASS/FAIL line per criterion; the exit code is the
// number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "overloadnet/oracle.hpp"
#include "overloadnet/policy_uora.hpp"
#include "overloadnet/presets.hpp"
#include "overloadnet/rng.hpp"
#include "overloadnet/sim.hpp"

using namespace onet;

namespace {

// Pinned tolerances. Reference rows are stochastic reproductions, so the
// published-value comparisons carry a few-hundredths allowance; structural
// bounds are exact or near machine precision.
constexpr double kTolV100 = 0.02;        // throughput vs published, V = 100
constexpr double kTolV50 = 0.03;         // throughput vs published, V = 50
constexpr double kTolClass2Floor = 0.05; // near-starved class, V = 50
constexpr double kTolWindows = 0.03;     // per-interval throughput
constexpr double kTolUtility = 0.02;     // time-average utility vs published
constexpr double kTolMonotone = 0.01;    // noise allowance on the V sweep
constexpr double kTolOracleRef = 5e-4;   // published optimum is 3-decimal
constexpr double kTolOnGrid = 1e-9;      // oracle exactness on grid points
constexpr double kTolFlowGrid = 1e-3;    // closed form vs 1e-4 grid search
constexpr double kTolConservation = 1e-9;
constexpr double kTolFloat = 1e-9;       // slack for accumulated roundoff
constexpr double kRuntimeLimitSec = 15.0;

struct RunRecord {
  std::string name;
  ExperimentConfig cfg;  // as executed (V and seed resolved)
  Metrics m;
  double seconds = 0.0;
  bool ok = false;          // completed all per-slot checks
  std::string error;
};

std::vector<RunRecord> g_runs;

const Metrics* find_run(const std::string& name) {
  for (const auto& r : g_runs) {
    if (r.name == name && r.ok) return &r.m;
  }
  return nullptr;
}

// Executes one V point of a preset in checked mode, timing it. Seeds follow
// the same per-V derivation the sweep command uses.
void execute(const std::string& preset, double v, bool derive_seed) {
  RunRecord rec;
  rec.cfg = make_preset(preset).config;
  rec.cfg.policy.V = v;
  rec.cfg.run.checked = true;
  rec.cfg.run.stride = 0;
  if (derive_seed) rec.cfg.run.seed = derive_run_seed(rec.cfg.run.seed, v);
  std::ostringstream label;
  label << preset << " V=" << v;
  rec.name = label.str();

  auto t0 = std::chrono::steady_clock::now();
  try {
    rec.m = run(rec.cfg).metrics;
    rec.ok = true;
  } catch (const std::exception& e) {
    rec.error = e.what();
  }
  rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("  run %-16s %7.2fs  %s\n", rec.name.c_str(), rec.seconds,
              rec.ok ? "ok" : rec.error.c_str());
  std::fflush(stdout);
  g_runs.push_back(std::move(rec));
}

std::vector<double> mean_arrival_rates(const ExperimentConfig& cfg) {
  const int C = static_cast<int>(cfg.classes.size());
  std::vector<double> lam(static_cast<size_t>(cfg.topology.node_count()) * C, 0.0);
  for (int n = 0; n < cfg.topology.node_count(); ++n) {
    for (int c = 0; c < C; ++c) {
      lam[static_cast<size_t>(n) * C + c] = cfg.arrivals.mean_rate(n, c);
    }
  }
  return lam;
}

std::string fmt_vec(const std::vector<double>& v) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) os << ", ";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v[i]);
    os << buf;
  }
  os << ")";
  return os.str();
}

bool within(const std::vector<double>& got, const std::vector<double>& want, double tol) {
  for (size_t i = 0; i < want.size(); ++i) {
    if (std::abs(got[i] - want[i]) > tol) return false;
  }
  return true;
}

int g_failures = 0;

void verdict(int id, bool pass, const std::string& detail) {
  std::printf("%s criterion %d: %s\n", pass ? "PASS" : "FAIL", id, detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

}  // namespace

int main() {
  std::printf("executing acceptance runs (checked mode, per-slot invariants)\n");
  for (double v : {10.0, 20.0, 50.0, 100.0}) execute("table1a", v, true);
  execute("table1b", 100.0, true);
  execute("table2", 100.0, false);  // single run at the configured seed
  for (double v : {10.0, 20.0, 50.0, 100.0}) execute("table3", v, true);
  execute("table5", 50.0, true);

  // ---- oracle solves shared across criteria ----------------------------
  ExperimentConfig c1a = make_preset("table1a").config;
  ExperimentConfig c1b = make_preset("table1b").config;
  ExperimentConfig c3 = make_preset("table3").config;
  ExperimentConfig c5 = make_preset("table5").config;
  const std::vector<double> lam_chain = mean_arrival_rates(c1a);
  const std::vector<double> lam_tree = mean_arrival_rates(c5);

  OptimalLinearResult lin_a = optimal_linear({3.0, 2.0, 1.0}, lam_chain, c1a.topology, c1a.classes);
  OptimalLinearResult lin_b = optimal_linear({3.0, 5.0, 1.0}, lam_chain, c1b.topology, c1b.classes);
  OptimalConcaveResult log_chain =
      optimal_concave(c3.classes, lam_chain, c3.topology, 1.0 / 120.0);
  OptimalConcaveResult fair_tree = optimal_concave(c5.classes, lam_tree, c5.topology, 1.0 / 120.0);

  // ---- criterion 1: overloaded chain, objective 3:2:1 -------------------
  {
    const Metrics* v100 = find_run("table1a V=100");
    const Metrics* v50 = find_run("table1a V=50");
    bool pass = v100 && v50;
    std::ostringstream d;
    if (pass) {
      bool at100 = within(v100->throughput, {1.0, 0.0, 1.0}, kTolV100);
      bool at50 = std::abs(v50->throughput[0] - 0.992) <= kTolV50 &&
                  v50->throughput[1] <= kTolClass2Floor &&
                  std::abs(v50->throughput[2] - 0.967) <= kTolV50;
      double worst = 0.0;
      for (const auto& r : g_runs) {
        if (r.name.rfind("table1a", 0) == 0) worst = std::max(worst, r.seconds);
      }
      bool fast = worst < kRuntimeLimitSec;
      pass = at100 && at50 && fast;
      d << "V=100 r=" << fmt_vec(v100->throughput) << " vs (1, 0, 1) tol " << kTolV100
        << "; V=50 r=" << fmt_vec(v50->throughput) << " vs (0.992, 0.008, 0.967) pattern"
        << "; slowest run " << worst << "s (limit " << kRuntimeLimitSec << "s)";
    } else {
      d << "run failed: " << (v100 ? "V=50" : "V=100");
    }
    verdict(1, pass, d.str());
  }

  // ---- criterion 2: overloaded chain, objective 3:5:1 -------------------
  {
    const Metrics* m = find_run("table1b V=100");
    bool pass = m && within(m->throughput, {0.0, 1.0, 0.0}, kTolV100);
    std::ostringstream d;
    if (m) {
      d << "V=100 r=" << fmt_vec(m->throughput) << " vs (0, 1, 0) tol " << kTolV100;
    } else {
      d << "run failed";
    }
    verdict(2, pass, d.str());
  }

  // ---- criterion 3: temporary overload, per-window throughput -----------
  {
    const Metrics* m = find_run("table2 V=100");
    const std::vector<std::vector<double>> want = {
        {0.8, 0.1, 0.8}, {0.0, 1.0, 0.0}, {0.8, 0.1, 0.8}};
    bool pass = m && m->window_throughput.size() == 3;
    std::ostringstream d;
    if (pass) {
      for (int w = 0; w < 3; ++w) {
        if (!within(m->window_throughput[w], want[w], kTolWindows)) pass = false;
        d << (w ? " / " : "") << fmt_vec(m->window_throughput[w]);
      }
      d << " vs (0.8, 0.1, 0.8) / (0, 1, 0) / (0.8, 0.1, 0.8) tol " << kTolWindows;
    } else {
      d << "run failed";
    }
    verdict(3, pass, d.str());
  }

  // ---- criterion 4: log utilities, utility level and V monotonicity -----
  {
    const Metrics* v100 = find_run("table3 V=100");
    bool pass = v100 != nullptr;
    std::ostringstream d;
    if (pass) {
      bool level = std::abs(v100->utility - (-1.912)) <= kTolUtility;
      bool monotone = true;
      std::vector<double> us;
      for (double v : {10.0, 20.0, 50.0, 100.0}) {
        std::ostringstream key;
        key << "table3 V=" << v;
        const Metrics* m = find_run(key.str());
        if (!m) {
          monotone = false;
          break;
        }
        us.push_back(m->utility);
      }
      for (size_t i = 1; i < us.size(); ++i) {
        if (us[i] < us[i - 1] - kTolMonotone) monotone = false;
      }
      bool oracle_ok = std::abs(log_chain.utility - (-1.910)) <= kTolOracleRef;
      pass = level && monotone && oracle_ok;
      d << "V=100 utility " << v100->utility << " vs -1.912 tol " << kTolUtility
        << "; sweep utilities " << fmt_vec(us) << " non-decreasing tol " << kTolMonotone
        << "; oracle " << log_chain.utility << " vs -1.910 tol " << kTolOracleRef;
    } else {
      d << "run failed";
    }
    verdict(4, pass, d.str());
  }

  // ---- criterion 5: hard backlog bound 10V + 42, zero tolerance ---------
  {
    bool pass = true;
    double worst_margin = 1e300;
    for (double v : {10.0, 20.0, 50.0, 100.0}) {
      std::ostringstream key;
      key << "table3 V=" << v;
      const Metrics* m = find_run(key.str());
      if (!m) {
        pass = false;
        break;
      }
      const double bound = 10.0 * v + 42.0;
      for (double q : m->max_q) {
        if (q > bound) pass = false;
        worst_margin = std::min(worst_margin, bound - q);
      }
    }
    std::ostringstream d;
    d << "every observed max Q <= 10V+42 across V in {10,20,50,100}, smallest margin "
      << worst_margin << " packets";
    verdict(5, pass, d.str());
  }

  // ---- criterion 6: alpha-fair tree at V=50 ------------------------------
  {
    const Metrics* m = find_run("table5 V=50");
    const std::vector<double> want = {2.0 / 3.0, 2.0 / 3.0, 2.0 / 3.0};
    bool pass = m && within(m->throughput, want, kTolV100);
    std::ostringstream d;
    if (m) {
      d << "V=50 r=" << fmt_vec(m->throughput) << " vs (0.667, 0.667, 0.667) tol " << kTolV100;
    } else {
      d << "run failed";
    }
    verdict(6, pass, d.str());
  }

  // ---- criterion 7: property suite ---------------------------------------
  {
    std::ostringstream d;
    bool pass = true;

    // (a) deterministic queue bounds: checked mode already enforced them at
    // every slot (a violation aborts the run); re-verify the recorded maxima.
    // (c) link capacity is part of the same per-slot check.
    for (const auto& r : g_runs) {
      if (!r.ok) {
        pass = false;
        d << "[run " << r.name << " aborted: " << r.error << "] ";
        continue;
      }
      const int C = static_cast<int>(r.cfg.classes.size());
      const double dmax = r.cfg.policy.d_max;
      for (int c = 0; c < C; ++c) {
        const double vtheta = r.m.q_bound[c] - 2.0 * dmax;
        for (int n = 0; n < r.cfg.topology.node_count(); ++n) {
          const size_t i = static_cast<size_t>(n) * C + c;
          if (r.m.max_q[i] > r.m.q_bound[c] ||
              r.m.min_d[i] < vtheta - dmax - kTolFloat ||
              r.m.max_d[i] > vtheta + dmax + kTolFloat) {
            pass = false;
            d << "[bound violated in " << r.name << "] ";
          }
        }
        if (!r.m.z_bound.empty() && r.m.max_z[c] > r.m.z_bound[c] + kTolFloat) {
          pass = false;
          d << "[virtual queue bound violated in " << r.name << "] ";
        }
      }
      // (b) conservation at end of every run
      if (!(r.m.conservation_residual <= kTolConservation)) {
        pass = false;
        d << "[conservation residual " << r.m.conservation_residual << " in " << r.name << "] ";
      }
    }

    // (d) closed-form flow control vs brute-force grid on random instances
    {
      int checked = 0;
      const std::uint64_t key = rng::stream_key(9001, 0);
      int ctr = 0;
      auto u01 = [&]() { return rng::uniform(key, ctr++); };
      for (int i = 0; i < 100; ++i) {
        UtilitySpec g;
        double eps = 0.05 + 0.95 * u01();
        switch (i % 3) {
          case 0:
            g = UtilitySpec::log_utility(0.5 + 2.0 * u01(), (i % 6 == 0) ? 0.0 : 0.2 * u01());
            break;
          case 1:
            g = UtilitySpec::alpha_fair(0.5 + 3.0 * u01());
            break;
          default:
            g = UtilitySpec::linear(0.5 + 2.0 * u01());
            break;
        }
        const double V = 1.0 + 199.0 * u01();
        const double theta = g.derivative(eps);
        const double nu_max = 0.5 + 3.5 * u01();
        const double delta = std::max(nu_max, 1.0);
        const double w = eps / (delta * delta) * std::exp(-eps / delta);
        const double qc = 50.0 + 1950.0 * u01();
        const double span = std::min(qc, 600.0 / w);
        const double pseudo = pseudo_backlog_one(qc + (2.0 * u01() - 1.0) * span, w, qc);
        const double closed = flow_control_rate(g, theta, V, pseudo, nu_max);

        double best_v = 0.0;
        double best = -1e300;
        for (double x = 0.0; x <= nu_max + 5e-5; x += 1e-4) {
          double xv = std::min(x, nu_max);
          double j = V * (g.value(xv) - theta * xv) + xv * pseudo;
          if (j > best) {
            best = j;
            best_v = xv;
          }
        }
        ++checked;
        if (std::abs(closed - best_v) > kTolFlowGrid) {
          pass = false;
          d << "[flow control instance " << i << ": closed " << closed << " grid " << best_v
            << "] ";
        }
      }
      d << "flow control matched a 1e-4 grid within " << kTolFlowGrid << " on " << checked
        << " random instances; ";
    }

    // (e) oracle certificates re-verify against the flow relations
    {
      struct Cert {
        const char* name;
        const NetworkTopology* topo;
        const std::vector<TrafficClass>* classes;
        const std::vector<double>* lambda;
        const FlowSolution* sol;
      };
      const Cert certs[] = {
          {"linear 3:2:1", &c1a.topology, &c1a.classes, &lam_chain, &lin_a.certificate},
          {"linear 3:5:1", &c1b.topology, &c1b.classes, &lam_chain, &lin_b.certificate},
          {"log chain", &c3.topology, &c3.classes, &lam_chain, &log_chain.certificate},
          {"alpha-fair tree", &c5.topology, &c5.classes, &lam_tree, &fair_tree.certificate},
      };
      for (const auto& cert : certs) {
        VerifyReport rep = verify_flow_solution(*cert.topo, *cert.classes, *cert.lambda, *cert.sol);
        if (!rep.ok) {
          pass = false;
          d << "[certificate " << cert.name << ": " << rep.detail << "] ";
        }
      }
      d << "4 oracle certificates re-verified to 1e-9";
    }

    verdict(7, pass, "per-slot bounds, conservation, capacity all held; " + d.str());
  }

  // ---- criterion 8: oracle ground truth, exact on grid -------------------
  {
    bool pass = within(lin_a.r, {1.0, 0.0, 1.0}, kTolOnGrid) &&
                within(lin_b.r, {0.0, 1.0, 0.0}, kTolOnGrid) &&
                within(log_chain.r, {2.0 / 3.0, 1.0 / 3.0, 2.0 / 3.0}, kTolOnGrid) &&
                within(fair_tree.r, {2.0 / 3.0, 2.0 / 3.0, 2.0 / 3.0}, kTolOnGrid);
    std::ostringstream d;
    d << "linear " << fmt_vec(lin_a.r) << " and " << fmt_vec(lin_b.r) << "; concave "
      << fmt_vec(log_chain.r) << " and " << fmt_vec(fair_tree.r) << ", all exact to "
      << kTolOnGrid;
    verdict(8, pass, d.str());
  }

  // ---- criterion 9: achieved objective vs oracle optimum minus gap -------
  {
    bool pass = true;
    std::ostringstream d;
    for (const auto& r : g_runs) {
      if (!r.ok) {
        pass = false;
        continue;
      }
      double achieved = 0.0, optimum = 0.0;
      if (r.cfg.policy.name == "ora") {
        std::vector<double> weights;
        for (const auto& cls : r.cfg.classes) weights.push_back(cls.utility.weight);
        OptimalLinearResult opt =
            optimal_linear(weights, mean_arrival_rates(r.cfg), r.cfg.topology, r.cfg.classes);
        optimum = opt.value;
        for (size_t c = 0; c < weights.size(); ++c) achieved += weights[c] * r.m.throughput[c];
      } else {
        // The analytic gap presumes marginal utilities capped at g'(eps), so
        // both sides are priced with the bounded-slope companion utility.
        const OptimalConcaveResult& opt =
            (r.cfg.topology == c5.topology) ? fair_tree : log_chain;
        const double eps = r.cfg.policy.eps;
        for (size_t c = 0; c < r.cfg.classes.size(); ++c) {
          achieved += bounded_slope_utility(r.cfg.classes[c].utility, eps, r.m.throughput[c]);
          optimum += bounded_slope_utility(r.cfg.classes[c].utility, eps, opt.r[c]);
        }
      }
      const double floor_value = optimum - r.m.analytic_gap;
      if (achieved < floor_value - kTolFloat) {
        pass = false;
        d << "[" << r.name << ": achieved " << achieved << " < " << floor_value << "] ";
      }
    }
    d << "achieved objective >= oracle optimum - analytic gap on all " << g_runs.size()
      << " runs (bound is loose by design)";
    verdict(9, pass, d.str());
  }

  std::printf("%d/9 criteria passed, %d failed\n", 9 - g_failures, g_failures);
  return g_failures;
}
