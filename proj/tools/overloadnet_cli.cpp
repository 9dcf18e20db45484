#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "overloadnet/config_io.hpp"
#include "overloadnet/csv.hpp"
#include "overloadnet/errors.hpp"
#include "overloadnet/oracle.hpp"
#include "overloadnet/presets.hpp"
#include "overloadnet/reproduce.hpp"
#include "overloadnet/sim.hpp"

namespace {

using namespace onet;

std::uint64_t parse_seed(const std::string& text, const std::string& field) {
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos) {
    throw ConfigError(field, "seed must be a nonnegative integer");
  }
  errno = 0;
  char* end = nullptr;
  std::uint64_t v = std::strtoull(text.c_str(), &end, 10);
  if (errno != 0 || end != text.c_str() + text.size()) {
    throw ConfigError(field, "seed out of range");
  }
  return v;
}

// Documented precedence: --seed flag > OVERLOADNET_SEED > config file.
void apply_seed_overrides(RunConfig& run, const std::optional<std::uint64_t>& flag_seed) {
  if (const char* env = std::getenv("OVERLOADNET_SEED")) {
    run.seed = parse_seed(env, "OVERLOADNET_SEED");
  }
  if (flag_seed) run.seed = *flag_seed;
}

ExperimentConfig resolve_config(const std::string& config_path, const std::string& preset) {
  if (config_path.empty() == preset.empty()) {
    throw ConfigError("", "give exactly one of --config or --preset");
  }
  if (!preset.empty()) return make_preset(preset).config;
  return load_config(config_path);
}

int cmd_simulate(const std::string& config_path, const std::string& preset,
                 const std::string& output_dir, bool checked,
                 const std::optional<std::uint64_t>& seed, const std::optional<long long>& stride) {
  ExperimentConfig cfg = resolve_config(config_path, preset);
  apply_seed_overrides(cfg.run, seed);
  if (stride) cfg.run.stride = *stride;
  if (checked) cfg.run.checked = true;
  validate_experiment(cfg);

  RunResult rr = run(cfg);
  write_text_file(output_dir + "/run-manifest.json", config_to_json(cfg));
  write_text_file(output_dir + "/summary.csv", summary_csv(cfg, rr.metrics));
  write_text_file(output_dir + "/metrics.json", metrics_to_json(cfg, rr.metrics));
  if (cfg.run.stride > 0) {
    write_text_file(output_dir + "/timeseries.csv", timeseries_csv(cfg, rr.series));
  }
  for (const auto& w : rr.metrics.warnings) std::cerr << "warning: " << w << "\n";
  std::cout << "wrote " << output_dir << "/summary.csv";
  if (cfg.run.stride > 0) std::cout << " and timeseries.csv";
  std::cout << " (" << cfg.run.slots << " slots, seed " << cfg.run.seed << ")\n";
  return 0;
}

int cmd_oracle(const std::string& config_path, const std::string& preset, double grid_step) {
  ExperimentConfig cfg = resolve_config(config_path, preset);
  const int N = cfg.topology.node_count();
  const int C = static_cast<int>(cfg.classes.size());

  std::vector<double> lambda(static_cast<size_t>(N) * C, 0.0);
  for (int n = 0; n < N; ++n) {
    for (int c = 0; c < C; ++c) {
      lambda[static_cast<size_t>(n) * C + c] = cfg.arrivals.mean_rate(n, c);
    }
  }

  bool all_linear = true;
  for (const auto& cls : cfg.classes) all_linear = all_linear && cls.utility.is_linear();

  std::vector<double> r;
  double utility = 0.0;
  FlowSolution cert;
  if (all_linear) {
    std::vector<double> weights(C);
    for (int c = 0; c < C; ++c) weights[c] = cfg.classes[c].utility.weight;
    auto res = optimal_linear(weights, lambda, cfg.topology, cfg.classes);
    r = res.r;
    utility = res.value;
    cert = res.certificate;
    std::cout << "method = exact LP\n";
  } else {
    auto res = optimal_concave(cfg.classes, lambda, cfg.topology, grid_step);
    r = res.r;
    utility = res.utility;
    cert = res.certificate;
    std::cout << "method = grid search, step " << format_number(grid_step) << ", "
              << res.grid_points << " points, error bound " << format_number(res.error_bound)
              << "\n";
  }

  for (int c = 0; c < C; ++c) {
    std::cout << "r" << cfg.classes[c].id << " = " << format_number(r[c]) << "\n";
  }
  std::cout << "utility = " << format_number(utility) << "\n";

  std::cout << "certificate flows (from,to,class,rate):\n";
  for (int l = 0; l < cfg.topology.link_count(); ++l) {
    for (int c = 0; c < C; ++c) {
      const double f = cert.f[static_cast<size_t>(l) * C + c];
      if (f > 1e-12) {
        std::cout << "  " << cfg.topology.node_name(cfg.topology.link(l).from) << ","
                  << cfg.topology.node_name(cfg.topology.link(l).to) << ","
                  << cfg.classes[c].id << "," << format_number(f) << "\n";
      }
    }
  }
  std::cout << "certificate overflow (node,class,rate):\n";
  for (int n = 0; n < N; ++n) {
    for (int c = 0; c < C; ++c) {
      const double q = cert.q[static_cast<size_t>(n) * C + c];
      if (q > 1e-12) {
        std::cout << "  " << cfg.topology.node_name(n) << "," << cfg.classes[c].id << ","
                  << format_number(q) << "\n";
      }
    }
  }
  auto rep = verify_flow_solution(cfg.topology, cfg.classes, lambda, cert);
  if (!rep.ok) throw InvariantViolation("certificate failed re-verification: " + rep.detail);
  std::cout << "certificate verified\n";
  return 0;
}

int cmd_reproduce(const std::string& preset, const std::string& output_dir,
                  const std::optional<std::uint64_t>& flag_seed) {
  std::optional<std::uint64_t> seed = flag_seed;
  if (!seed) {
    if (const char* env = std::getenv("OVERLOADNET_SEED")) {
      seed = parse_seed(env, "OVERLOADNET_SEED");
    }
  }
  ReproduceOutcome out = reproduce_preset(preset, seed);
  write_text_file(output_dir + "/side_by_side.csv", out.side_by_side);
  std::string verdict;
  for (const auto& line : out.lines) verdict += line + "\n";
  verdict += out.pass ? "PASS\n" : "FAIL\n";
  write_text_file(output_dir + "/verdict.txt", verdict);
  if (out.series.stride > 0) {
    Preset p = make_preset(preset);
    if (seed) p.config.run.seed = *seed;
    write_text_file(output_dir + "/timeseries.csv", timeseries_csv(p.config, out.series));
  }
  std::cout << preset << ":\n" << verdict;
  return out.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"overloadnet: backpressure scheduling with utility-optimal dropping and"
               " receiver flow control on overloaded networks"};
  app.require_subcommand(1);

  std::string config_path, preset_name, output_dir, seed_str;
  bool checked = false;
  long long stride_val = 0;
  double grid_step = 1.0 / 120.0;

  auto* sim = app.add_subcommand("simulate", "run one experiment and write CSV + manifest");
  sim->add_option("--config", config_path, "experiment JSON document");
  sim->add_option("--preset", preset_name, "built-in preset instead of --config");
  sim->add_option("--output", output_dir, "output directory")->required();
  sim->add_flag("--checked", checked, "verify every invariant at every slot");
  auto* sim_seed = sim->add_option("--seed", seed_str, "seed override (also: OVERLOADNET_SEED)");
  auto* sim_stride = sim->add_option("--stride", stride_val, "time-series sampling stride");

  auto* orc = app.add_subcommand("oracle", "print the optimal throughput vector and certificate");
  orc->add_option("--config", config_path, "experiment JSON document");
  orc->add_option("--preset", preset_name, "built-in preset instead of --config");
  orc->add_option("--grid-step", grid_step, "grid spacing for concave utilities");

  auto* rep = app.add_subcommand("reproduce", "rerun a published experiment and judge it");
  std::string rep_preset;
  rep->add_option("--preset", rep_preset, "one of: table1a table1b table2 table3 table4 table5 fig5")
      ->required();
  rep->add_option("--output", output_dir, "output directory")->required();
  auto* rep_seed = rep->add_option("--seed", seed_str, "seed override (also: OVERLOADNET_SEED)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    std::optional<std::uint64_t> seed;
    if (sim_seed->count() || rep_seed->count()) seed = parse_seed(seed_str, "--seed");
    if (sim->parsed()) {
      std::optional<long long> stride;
      if (sim_stride->count()) stride = stride_val;
      return cmd_simulate(config_path, preset_name, output_dir, checked, seed, stride);
    }
    if (orc->parsed()) return cmd_oracle(config_path, preset_name, grid_step);
    return cmd_reproduce(rep_preset, output_dir, seed);
  } catch (const onet::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const onet::InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return 3;
  }
}
