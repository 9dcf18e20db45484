#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>

#include "overloadnet/config_io.hpp"
#include "overloadnet/errors.hpp"
#include "overloadnet/oracle.hpp"
#include "overloadnet/policy_uora.hpp"
#include "overloadnet/presets.hpp"
#include "overloadnet/sim.hpp"
#include "overloadnet/utility.hpp"

namespace py = pybind11;

namespace {

using namespace onet;

UtilitySpec make_utility(const std::string& kind, double weight, double shift, double alpha) {
  UtilitySpec u;
  if (kind == "linear") {
    u = UtilitySpec::linear(weight);
  } else if (kind == "log") {
    u = UtilitySpec::log_utility(weight, shift);
  } else if (kind == "alpha_fair") {
    u = UtilitySpec::alpha_fair(alpha);
  } else {
    throw ConfigError("kind", "must be one of linear, log, alpha_fair");
  }
  u.validate("utility");
  return u;
}

std::string run_json(const std::string& config_text) {
  ExperimentConfig cfg = parse_config_text(config_text);
  RunResult rr = run(cfg);
  return metrics_to_json(cfg, rr.metrics);
}

std::string oracle_json(const std::string& config_text, double grid_step) {
  ExperimentConfig cfg = parse_config_text(config_text);
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

  nlohmann::json j;
  FlowSolution cert;
  if (all_linear) {
    std::vector<double> weights(C);
    for (int c = 0; c < C; ++c) weights[c] = cfg.classes[c].utility.weight;
    auto res = optimal_linear(weights, lambda, cfg.topology, cfg.classes);
    j["method"] = "lp";
    j["r"] = res.r;
    j["utility"] = res.value;
    cert = res.certificate;
  } else {
    auto res = optimal_concave(cfg.classes, lambda, cfg.topology, grid_step);
    j["method"] = "grid";
    j["r"] = res.r;
    j["utility"] = res.utility;
    j["error_bound"] = res.error_bound;
    j["grid_points"] = res.grid_points;
    cert = res.certificate;
  }
  j["verified"] = verify_flow_solution(cfg.topology, cfg.classes, lambda, cert).ok;
  return j.dump(2) + "\n";
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Slotted-time simulation of backpressure scheduling with utility-optimal "
            "dropping and receiver flow control, plus LP oracles for the optimum.";
  m.attr("__version__") = "0.1.0";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<InvariantViolation>(m, "InvariantViolation", PyExc_RuntimeError);

  m.def("run_json", &run_json, py::arg("config_json"),
        "Run one experiment from a config document; returns the metrics as JSON.");
  m.def("oracle_json", &oracle_json, py::arg("config_json"), py::arg("grid_step") = 1.0 / 120.0,
        "Optimal throughput vector for a config's mean arrival rates, as JSON.");
  m.def("preset_names", [] { return preset_names(); },
        "Names of the built-in experiment presets.");
  m.def("preset_config_json", [](const std::string& name) {
    return config_to_json(make_preset(name).config);
  }, py::arg("name"), "Fully resolved config document of a preset, as JSON.");

  m.def("derivative_bound",
        [](const std::string& kind, double weight, double shift, double alpha, double eps) {
          return derivative_bound(make_utility(kind, weight, shift, alpha), eps);
        },
        py::arg("kind"), py::arg("weight") = 1.0, py::arg("shift") = 0.0, py::arg("alpha") = 1.0,
        py::arg("eps") = 0.1, "Upper bound on |g'| on [eps, inf).");
  m.def("flow_control_rate",
        [](const std::string& kind, double weight, double shift, double alpha, double theta,
           double v, double pseudo, double nu_max) {
          return flow_control_rate(make_utility(kind, weight, shift, alpha), theta, v, pseudo,
                                   nu_max);
        },
        py::arg("kind"), py::arg("weight") = 1.0, py::arg("shift") = 0.0, py::arg("alpha") = 1.0,
        py::arg("theta") = 1.0, py::arg("v") = 100.0, py::arg("pseudo") = 0.0,
        py::arg("nu_max") = 1.0,
        "Maximizer of V*(g(x) - theta*x) + x*pseudo over [0, nu_max].");
  m.def("pseudo_backlog", &pseudo_backlog_one, py::arg("z"), py::arg("w"), py::arg("q_center"),
        "Signed exponential pseudo-backlog advertised for virtual queue level z.");
}
