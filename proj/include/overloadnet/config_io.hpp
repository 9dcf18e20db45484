#pragma once

#include <string>

#include "overloadnet/sim.hpp"

namespace onet {

// Parses the JSON experiment document. Unknown keys are rejected; every error
// is a ConfigError carrying a field path like "classes[1].utility.weight".
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig load_config(const std::string& path);

// Canonical resolved form (the run manifest): keys sorted, arrival segments
// normalized to batch + prob, 2-space indent, trailing newline. Reloading the
// output re-serializes to the same bytes.
std::string config_to_json(const ExperimentConfig& cfg);

// Structured dump of a finished run's metrics.
std::string metrics_to_json(const ExperimentConfig& cfg, const Metrics& m);

}  // namespace onet
