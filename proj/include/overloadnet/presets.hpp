#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "overloadnet/sim.hpp"

namespace onet {

// Master seed used by the shipped presets. The published experiments did not
// fix a seed; this one is pinned so every rerun of a preset is byte-identical.
inline constexpr std::uint64_t kDefaultSeed = 153ull;

// 3-node chain A -> B -> C with unit capacities. Class 1 enters at B headed
// for C, class 2 enters at A headed for C, class 3 enters at A headed for B.
NetworkTopology three_node_topology();

// Two-branch tree A -> B -> R, C -> D -> R with unit capacities. Class 1
// enters at both A and C headed for R, class 2 at B, class 3 at D.
NetworkTopology tree_topology();

struct Preset {
  std::string name;
  std::string summary;          // one line for --help style listings
  ExperimentConfig config;      // fully resolved, seeded with kDefaultSeed
  std::vector<double> v_sweep;  // empty: single run at config.policy.V
};

const std::vector<std::string>& preset_names();
bool is_preset(const std::string& name);

// Throws ConfigError("preset", ...) for unknown names.
Preset make_preset(const std::string& name);

// Reference values the preset reproduces, as published. `optimal` holds zero
// rows (none published), one row (shared by all rows), or one per row.
struct PaperTable {
  std::vector<std::string> columns;
  struct Row {
    std::string label;  // V value or interval
    std::vector<double> values;
  };
  std::vector<Row> rows;
  std::vector<std::vector<double>> optimal;
};

const PaperTable& paper_table(const std::string& preset);

}  // namespace onet
