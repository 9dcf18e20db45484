#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "overloadnet/presets.hpp"

namespace onet {

struct ReproduceOutcome {
  std::string preset;
  bool pass = true;
  // One "ok ..." / "FAIL ..." entry per pinned check, plus "warn ..." notes.
  std::vector<std::string> lines;
  // Long-form comparison: label,metric,ours,published,oracle. Unpublished
  // cells are left empty.
  std::string side_by_side;
  std::vector<Metrics> runs;  // one per sweep point, or the single run
  TimeSeries series;          // fig5 only
};

// Reruns a preset, recomputes the optimum with the oracle, and applies the
// pinned tolerances. Throws ConfigError for unknown names.
ReproduceOutcome reproduce_preset(const std::string& name,
                                  std::optional<std::uint64_t> seed_override = std::nullopt);

}  // namespace onet
