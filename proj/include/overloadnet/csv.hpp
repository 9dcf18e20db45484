#pragma once

#include <string>

#include "overloadnet/sim.hpp"

namespace onet {

// Shortest-ish deterministic decimal rendering (%.12g with "-0" normalized).
// All CSV/JSON writers use it so identical runs produce identical bytes.
std::string format_number(double v);

// Per-class summary: destination, totals, throughput, observed extrema, and
// one throughput column per declared measurement interval.
std::string summary_csv(const ExperimentConfig& cfg, const Metrics& m);

// Long-form samples: slot,node,class,Q,D,Z. Z is a per-class receiver-side
// quantity, so it is only printed on the destination row of its class.
std::string timeseries_csv(const ExperimentConfig& cfg, const TimeSeries& ts);

// Creates parent directories as needed; throws ConfigError on I/O failure.
void write_text_file(const std::string& path, const std::string& content);

}  // namespace onet
