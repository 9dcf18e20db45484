#pragma once

#include <cstdint>
#include <vector>

#include "overloadnet/topology.hpp"

namespace onet {

// One batch-Bernoulli phase of an arrival process on slots [start, end):
// `batch` packets arrive with probability `prob`, else none. Mean rate is
// batch * prob.
struct ArrivalSegment {
  std::uint64_t start = 0;
  std::uint64_t end = 0;
  double batch = 0.0;
  double prob = 0.0;

  bool operator==(const ArrivalSegment&) const = default;
};

// Per-(node, class) piecewise-constant arrival schedule over a fixed horizon.
// After finalize(), segments for every pair are disjoint, sorted, and cover
// [0, horizon) exactly (gaps are filled with zero-rate segments), and no pair
// (d_c, c) has positive arrivals.
class ArrivalSchedule {
 public:
  ArrivalSchedule() = default;
  ArrivalSchedule(int n_nodes, int n_classes, double a_max, std::uint64_t horizon);

  void add(int node, int cls, ArrivalSegment seg);

  // Validates and normalizes; throws ConfigError with a field path.
  void finalize(const std::vector<TrafficClass>& classes);

  int n_nodes() const { return n_nodes_; }
  int n_classes() const { return n_classes_; }
  double a_max() const { return a_max_; }
  std::uint64_t horizon() const { return horizon_; }
  bool finalized() const { return finalized_; }

  const std::vector<ArrivalSegment>& segments(int node, int cls) const {
    return segments_[index(node, cls)];
  }

  // Mean rate over [lo, hi); defaults to the whole horizon.
  double mean_rate(int node, int cls) const;
  double mean_rate_in(int node, int cls, std::uint64_t lo, std::uint64_t hi) const;

  bool operator==(const ArrivalSchedule&) const = default;

 private:
  size_t index(int node, int cls) const {
    return static_cast<size_t>(node) * n_classes_ + cls;
  }

  int n_nodes_ = 0;
  int n_classes_ = 0;
  double a_max_ = 0.0;
  std::uint64_t horizon_ = 0;
  bool finalized_ = false;
  std::vector<std::vector<ArrivalSegment>> segments_;
};

// Draws arrivals for one slot. One independently keyed counter-based stream
// per (node, class), so results do not depend on sampling order and repeated
// calls for the same slot return the same matrix.
class ArrivalSampler {
 public:
  ArrivalSampler(std::uint64_t seed, const ArrivalSchedule& schedule);

  // out[node * C + cls]; out is resized as needed.
  void sample(std::uint64_t slot, std::vector<double>& out) const;

  double sample_one(int node, int cls, std::uint64_t slot) const;

 private:
  const ArrivalSchedule* schedule_;
  std::vector<std::uint64_t> keys_;
};

}  // namespace onet
