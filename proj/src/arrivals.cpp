#include "overloadnet/arrivals.hpp"

#include <algorithm>
#include <cmath>

#include "overloadnet/errors.hpp"
#include "overloadnet/rng.hpp"

namespace onet {

ArrivalSchedule::ArrivalSchedule(int n_nodes, int n_classes, double a_max, std::uint64_t horizon)
    : n_nodes_(n_nodes), n_classes_(n_classes), a_max_(a_max), horizon_(horizon) {
  if (n_nodes <= 0 || n_classes <= 0)
    throw ConfigError("arrivals", "schedule needs at least one node and one class");
  if (!std::isfinite(a_max) || a_max <= 0.0)
    throw ConfigError("arrivals.a_max", "a_max must be finite and positive");
  if (horizon == 0) throw ConfigError("run.slots", "horizon must be at least 1 slot");
  segments_.assign(static_cast<size_t>(n_nodes) * n_classes, {});
}

void ArrivalSchedule::add(int node, int cls, ArrivalSegment seg) {
  segments_.at(index(node, cls)).push_back(seg);
  finalized_ = false;
}

void ArrivalSchedule::finalize(const std::vector<TrafficClass>& classes) {
  if (static_cast<int>(classes.size()) != n_classes_)
    throw ConfigError("arrivals", "class count mismatch");
  for (int n = 0; n < n_nodes_; ++n) {
    for (int c = 0; c < n_classes_; ++c) {
      auto& segs = segments_[index(n, c)];
      std::sort(segs.begin(), segs.end(),
                [](const ArrivalSegment& a, const ArrivalSegment& b) { return a.start < b.start; });
      const std::string field =
          "arrivals.entries(node=" + std::to_string(n) + ",class=" + std::to_string(classes[c].id) + ")";
      std::uint64_t cursor = 0;
      std::vector<ArrivalSegment> norm;
      for (const ArrivalSegment& s : segs) {
        if (s.end <= s.start) throw ConfigError(field, "segment end must exceed start");
        if (s.end > horizon_) throw ConfigError(field, "segment extends past the run horizon");
        if (s.start < cursor) throw ConfigError(field, "segments overlap");
        if (!std::isfinite(s.batch) || s.batch < 0.0)
          throw ConfigError(field + ".batch", "batch must be finite and nonnegative");
        if (s.batch > a_max_)
          throw ConfigError(field + ".batch", "batch exceeds a_max");
        if (!std::isfinite(s.prob) || s.prob < 0.0 || s.prob > 1.0)
          throw ConfigError(field + ".prob", "probability must be in [0, 1]");
        if (n == classes[c].destination && s.batch * s.prob > 0.0)
          throw ConfigError(field, "a class cannot have arrivals at its own destination");
        if (s.start > cursor) norm.push_back({cursor, s.start, 0.0, 0.0});
        norm.push_back(s);
        cursor = s.end;
      }
      if (cursor < horizon_) norm.push_back({cursor, horizon_, 0.0, 0.0});
      segs = std::move(norm);
    }
  }
  finalized_ = true;
}

double ArrivalSchedule::mean_rate(int node, int cls) const {
  return mean_rate_in(node, cls, 0, horizon_);
}

double ArrivalSchedule::mean_rate_in(int node, int cls, std::uint64_t lo, std::uint64_t hi) const {
  if (hi <= lo) return 0.0;
  double sum = 0.0;
  for (const ArrivalSegment& s : segments_[index(node, cls)]) {
    const std::uint64_t a = std::max(lo, s.start);
    const std::uint64_t b = std::min(hi, s.end);
    if (b > a) sum += static_cast<double>(b - a) * s.batch * s.prob;
  }
  return sum / static_cast<double>(hi - lo);
}

ArrivalSampler::ArrivalSampler(std::uint64_t seed, const ArrivalSchedule& schedule)
    : schedule_(&schedule) {
  const size_t n = static_cast<size_t>(schedule.n_nodes()) * schedule.n_classes();
  keys_.resize(n);
  for (size_t i = 0; i < n; ++i) keys_[i] = rng::stream_key(seed, i);
}

double ArrivalSampler::sample_one(int node, int cls, std::uint64_t slot) const {
  const size_t idx = static_cast<size_t>(node) * schedule_->n_classes() + cls;
  for (const ArrivalSegment& s : schedule_->segments(node, cls)) {
    if (slot >= s.start && slot < s.end) {
      if (s.prob <= 0.0 || s.batch <= 0.0) return 0.0;
      return rng::uniform(keys_[idx], slot) < s.prob ? s.batch : 0.0;
    }
  }
  return 0.0;
}

void ArrivalSampler::sample(std::uint64_t slot, std::vector<double>& out) const {
  const int N = schedule_->n_nodes(), C = schedule_->n_classes();
  out.assign(static_cast<size_t>(N) * C, 0.0);
  for (int n = 0; n < N; ++n)
    for (int c = 0; c < C; ++c) out[static_cast<size_t>(n) * C + c] = sample_one(n, c, slot);
}

}  // namespace onet
