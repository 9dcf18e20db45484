#include "overloadnet/queues.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace onet {

void actual_transfers(const QueueState& state, const SlotDecision& dec,
                      const NetworkTopology& topo, const std::vector<TrafficClass>& classes,
                      SlotLedger& led) {
  const int C = state.n_classes;
  std::fill(led.mu_actual.begin(), led.mu_actual.end(), 0.0);
  std::fill(led.delivered.begin(), led.delivered.end(), 0.0);

  // (allocation, link index) scratch; rebuilt per (node, class).
  std::vector<std::pair<double, int>> order;
  for (int n = 0; n < state.n_nodes; ++n) {
    for (int c = 0; c < C; ++c) {
      double remaining = state.Q[state.at(n, c)];
      order.clear();
      for (int l : topo.out_links(n)) {
        double alloc = dec.mu[static_cast<size_t>(l) * C + c];
        if (alloc > 0.0) order.emplace_back(alloc, l);
      }
      if (!order.empty()) {
        // Larger allocations are served first; out_links() is already in
        // ascending link index order, so a stable sort keeps that tie-break.
        std::stable_sort(order.begin(), order.end(),
                         [](const auto& a, const auto& b) { return a.first > b.first; });
        for (auto [alloc, l] : order) {
          // take == remaining when alloc >= remaining, so the subtraction
          // leaves an exact zero and Q can never go negative.
          double take = std::min(remaining, alloc);
          led.mu_actual[static_cast<size_t>(l) * C + c] = take;
          remaining -= take;
        }
      }
      led.remaining[state.at(n, c)] = remaining;
    }
  }
  (void)classes;
}

void actual_drops(const QueueState& state, const SlotDecision& dec, SlotLedger& led) {
  for (size_t i = 0; i < led.remaining.size(); ++i) {
    led.drop_actual[i] = std::min(led.remaining[i], dec.drop[i]);
  }
  (void)state;
}

void apply_slot(QueueState& state, const SlotDecision& dec, const std::vector<double>& arrivals,
                const NetworkTopology& topo, const std::vector<TrafficClass>& classes,
                SlotLedger& led, ConservationAccount& account) {
  const int C = state.n_classes;

  for (int c = 0; c < C; ++c) {
    const int dest = classes[c].destination;
    for (int n = 0; n < state.n_nodes; ++n) {
      const size_t i = state.at(n, c);
      double inflow = 0.0;
      for (int l : topo.in_links(n)) inflow += led.mu_actual[static_cast<size_t>(l) * C + c];

      if (n == dest) {
        // Destinations sink everything immediately; endogenous inflow counts
        // as delivered (exogenous arrivals at the destination are forbidden).
        led.delivered[c] += inflow;
        account.delivered[c] += inflow;
        state.Q[i] = 0.0;
      } else {
        state.Q[i] = (led.remaining[i] - led.drop_actual[i]) + arrivals[i] + inflow;
      }
      account.arrivals[c] += arrivals[i];
      account.dropped[c] += led.drop_actual[i];

      double del = std::min(state.D[i], dec.phi[i]);
      led.deleted[i] = del;
      state.D[i] = (state.D[i] - del) + led.drop_actual[i];
    }
    double zsrv = std::min(state.Z[c], dec.nu[c]);
    state.Z[c] = (state.Z[c] - zsrv) + led.delivered[c];
  }
}

ConservationReport check_conservation(const ConservationAccount& account, const QueueState& state,
                                      double rel_tol) {
  ConservationReport rep;
  for (int c = 0; c < state.n_classes; ++c) {
    double backlog = 0.0;
    for (int n = 0; n < state.n_nodes; ++n) backlog += state.Q[state.at(n, c)];
    double residual = account.arrivals[c] - account.delivered[c] - account.dropped[c] - backlog;
    if (std::abs(residual) > std::abs(rep.residual)) rep.residual = residual;
    double tol = rel_tol * std::max(1.0, account.arrivals[c]);
    if (std::abs(residual) > tol && rep.ok) {
      rep.ok = false;
      rep.cls = c;
    }
  }
  return rep;
}

}  // namespace onet
