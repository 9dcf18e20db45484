#include "overloadnet/policy_ora.hpp"

namespace onet {

void route_backpressure(const QueueState& state, const NetworkTopology& topo,
                        const std::vector<TrafficClass>& classes, const std::vector<char>& mask,
                        const std::vector<double>& receiver_backlog, SlotDecision& dec) {
  const int C = state.n_classes;
  for (int l = 0; l < topo.link_count(); ++l) {
    const Link& lk = topo.link(l);
    int best_c = -1;
    double best_w = 0.0;  // only strictly positive weights win
    for (int c = 0; c < C; ++c) {
      if (!mask[static_cast<size_t>(l) * C + c]) continue;
      double at_to = (lk.to == classes[c].destination) ? receiver_backlog[c]
                                                       : state.Q[state.at(lk.to, c)];
      double w = state.Q[state.at(lk.from, c)] - at_to;
      if (w > best_w) {
        best_w = w;
        best_c = c;
      }
    }
    if (best_c >= 0) dec.mu[static_cast<size_t>(l) * C + best_c] = lk.capacity;
  }
}

void drop_decision(const QueueState& state, double d_max, SlotDecision& dec) {
  for (size_t i = 0; i < state.Q.size(); ++i) {
    dec.drop[i] = (state.Q[i] > state.D[i]) ? d_max : 0.0;
  }
}

void drop_queue_service(const QueueState& state, const std::vector<double>& v_theta, double d_max,
                        SlotDecision& dec) {
  const int C = state.n_classes;
  for (int n = 0; n < state.n_nodes; ++n) {
    for (int c = 0; c < C; ++c) {
      const size_t i = state.at(n, c);
      dec.phi[i] = (state.D[i] > v_theta[c]) ? d_max : 0.0;
    }
  }
}

double ora_gap_constant(const NetworkTopology& topo, int n_classes, double a_max, double d_max) {
  auto [in_max, out_max] = max_in_out_rates(topo);
  double t1 = (out_max + d_max) * (out_max + d_max);
  double t2 = (a_max + in_max) * (a_max + in_max);
  return topo.node_count() * static_cast<double>(n_classes) * (t1 + t2 + 2.0 * d_max * d_max);
}

}  // namespace onet
