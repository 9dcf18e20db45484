#pragma once

#include <vector>

#include "overloadnet/queues.hpp"
#include "overloadnet/topology.hpp"

namespace onet {

// Max-differential-backlog routing. Each link is granted in full to the class
// maximizing Q_from - Q_to over the classes allowed on that link, provided the
// difference is strictly positive; otherwise the link idles. Ties go to the
// smallest class id. `receiver_backlog[c]` substitutes for the (empty) queue
// at the destination of class c — zero for plain threshold-drop runs, the
// signed pseudo-backlog for receiver-flow-controlled runs.
void route_backpressure(const QueueState& state, const NetworkTopology& topo,
                        const std::vector<TrafficClass>& classes, const std::vector<char>& mask,
                        const std::vector<double>& receiver_backlog, SlotDecision& dec);

// Threshold dropping: allocate d_max drops at (n, c) iff Q > D strictly.
void drop_decision(const QueueState& state, double d_max, SlotDecision& dec);

// Drop-queue service: delete phi = d_max from D at (n, c) iff D > V * theta_c
// strictly. v_theta[c] is the product V * theta_c.
void drop_queue_service(const QueueState& state, const std::vector<double>& v_theta, double d_max,
                        SlotDecision& dec);

// Additive constant B in the O(1/V) optimality gap:
//   B = |N| |C| [ (mu_out_max + d_max)^2 + (a_max + mu_in_max)^2 + 2 d_max^2 ]
// with mu_out_max / mu_in_max the largest total out-/in-capacity of any node.
double ora_gap_constant(const NetworkTopology& topo, int n_classes, double a_max, double d_max);

}  // namespace onet
