#pragma once

#include <vector>

#include "overloadnet/topology.hpp"

namespace onet {

// Backlog state for one slot. Q and D are [node * C + cls]; rows at a class
// destination are identically zero for Q (destinations buffer nothing) and
// constant for D. Z is the per-class receiver-side virtual backlog (zero and
// unused under policies without flow control).
struct QueueState {
  int n_nodes = 0;
  int n_classes = 0;
  std::vector<double> Q, D;  // node-major, class-minor
  std::vector<double> Z;     // per class

  void init(int nodes, int classes) {
    n_nodes = nodes;
    n_classes = classes;
    Q.assign(static_cast<size_t>(nodes) * classes, 0.0);
    D.assign(static_cast<size_t>(nodes) * classes, 0.0);
    Z.assign(classes, 0.0);
  }
  size_t at(int n, int c) const { return static_cast<size_t>(n) * n_classes + c; }
};

// Allocated (not yet realized) control rates for one slot.
struct SlotDecision {
  std::vector<double> mu;    // [link * C + cls] service allocation
  std::vector<double> drop;  // [node * C + cls] drop allocation, in [0, d_max]
  std::vector<double> phi;   // [node * C + cls] drop-queue deletion allocation
  std::vector<double> nu;    // [cls] virtual service allocation, in [0, nu_max]

  void init(int links, int nodes, int classes) {
    mu.assign(static_cast<size_t>(links) * classes, 0.0);
    drop.assign(static_cast<size_t>(nodes) * classes, 0.0);
    phi.assign(static_cast<size_t>(nodes) * classes, 0.0);
    nu.assign(classes, 0.0);
  }
  void clear() {
    std::fill(mu.begin(), mu.end(), 0.0);
    std::fill(drop.begin(), drop.end(), 0.0);
    std::fill(phi.begin(), phi.end(), 0.0);
    std::fill(nu.begin(), nu.end(), 0.0);
  }
};

// What actually moved in one slot; entrywise no larger than the allocation.
// `remaining` is the post-transmission backlog snapshot that drops and the
// queue update are computed from, which keeps Q >= 0 exact (no re-summation).
struct SlotLedger {
  std::vector<double> mu_actual;    // [link * C + cls]
  std::vector<double> drop_actual;  // [node * C + cls]
  std::vector<double> deleted;      // [node * C + cls] removed from D
  std::vector<double> remaining;    // [node * C + cls] Q after transmissions
  std::vector<double> delivered;    // [cls] arrivals into the destination

  void init(int links, int nodes, int classes) {
    mu_actual.assign(static_cast<size_t>(links) * classes, 0.0);
    drop_actual.assign(static_cast<size_t>(nodes) * classes, 0.0);
    deleted.assign(static_cast<size_t>(nodes) * classes, 0.0);
    remaining.assign(static_cast<size_t>(nodes) * classes, 0.0);
    delivered.assign(classes, 0.0);
  }
};

// Running per-class totals; arrivals == delivered + dropped + current backlog
// holds exactly after every slot.
struct ConservationAccount {
  std::vector<double> arrivals, delivered, dropped;

  void init(int classes) {
    arrivals.assign(classes, 0.0);
    delivered.assign(classes, 0.0);
    dropped.assign(classes, 0.0);
  }
};

// Realizes transmissions from the start-of-slot snapshot of Q. Out-links of a
// node with positive allocation are served in descending allocation order,
// ties by smallest link index; each takes min(remaining backlog, allocation).
void actual_transfers(const QueueState& state, const SlotDecision& dec,
                      const NetworkTopology& topo, const std::vector<TrafficClass>& classes,
                      SlotLedger& led);

// drop_actual = min((Q - sum of outgoing mu_actual)^+, drop allocation),
// computed from the exact post-transmission remainder.
void actual_drops(const QueueState& state, const SlotDecision& dec, SlotLedger& led);

// Applies one slot in the fixed order: transmit (already realized in `led`),
// drop, then add exogenous and endogenous arrivals. Updates D (deletions then
// drop inflow), Z (service then delivered inflow), and the account.
void apply_slot(QueueState& state, const SlotDecision& dec, const std::vector<double>& arrivals,
                const NetworkTopology& topo, const std::vector<TrafficClass>& classes,
                SlotLedger& led, ConservationAccount& account);

struct ConservationReport {
  bool ok = true;
  int cls = -1;         // worst offending class when !ok
  double residual = 0;  // signed residual for that class
};

// Per class: |arrivals - delivered - dropped - current backlog| must be within
// rel_tol * max(1, arrivals).
ConservationReport check_conservation(const ConservationAccount& account, const QueueState& state,
                                      double rel_tol = 1e-9);

}  // namespace onet
