#include "doctest.h"

#include <cmath>
#include <vector>

#include "overloadnet/queues.hpp"
#include "overloadnet/topology.hpp"

using namespace onet;

namespace {

// A -> B -> C chain with one class destined for C.
struct Chain {
  NetworkTopology topo{std::vector<std::string>{"A", "B", "C"},
                       std::vector<Link>{Link{0, 1, 1.0}, Link{1, 2, 1.0}}};
  std::vector<TrafficClass> classes{TrafficClass{1, 2, UtilitySpec::linear(1.0), false, {}}};
  QueueState st;
  SlotDecision dec;
  SlotLedger led;
  ConservationAccount acct;

  Chain() {
    st.init(3, 1);
    dec.init(2, 3, 1);
    led.init(2, 3, 1);
    acct.init(1);
  }
};

}  // namespace

TEST_CASE("transfers move min(backlog, allocation)") {
  Chain x;
  x.st.Q[x.st.at(0, 0)] = 5.0;
  x.dec.mu[0] = 1.0;  // link A->B
  actual_transfers(x.st, x.dec, x.topo, x.classes, x.led);
  CHECK(x.led.mu_actual[0] == 1.0);
  CHECK(x.led.remaining[x.st.at(0, 0)] == 4.0);

  x.st.Q[x.st.at(0, 0)] = 0.4;
  actual_transfers(x.st, x.dec, x.topo, x.classes, x.led);
  CHECK(x.led.mu_actual[0] == 0.4);
  CHECK(x.led.remaining[x.st.at(0, 0)] == 0.0);
}

TEST_CASE("scarce backlog is served in descending allocation order") {
  // A with two out-links; equal allocations tie-break to the smaller index.
  NetworkTopology topo({"A", "B", "C"}, {Link{0, 1, 1.0}, Link{0, 2, 1.0}});
  std::vector<TrafficClass> classes{TrafficClass{1, 2, UtilitySpec::linear(1.0), false, {}}};
  QueueState st;
  st.init(3, 1);
  SlotDecision dec;
  dec.init(2, 3, 1);
  SlotLedger led;
  led.init(2, 3, 1);

  st.Q[st.at(0, 0)] = 1.0;
  dec.mu[0] = 1.0;
  dec.mu[1] = 1.0;
  actual_transfers(st, dec, topo, classes, led);
  CHECK(led.mu_actual[0] == 1.0);
  CHECK(led.mu_actual[1] == 0.0);

  // unequal allocations: the larger one is served first
  dec.mu[0] = 0.6;
  dec.mu[1] = 1.0;
  actual_transfers(st, dec, topo, classes, led);
  CHECK(led.mu_actual[0] == 0.0);
  CHECK(led.mu_actual[1] == 1.0);
}

TEST_CASE("actual drops follow the post-transmission remainder") {
  Chain x;
  const size_t a = x.st.at(0, 0);

  x.st.Q[a] = 3.0;
  x.dec.mu[0] = 1.0;
  x.dec.drop[a] = 21.0;
  actual_transfers(x.st, x.dec, x.topo, x.classes, x.led);
  actual_drops(x.st, x.dec, x.led);
  CHECK(x.led.drop_actual[a] == 2.0);

  x.st.Q[a] = 0.0;
  actual_transfers(x.st, x.dec, x.topo, x.classes, x.led);
  actual_drops(x.st, x.dec, x.led);
  CHECK(x.led.drop_actual[a] == 0.0);

  x.st.Q[a] = 30.0;
  actual_transfers(x.st, x.dec, x.topo, x.classes, x.led);
  actual_drops(x.st, x.dec, x.led);
  CHECK(x.led.drop_actual[a] == 21.0);
}

TEST_CASE("all-zero state is a fixed point") {
  Chain x;
  std::vector<double> no_arrivals(3, 0.0);
  actual_transfers(x.st, x.dec, x.topo, x.classes, x.led);
  actual_drops(x.st, x.dec, x.led);
  apply_slot(x.st, x.dec, no_arrivals, x.topo, x.classes, x.led, x.acct);
  for (double q : x.st.Q) CHECK(q == 0.0);
  for (double d : x.st.D) CHECK(d == 0.0);
  for (double z : x.st.Z) CHECK(z == 0.0);
  CHECK(check_conservation(x.acct, x.st).ok);
}

TEST_CASE("drop queue receives actual drops after deletions") {
  Chain x;
  const size_t a = x.st.at(0, 0);
  x.st.Q[a] = 2.0;
  x.st.D[a] = 1000.0;
  x.dec.drop[a] = 21.0;  // takes 2, the whole remainder
  std::vector<double> no_arrivals(3, 0.0);
  actual_transfers(x.st, x.dec, x.topo, x.classes, x.led);
  actual_drops(x.st, x.dec, x.led);
  apply_slot(x.st, x.dec, no_arrivals, x.topo, x.classes, x.led, x.acct);
  CHECK(x.st.D[a] == 1002.0);
  CHECK(x.st.Q[a] == 0.0);

  // deletion capped by phi, then inflow added
  x.dec.clear();
  x.dec.phi[a] = 21.0;
  actual_transfers(x.st, x.dec, x.topo, x.classes, x.led);
  actual_drops(x.st, x.dec, x.led);
  apply_slot(x.st, x.dec, no_arrivals, x.topo, x.classes, x.led, x.acct);
  CHECK(x.st.D[a] == 981.0);
}

TEST_CASE("virtual queue serves then absorbs deliveries") {
  Chain x;
  x.st.Q[x.st.at(1, 0)] = 1.0;  // B holds one packet for C
  x.st.Z[0] = 5.0;
  x.dec.mu[1] = 1.0;  // link B->C delivers it
  x.dec.nu[0] = 0.1;
  std::vector<double> no_arrivals(3, 0.0);
  actual_transfers(x.st, x.dec, x.topo, x.classes, x.led);
  actual_drops(x.st, x.dec, x.led);
  apply_slot(x.st, x.dec, no_arrivals, x.topo, x.classes, x.led, x.acct);
  CHECK(x.led.delivered[0] == 1.0);
  CHECK(x.st.Z[0] == doctest::Approx(5.9));
  CHECK(x.st.Q[x.st.at(2, 0)] == 0.0);  // destination buffers nothing

  // service is capped by the current virtual backlog
  x.dec.clear();
  x.dec.nu[0] = 100.0;
  actual_transfers(x.st, x.dec, x.topo, x.classes, x.led);
  actual_drops(x.st, x.dec, x.led);
  apply_slot(x.st, x.dec, no_arrivals, x.topo, x.classes, x.led, x.acct);
  CHECK(x.st.Z[0] == 0.0);
}

TEST_CASE("conservation ledger balances and detects corruption") {
  Chain x;
  const size_t a = x.st.at(0, 0);
  std::vector<double> arrivals(3, 0.0);

  // a few slots of arrivals at A with transfers toward C and some dropping
  for (int t = 0; t < 10; ++t) {
    x.dec.clear();
    x.dec.mu[0] = 1.0;
    x.dec.mu[1] = 1.0;
    if (x.st.Q[a] > 5.0) x.dec.drop[a] = 2.0;
    arrivals[a] = (t % 2 == 0) ? 3.0 : 0.0;
    actual_transfers(x.st, x.dec, x.topo, x.classes, x.led);
    actual_drops(x.st, x.dec, x.led);
    apply_slot(x.st, x.dec, arrivals, x.topo, x.classes, x.led, x.acct);
    REQUIRE(check_conservation(x.acct, x.st).ok);
    for (double q : x.st.Q) REQUIRE(q >= 0.0);
  }
  CHECK(x.acct.arrivals[0] == 15.0);

  ConservationAccount broken = x.acct;
  broken.delivered[0] += 1.0;
  ConservationReport rep = check_conservation(broken, x.st);
  CHECK_FALSE(rep.ok);
  CHECK(rep.cls == 0);
  CHECK(std::abs(rep.residual) == doctest::Approx(1.0));
}

TEST_CASE("apply_slot is deterministic") {
  Chain x, y;
  x.st.Q[x.st.at(0, 0)] = 7.25;
  y.st.Q[y.st.at(0, 0)] = 7.25;
  x.dec.mu[0] = 1.0;
  y.dec.mu[0] = 1.0;
  std::vector<double> arrivals = {0.5, 0.0, 0.0};
  actual_transfers(x.st, x.dec, x.topo, x.classes, x.led);
  actual_drops(x.st, x.dec, x.led);
  apply_slot(x.st, x.dec, arrivals, x.topo, x.classes, x.led, x.acct);
  actual_transfers(y.st, y.dec, y.topo, y.classes, y.led);
  actual_drops(y.st, y.dec, y.led);
  apply_slot(y.st, y.dec, arrivals, y.topo, y.classes, y.led, y.acct);
  CHECK(x.st.Q == y.st.Q);
  CHECK(x.st.D == y.st.D);
  CHECK(x.st.Z == y.st.Z);
}
