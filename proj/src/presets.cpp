#include "overloadnet/presets.hpp"

#include <map>

#include "overloadnet/errors.hpp"

namespace onet {
namespace {

constexpr long long kSlots = 1000000;
constexpr std::uint64_t kHorizon = 1000000;

ExperimentConfig three_node_config(UtilitySpec u1, UtilitySpec u2, UtilitySpec u3) {
  ExperimentConfig cfg;
  cfg.topology = three_node_topology();
  cfg.classes = {
      TrafficClass{1, cfg.topology.node_index("C"), u1, false, {}},
      TrafficClass{2, cfg.topology.node_index("C"), u2, false, {}},
      TrafficClass{3, cfg.topology.node_index("B"), u3, false, {}},
  };
  validate_classes(cfg.topology, cfg.classes);
  cfg.run.slots = kSlots;
  cfg.run.seed = kDefaultSeed;
  return cfg;
}

void add_constant(ArrivalSchedule& s, int node, int cls, double batch, double prob) {
  s.add(node, cls, ArrivalSegment{0, kHorizon, batch, prob});
}

ExperimentConfig three_node_overloaded(UtilitySpec u1, UtilitySpec u2, UtilitySpec u3) {
  ExperimentConfig cfg = three_node_config(u1, u2, u3);
  ArrivalSchedule s(3, 3, 20.0, kHorizon);
  add_constant(s, cfg.topology.node_index("B"), 0, 20.0, 0.1);  // class 1, rate 2
  add_constant(s, cfg.topology.node_index("A"), 1, 20.0, 0.1);  // class 2, rate 2
  add_constant(s, cfg.topology.node_index("A"), 2, 20.0, 0.1);  // class 3, rate 2
  s.finalize(cfg.classes);
  cfg.arrivals = s;
  return cfg;
}

ExperimentConfig table1_config(double w1, double w2, double w3) {
  ExperimentConfig cfg = three_node_overloaded(UtilitySpec::linear(w1), UtilitySpec::linear(w2),
                                               UtilitySpec::linear(w3));
  cfg.policy = PolicyConfig{"ora", 100.0, 21.0, 0.1, 0.0, 0.0};
  return cfg;
}

// Classes 1 and 3 hold rate 0.8 throughout; class 2 bursts from 0.1 to 2
// inside [3e5, 6e5), temporarily overloading the network.
ExperimentConfig table2_config() {
  ExperimentConfig cfg = three_node_config(UtilitySpec::linear(3.0), UtilitySpec::linear(5.0),
                                           UtilitySpec::linear(1.0));
  const int a = cfg.topology.node_index("A");
  const int b = cfg.topology.node_index("B");
  ArrivalSchedule s(3, 3, 20.0, kHorizon);
  add_constant(s, b, 0, 20.0, 0.04);                       // class 1, rate 0.8
  s.add(a, 1, ArrivalSegment{0, 300000, 20.0, 0.005});     // class 2, rate 0.1
  s.add(a, 1, ArrivalSegment{300000, 600000, 20.0, 0.1});  // class 2, rate 2
  s.add(a, 1, ArrivalSegment{600000, kHorizon, 20.0, 0.005});
  add_constant(s, a, 2, 20.0, 0.04);  // class 3, rate 0.8
  s.finalize(cfg.classes);
  cfg.arrivals = s;
  cfg.policy = PolicyConfig{"ora", 100.0, 21.0, 0.1, 0.0, 0.0};
  cfg.run.intervals = {{0, 300000}, {300000, 600000}, {600000, kSlots}};
  return cfg;
}

ExperimentConfig table3_config() {
  ExperimentConfig cfg =
      three_node_overloaded(UtilitySpec::log_utility(1.0), UtilitySpec::log_utility(1.0),
                            UtilitySpec::log_utility(1.0));
  cfg.policy = PolicyConfig{"uora", 100.0, 21.0, 0.1, 3.0, 1000.0};
  return cfg;
}

ExperimentConfig table5_config() {
  ExperimentConfig cfg;
  cfg.topology = tree_topology();
  const int r = cfg.topology.node_index("R");
  cfg.classes = {
      TrafficClass{1, r, UtilitySpec::alpha_fair(100.0), false, {}},
      TrafficClass{2, r, UtilitySpec::alpha_fair(100.0), false, {}},
      TrafficClass{3, r, UtilitySpec::alpha_fair(100.0), false, {}},
  };
  validate_classes(cfg.topology, cfg.classes);
  ArrivalSchedule s(5, 3, 20.0, kHorizon);
  add_constant(s, cfg.topology.node_index("A"), 0, 20.0, 0.1);  // class 1, first source
  add_constant(s, cfg.topology.node_index("C"), 0, 20.0, 0.1);  // class 1, second source
  add_constant(s, cfg.topology.node_index("B"), 1, 20.0, 0.1);
  add_constant(s, cfg.topology.node_index("D"), 2, 20.0, 0.1);
  s.finalize(cfg.classes);
  cfg.arrivals = s;
  cfg.policy = PolicyConfig{"uora", 50.0, 22.0, 1.0, 4.0, 100.0};
  cfg.run.slots = kSlots;
  cfg.run.seed = kDefaultSeed;
  return cfg;
}

std::map<std::string, PaperTable> build_paper_tables() {
  std::map<std::string, PaperTable> t;
  t["table1a"] = PaperTable{
      {"r1", "r2", "r3"},
      {{"10", {.787, .168, .099}},
       {"20", {.867, .133, .410}},
       {"50", {.992, .008, .967}},
       {"100", {.999, 0.0, .999}}},
      {{1.0, 0.0, 1.0}}};
  t["table1b"] = PaperTable{
      {"r1", "r2", "r3"},
      {{"10", {.185, .815, .083}},
       {"20", {.107, .893, .095}},
       {"50", {.031, .969, .031}},
       {"100", {.002, .998, .001}}},
      {{0.0, 1.0, 0.0}}};
  t["table2"] = PaperTable{
      {"r1", "r2", "r3"},
      {{"[0,300000)", {.797, .097, .771}},
       {"[300000,600000)", {.001, .998, 0.0}},
       {"[600000,1000000)", {.798, .102, .772}}},
      {{0.8, 0.1, 0.8}, {0.0, 1.0, 0.0}, {0.8, 0.1, 0.8}}};
  t["table3"] = PaperTable{
      {"r1", "r2", "r3", "utility"},
      {{"10", {.522, .478, .522, -2.038}},
       {"20", {.585, .415, .585, -1.952}},
       {"50", {.631, .369, .631, -1.918}},
       {"100", {.648, .352, .647, -1.912}}},
      {{2.0 / 3.0, 1.0 / 3.0, 2.0 / 3.0, -1.910}}};
  t["table4"] = PaperTable{
      {"Q_B(1)", "Q_B(2)", "Q_A(2)", "Q_A(3)", "bound"},
      {{"10", {140, 97, 137, 137, 142}},
       {"20", {237, 187, 240, 236, 242}},
       {"50", {539, 441, 538, 540, 542}},
       {"100", {1036, 865, 1039, 1039, 1042}}},
      {}};
  t["table5"] = PaperTable{
      {"r1", "r2", "r3"},
      {{"10", {.200, .100, .100}},
       {"20", {.364, .206, .205}},
       {"30", {.661, .650, .651}},
       {"50", {.667, .667, .667}}},
      {{2.0 / 3.0, 2.0 / 3.0, 2.0 / 3.0}}};
  t["fig5"] = PaperTable{{"Q_B(1)", "Q_B(2)", "Q_A(2)", "Q_A(3)"}, {}, {}};
  return t;
}

}  // namespace

NetworkTopology three_node_topology() {
  return NetworkTopology({"A", "B", "C"}, {Link{0, 1, 1.0}, Link{1, 2, 1.0}});
}

NetworkTopology tree_topology() {
  return NetworkTopology({"A", "B", "C", "D", "R"},
                         {Link{0, 1, 1.0}, Link{1, 4, 1.0}, Link{2, 3, 1.0}, Link{3, 4, 1.0}});
}

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = {"table1a", "table1b", "table2", "table3",
                                                 "table4",  "table5",  "fig5"};
  return names;
}

bool is_preset(const std::string& name) {
  for (const auto& n : preset_names()) {
    if (n == name) return true;
  }
  return false;
}

Preset make_preset(const std::string& name) {
  Preset p;
  p.name = name;
  if (name == "table1a") {
    p.summary = "threshold dropping, overloaded 3-node chain, objective 3r1+2r2+r3, V sweep";
    p.config = table1_config(3.0, 2.0, 1.0);
    p.v_sweep = {10, 20, 50, 100};
  } else if (name == "table1b") {
    p.summary = "threshold dropping, overloaded 3-node chain, objective 3r1+5r2+r3, V sweep";
    p.config = table1_config(3.0, 5.0, 1.0);
    p.v_sweep = {10, 20, 50, 100};
  } else if (name == "table2") {
    p.summary = "threshold dropping under a temporary overload burst, per-interval throughput";
    p.config = table2_config();
  } else if (name == "fig5") {
    p.summary = "queue sample paths during the temporary overload of table2";
    p.config = table2_config();
    p.config.run.stride = 1000;
  } else if (name == "table3") {
    p.summary = "receiver flow control on the 3-node chain, proportional fairness, V sweep";
    p.config = table3_config();
    p.v_sweep = {10, 20, 50, 100};
  } else if (name == "table4") {
    p.summary = "maximum backlogs of the table3 runs against the V*theta+2*d_max bound";
    p.config = table3_config();
    p.v_sweep = {10, 20, 50, 100};
  } else if (name == "table5") {
    p.summary = "receiver flow control on the tree, near-max-min fairness, V sweep";
    p.config = table5_config();
    p.v_sweep = {10, 20, 30, 50};
  } else {
    throw ConfigError("preset", "unknown preset '" + name + "'");
  }
  return p;
}

const PaperTable& paper_table(const std::string& preset) {
  static const std::map<std::string, PaperTable> tables = build_paper_tables();
  auto it = tables.find(preset);
  if (it == tables.end()) throw ConfigError("preset", "unknown preset '" + preset + "'");
  return it->second;
}

}  // namespace onet
