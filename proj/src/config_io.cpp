#include "overloadnet/config_io.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "overloadnet/errors.hpp"

namespace onet {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw ConfigError(path, msg);
}

const json& require(const json& obj, const char* key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(path, "missing required key '" + std::string(key) + "'");
  return *it;
}

void expect_object(const json& v, const std::string& path) {
  if (!v.is_object()) fail(path, "must be an object");
}

void expect_array(const json& v, const std::string& path) {
  if (!v.is_array()) fail(path, "must be an array");
}

void reject_unknown(const json& obj, std::set<std::string> known, const std::string& path) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!known.count(it.key())) fail(path, "unknown key '" + it.key() + "'");
  }
}

double get_number(const json& v, const std::string& path) {
  if (!v.is_number()) fail(path, "must be a number");
  double d = v.get<double>();
  if (!std::isfinite(d)) fail(path, "must be finite");
  return d;
}

long long get_integer(const json& v, const std::string& path) {
  if (v.is_number_integer()) return v.get<long long>();
  if (v.is_number_float()) {
    double d = v.get<double>();
    if (d == std::floor(d) && std::abs(d) < 9e15) return static_cast<long long>(d);
  }
  fail(path, "must be an integer");
}

std::string get_string(const json& v, const std::string& path) {
  if (!v.is_string()) fail(path, "must be a string");
  return v.get<std::string>();
}

int node_ref(const NetworkTopology& topo, const json& v, const std::string& path) {
  int idx = topo.node_index(get_string(v, path));
  if (idx < 0) fail(path, "unknown node '" + v.get<std::string>() + "'");
  return idx;
}

NetworkTopology parse_topology(const json& j) {
  expect_object(j, "topology");
  reject_unknown(j, {"nodes", "links"}, "topology");
  const json& jn = require(j, "nodes", "topology");
  expect_array(jn, "topology.nodes");
  std::vector<std::string> nodes;
  for (size_t i = 0; i < jn.size(); ++i) {
    nodes.push_back(get_string(jn[i], "topology.nodes[" + std::to_string(i) + "]"));
  }
  // Name lookups below need the node list before links are resolved.
  NetworkTopology names_only(nodes, {});

  const json& jl = require(j, "links", "topology");
  expect_array(jl, "topology.links");
  std::vector<Link> links;
  for (size_t i = 0; i < jl.size(); ++i) {
    std::string path = "topology.links[" + std::to_string(i) + "]";
    expect_object(jl[i], path);
    reject_unknown(jl[i], {"from", "to", "capacity"}, path);
    Link lk;
    lk.from = node_ref(names_only, require(jl[i], "from", path), path + ".from");
    lk.to = node_ref(names_only, require(jl[i], "to", path), path + ".to");
    lk.capacity = get_number(require(jl[i], "capacity", path), path + ".capacity");
    links.push_back(lk);
  }
  return NetworkTopology(std::move(nodes), std::move(links));
}

UtilitySpec parse_utility(const json& j, const std::string& path) {
  expect_object(j, path);
  reject_unknown(j, {"kind", "weight", "shift", "alpha"}, path);
  std::string kind = get_string(require(j, "kind", path), path + ".kind");
  UtilitySpec u;
  if (kind == "linear") {
    u.kind = UtilitySpec::Kind::Linear;
  } else if (kind == "log") {
    u.kind = UtilitySpec::Kind::Log;
  } else if (kind == "alpha_fair") {
    u.kind = UtilitySpec::Kind::AlphaFair;
  } else {
    fail(path + ".kind", "must be one of linear, log, alpha_fair");
  }
  if (j.contains("weight")) u.weight = get_number(j["weight"], path + ".weight");
  if (j.contains("shift")) {
    if (u.kind != UtilitySpec::Kind::Log) fail(path + ".shift", "only valid for kind log");
    u.shift = get_number(j["shift"], path + ".shift");
  }
  if (j.contains("alpha")) {
    if (u.kind != UtilitySpec::Kind::AlphaFair) {
      fail(path + ".alpha", "only valid for kind alpha_fair");
    }
    u.alpha = get_number(j["alpha"], path + ".alpha");
  }
  u.validate(path);
  return u;
}

std::vector<TrafficClass> parse_classes(const json& j, const NetworkTopology& topo) {
  expect_array(j, "classes");
  std::vector<TrafficClass> classes;
  for (size_t i = 0; i < j.size(); ++i) {
    std::string path = "classes[" + std::to_string(i) + "]";
    expect_object(j[i], path);
    reject_unknown(j[i], {"id", "destination", "utility", "allowed_links"}, path);
    TrafficClass cls;
    cls.id = static_cast<int>(get_integer(require(j[i], "id", path), path + ".id"));
    cls.destination = node_ref(topo, require(j[i], "destination", path), path + ".destination");
    cls.utility = parse_utility(require(j[i], "utility", path), path + ".utility");
    if (j[i].contains("allowed_links")) {
      const json& ja = j[i]["allowed_links"];
      expect_array(ja, path + ".allowed_links");
      cls.restrict_links = true;
      for (size_t k = 0; k < ja.size(); ++k) {
        std::string lp = path + ".allowed_links[" + std::to_string(k) + "]";
        if (!ja[k].is_array() || ja[k].size() != 2) fail(lp, "must be a [from, to] pair");
        int from = node_ref(topo, ja[k][0], lp);
        int to = node_ref(topo, ja[k][1], lp);
        int link = -1;
        for (int l = 0; l < topo.link_count(); ++l) {
          if (topo.link(l).from == from && topo.link(l).to == to) link = l;
        }
        if (link < 0) fail(lp, "no such link");
        cls.allowed_links.push_back(link);
      }
    }
    classes.push_back(std::move(cls));
  }
  return classes;
}

ArrivalSchedule parse_arrivals(const json& j, const NetworkTopology& topo,
                               const std::vector<TrafficClass>& classes, long long slots) {
  expect_object(j, "arrivals");
  reject_unknown(j, {"a_max", "entries"}, "arrivals");
  double a_max = get_number(require(j, "a_max", "arrivals"), "arrivals.a_max");
  ArrivalSchedule sched(topo.node_count(), static_cast<int>(classes.size()), a_max,
                        static_cast<std::uint64_t>(slots));

  std::map<int, int> id_to_index;
  for (size_t c = 0; c < classes.size(); ++c) id_to_index[classes[c].id] = static_cast<int>(c);

  const json& je = require(j, "entries", "arrivals");
  expect_array(je, "arrivals.entries");
  for (size_t i = 0; i < je.size(); ++i) {
    std::string path = "arrivals.entries[" + std::to_string(i) + "]";
    expect_object(je[i], path);
    reject_unknown(je[i], {"node", "class", "segments"}, path);
    int node = node_ref(topo, require(je[i], "node", path), path + ".node");
    int id = static_cast<int>(get_integer(require(je[i], "class", path), path + ".class"));
    auto it = id_to_index.find(id);
    if (it == id_to_index.end()) fail(path + ".class", "unknown class id " + std::to_string(id));

    const json& js = require(je[i], "segments", path);
    expect_array(js, path + ".segments");
    for (size_t k = 0; k < js.size(); ++k) {
      std::string sp = path + ".segments[" + std::to_string(k) + "]";
      expect_object(js[k], sp);
      reject_unknown(js[k], {"start", "end", "batch", "prob", "rate"}, sp);
      ArrivalSegment seg;
      long long start = get_integer(require(js[k], "start", sp), sp + ".start");
      long long end = get_integer(require(js[k], "end", sp), sp + ".end");
      if (start < 0) fail(sp + ".start", "must be nonnegative");
      seg.start = static_cast<std::uint64_t>(start);
      seg.end = static_cast<std::uint64_t>(end);
      if (js[k].contains("rate")) {
        if (js[k].contains("prob")) fail(sp, "give either rate or batch+prob, not both");
        double rate = get_number(js[k]["rate"], sp + ".rate");
        seg.batch = js[k].contains("batch") ? get_number(js[k]["batch"], sp + ".batch") : 20.0;
        if (!(seg.batch > 0.0)) fail(sp + ".batch", "must be positive");
        seg.prob = rate / seg.batch;
        if (seg.prob > 1.0) {
          fail(sp + ".rate", "rate " + std::to_string(rate) + " needs a batch of at least " +
                                 std::to_string(rate));
        }
      } else {
        seg.batch = get_number(require(js[k], "batch", sp), sp + ".batch");
        seg.prob = get_number(require(js[k], "prob", sp), sp + ".prob");
      }
      sched.add(node, it->second, seg);
    }
  }
  sched.finalize(classes);
  return sched;
}

PolicyConfig parse_policy(const json& j) {
  expect_object(j, "policy");
  reject_unknown(j, {"name", "v", "d_max", "epsilon", "nu_max", "q_center"}, "policy");
  PolicyConfig p;
  p.name = get_string(require(j, "name", "policy"), "policy.name");
  p.V = get_number(require(j, "v", "policy"), "policy.v");
  p.d_max = get_number(require(j, "d_max", "policy"), "policy.d_max");
  if (j.contains("epsilon")) p.eps = get_number(j["epsilon"], "policy.epsilon");
  if (j.contains("nu_max")) p.nu_max = get_number(j["nu_max"], "policy.nu_max");
  if (j.contains("q_center")) p.q_center = get_number(j["q_center"], "policy.q_center");
  return p;
}

RunConfig parse_run(const json& j) {
  expect_object(j, "run");
  reject_unknown(j, {"slots", "seed", "stride", "checked", "intervals"}, "run");
  RunConfig r;
  r.slots = get_integer(require(j, "slots", "run"), "run.slots");
  if (r.slots < 1) fail("run.slots", "must be at least 1");
  if (j.contains("seed")) {
    const json& js = j["seed"];
    if (js.is_number_unsigned()) {
      r.seed = js.get<std::uint64_t>();
    } else if (js.is_number_integer() && js.get<long long>() >= 0) {
      r.seed = static_cast<std::uint64_t>(js.get<long long>());
    } else {
      fail("run.seed", "must be a nonnegative integer");
    }
  }
  if (j.contains("stride")) r.stride = get_integer(j["stride"], "run.stride");
  if (j.contains("checked")) {
    if (!j["checked"].is_boolean()) fail("run.checked", "must be a boolean");
    r.checked = j["checked"].get<bool>();
  }
  if (j.contains("intervals")) {
    const json& ji = j["intervals"];
    expect_array(ji, "run.intervals");
    for (size_t i = 0; i < ji.size(); ++i) {
      std::string path = "run.intervals[" + std::to_string(i) + "]";
      if (!ji[i].is_array() || ji[i].size() != 2) fail(path, "must be a [start, end) pair");
      r.intervals.emplace_back(get_integer(ji[i][0], path + "[0]"),
                               get_integer(ji[i][1], path + "[1]"));
    }
  }
  return r;
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("invalid JSON: ") + e.what());
  }
  expect_object(j, "(document)");
  reject_unknown(j, {"topology", "classes", "arrivals", "policy", "run"}, "(document)");

  ExperimentConfig cfg;
  cfg.topology = parse_topology(require(j, "topology", "(document)"));
  cfg.classes = parse_classes(require(j, "classes", "(document)"), cfg.topology);
  validate_classes(cfg.topology, cfg.classes);
  cfg.run = parse_run(require(j, "run", "(document)"));
  cfg.arrivals = parse_arrivals(require(j, "arrivals", "(document)"), cfg.topology, cfg.classes,
                                cfg.run.slots);
  cfg.policy = parse_policy(require(j, "policy", "(document)"));
  validate_experiment(cfg);
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("", "cannot open config file " + path);
  std::ostringstream buf;
  buf << f.rdbuf();
  return parse_config_text(buf.str());
}

std::string config_to_json(const ExperimentConfig& cfg) {
  json j;
  json nodes = json::array();
  for (const auto& n : cfg.topology.node_names()) nodes.push_back(n);
  json links = json::array();
  for (const auto& lk : cfg.topology.links()) {
    links.push_back({{"from", cfg.topology.node_name(lk.from)},
                     {"to", cfg.topology.node_name(lk.to)},
                     {"capacity", lk.capacity}});
  }
  j["topology"] = {{"nodes", nodes}, {"links", links}};

  json classes = json::array();
  for (const auto& cls : cfg.classes) {
    json u = {{"kind", utility_kind_name(cls.utility.kind)}};
    switch (cls.utility.kind) {
      case UtilitySpec::Kind::Linear:
        u["weight"] = cls.utility.weight;
        break;
      case UtilitySpec::Kind::Log:
        u["weight"] = cls.utility.weight;
        u["shift"] = cls.utility.shift;
        break;
      case UtilitySpec::Kind::AlphaFair:
        u["alpha"] = cls.utility.alpha;
        break;
    }
    json c = {{"id", cls.id},
              {"destination", cfg.topology.node_name(cls.destination)},
              {"utility", u}};
    if (cls.restrict_links) {
      json al = json::array();
      for (int l : cls.allowed_links) {
        al.push_back({cfg.topology.node_name(cfg.topology.link(l).from),
                      cfg.topology.node_name(cfg.topology.link(l).to)});
      }
      c["allowed_links"] = al;
    }
    classes.push_back(c);
  }
  j["classes"] = classes;

  json entries = json::array();
  for (int n = 0; n < cfg.topology.node_count(); ++n) {
    for (size_t c = 0; c < cfg.classes.size(); ++c) {
      json segs = json::array();
      for (const auto& seg : cfg.arrivals.segments(n, static_cast<int>(c))) {
        if (seg.prob > 0.0 && seg.batch > 0.0) {
          segs.push_back({{"start", seg.start},
                          {"end", seg.end},
                          {"batch", seg.batch},
                          {"prob", seg.prob}});
        }
      }
      if (!segs.empty()) {
        entries.push_back({{"node", cfg.topology.node_name(n)},
                           {"class", cfg.classes[c].id},
                           {"segments", segs}});
      }
    }
  }
  j["arrivals"] = {{"a_max", cfg.arrivals.a_max()}, {"entries", entries}};

  json p = {{"name", cfg.policy.name}, {"v", cfg.policy.V}, {"d_max", cfg.policy.d_max}};
  if (cfg.policy.name == "uora") {
    p["epsilon"] = cfg.policy.eps;
    p["nu_max"] = cfg.policy.nu_max;
    p["q_center"] = cfg.policy.q_center;
  }
  j["policy"] = p;

  json r = {{"slots", cfg.run.slots},
            {"seed", cfg.run.seed},
            {"stride", cfg.run.stride},
            {"checked", cfg.run.checked}};
  if (!cfg.run.intervals.empty()) {
    json iv = json::array();
    for (auto [lo, hi] : cfg.run.intervals) iv.push_back({lo, hi});
    r["intervals"] = iv;
  }
  j["run"] = r;

  return j.dump(2) + "\n";
}

std::string metrics_to_json(const ExperimentConfig& cfg, const Metrics& m) {
  const int C = static_cast<int>(cfg.classes.size());
  json j;
  j["slots"] = m.slots;
  j["seed"] = m.seed;
  j["policy"] = cfg.policy.name;
  j["v"] = cfg.policy.V;
  j["utility"] = m.utility;
  j["gap_constant"] = m.gap_constant;
  j["analytic_gap"] = m.analytic_gap;
  j["conservation_residual"] = m.conservation_residual;

  json per_class = json::array();
  for (int c = 0; c < C; ++c) {
    json e;
    e["class"] = cfg.classes[c].id;
    e["delivered"] = m.delivered[c];
    e["dropped"] = m.dropped[c];
    e["throughput"] = m.throughput[c];
    e["q_bound"] = m.q_bound[c];
    e["max_z"] = m.max_z.empty() ? 0.0 : m.max_z[c];
    if (!m.z_bound.empty()) e["z_bound"] = m.z_bound[c];
    json wt = json::array();
    for (const auto& win : m.window_throughput) wt.push_back(win[c]);
    if (!wt.empty()) e["interval_throughput"] = wt;
    per_class.push_back(e);
  }
  j["classes"] = per_class;

  json per_queue = json::array();
  for (int n = 0; n < cfg.topology.node_count(); ++n) {
    for (int c = 0; c < C; ++c) {
      const size_t i = static_cast<size_t>(n) * C + c;
      per_queue.push_back({{"node", cfg.topology.node_name(n)},
                           {"class", cfg.classes[c].id},
                           {"max_Q", m.max_q[i]},
                           {"max_D", m.max_d[i]},
                           {"min_D", m.min_d[i]}});
    }
  }
  j["queues"] = per_queue;

  if (!cfg.run.intervals.empty()) {
    json iv = json::array();
    for (auto [lo, hi] : cfg.run.intervals) iv.push_back({lo, hi});
    j["intervals"] = iv;
  }
  if (!m.warnings.empty()) j["warnings"] = m.warnings;
  return j.dump(2) + "\n";
}

}  // namespace onet
