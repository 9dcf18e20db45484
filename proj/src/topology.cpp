#include "overloadnet/topology.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_set>

#include "overloadnet/errors.hpp"

namespace onet {

NetworkTopology::NetworkTopology(std::vector<std::string> node_names, std::vector<Link> links)
    : names_(std::move(node_names)), links_(std::move(links)) {
  const int n = node_count();
  {
    std::unordered_set<std::string> seen;
    for (int i = 0; i < n; ++i) {
      if (names_[i].empty())
        throw ConfigError("topology.nodes[" + std::to_string(i) + "]", "node name must not be empty");
      if (!seen.insert(names_[i]).second)
        throw ConfigError("topology.nodes[" + std::to_string(i) + "]",
                          "duplicate node name \"" + names_[i] + "\"");
    }
  }
  out_.assign(n, {});
  in_.assign(n, {});
  std::set<std::pair<int, int>> pairs;
  for (int l = 0; l < link_count(); ++l) {
    const Link& lk = links_[l];
    const std::string field = "topology.links[" + std::to_string(l) + "]";
    if (lk.from < 0 || lk.from >= n || lk.to < 0 || lk.to >= n)
      throw ConfigError(field, "link endpoint out of range");
    if (lk.from == lk.to)
      throw ConfigError(field, "self-loop links are not allowed");
    if (!pairs.insert({lk.from, lk.to}).second)
      throw ConfigError(field, "duplicate link " + names_[lk.from] + "->" + names_[lk.to]);
    if (!std::isfinite(lk.capacity) || lk.capacity < 0.0)
      throw ConfigError(field + ".capacity", "capacity must be finite and nonnegative");
    out_[lk.from].push_back(l);
    in_[lk.to].push_back(l);
  }
}

int NetworkTopology::node_index(const std::string& name) const {
  for (int i = 0; i < node_count(); ++i)
    if (names_[i] == name) return i;
  return -1;
}

std::pair<double, double> max_in_out_rates(const NetworkTopology& topo) {
  double in_max = 0.0, out_max = 0.0;
  for (int n = 0; n < topo.node_count(); ++n) {
    double in = 0.0, out = 0.0;
    for (int l : topo.in_links(n)) in += topo.link(l).capacity;
    for (int l : topo.out_links(n)) out += topo.link(l).capacity;
    in_max = std::max(in_max, in);
    out_max = std::max(out_max, out);
  }
  return {in_max, out_max};
}

void validate_classes(const NetworkTopology& topo, std::vector<TrafficClass>& classes) {
  if (classes.empty()) throw ConfigError("classes", "at least one traffic class is required");
  std::stable_sort(classes.begin(), classes.end(),
                   [](const TrafficClass& a, const TrafficClass& b) { return a.id < b.id; });
  for (size_t i = 0; i < classes.size(); ++i) {
    const std::string field = "classes[" + std::to_string(i) + "]";
    TrafficClass& tc = classes[i];
    if (i > 0 && classes[i - 1].id == tc.id)
      throw ConfigError(field + ".id", "duplicate class id " + std::to_string(tc.id));
    if (tc.destination < 0 || tc.destination >= topo.node_count())
      throw ConfigError(field + ".destination", "destination is not a node of the topology");
    tc.utility.validate(field + ".utility");
    if (tc.restrict_links) {
      std::set<int> dedup;
      for (int l : tc.allowed_links) {
        if (l < 0 || l >= topo.link_count())
          throw ConfigError(field + ".allowed_links", "link index out of range");
        dedup.insert(l);
      }
      tc.allowed_links.assign(dedup.begin(), dedup.end());
    } else {
      tc.allowed_links.clear();
    }
  }
}

std::vector<char> link_class_mask(const NetworkTopology& topo,
                                  const std::vector<TrafficClass>& classes) {
  const int L = topo.link_count();
  const int C = static_cast<int>(classes.size());
  std::vector<char> mask(static_cast<size_t>(L) * C, 0);
  for (int c = 0; c < C; ++c) {
    const TrafficClass& tc = classes[c];
    auto allow = [&](int l) {
      if (topo.link(l).from == tc.destination) return;  // nothing buffered there
      mask[static_cast<size_t>(l) * C + c] = 1;
    };
    if (tc.restrict_links) {
      for (int l : tc.allowed_links) allow(l);
    } else {
      for (int l = 0; l < L; ++l) allow(l);
    }
  }
  return mask;
}

DmaxCheck validate_dmax(double d_max, double a_max, double mu_in_max) {
  DmaxCheck r;
  r.d_max = d_max;
  r.required = a_max + mu_in_max;
  r.ok = d_max >= r.required;
  return r;
}

}  // namespace onet
