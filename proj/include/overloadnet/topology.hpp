#pragma once

#include <string>
#include <utility>
#include <vector>

#include "overloadnet/utility.hpp"

namespace onet {

// Directed link with a fixed capacity in packets/slot.
struct Link {
  int from = -1;
  int to = -1;
  double capacity = 0.0;

  bool operator==(const Link&) const = default;
};

// Immutable directed graph. Nodes are dense indices [0, node_count) with
// display names; link pairs are unique and self-loops are rejected.
class NetworkTopology {
 public:
  NetworkTopology() = default;
  NetworkTopology(std::vector<std::string> node_names, std::vector<Link> links);

  int node_count() const { return static_cast<int>(names_.size()); }
  int link_count() const { return static_cast<int>(links_.size()); }
  const Link& link(int l) const { return links_[l]; }
  const std::vector<Link>& links() const { return links_; }
  const std::vector<int>& out_links(int n) const { return out_[n]; }
  const std::vector<int>& in_links(int n) const { return in_[n]; }
  const std::string& node_name(int n) const { return names_[n]; }
  const std::vector<std::string>& node_names() const { return names_; }
  // -1 when the name is unknown.
  int node_index(const std::string& name) const;

  bool operator==(const NetworkTopology& other) const {
    return names_ == other.names_ && links_ == other.links_;
  }

 private:
  std::vector<std::string> names_;
  std::vector<Link> links_;
  std::vector<std::vector<int>> out_, in_;
};

// Largest summed incoming / outgoing capacity over nodes; (0, 0) for an
// empty graph. Nodes without links contribute empty sums.
std::pair<double, double> max_in_out_rates(const NetworkTopology& topo);

// Traffic class: every packet of the class shares one destination. A class
// may optionally be restricted to a subset of links.
struct TrafficClass {
  int id = 0;       // user-facing id; classes are kept sorted ascending by id
  int destination = -1;
  UtilitySpec utility;
  bool restrict_links = false;
  std::vector<int> allowed_links;  // meaningful only when restrict_links

  bool operator==(const TrafficClass&) const = default;
};

// Validates destinations/ids/link restrictions and sorts classes ascending by
// id, so class index order equals id order (the documented tie-break order).
void validate_classes(const NetworkTopology& topo, std::vector<TrafficClass>& classes);

// mask[l * C + c] is 1 when class c may be allocated link l: the class allows
// the link and the link does not originate at the class destination (packets
// never leave their destination).
std::vector<char> link_class_mask(const NetworkTopology& topo,
                                  const std::vector<TrafficClass>& classes);

struct DmaxCheck {
  bool ok = false;
  double d_max = 0.0;
  double required = 0.0;  // a_max + mu_in_max
};

// The drop rate cap must dominate the largest possible one-slot inflow at a
// node, a_max + mu_in_max; otherwise queues cannot be kept bounded.
DmaxCheck validate_dmax(double d_max, double a_max, double mu_in_max);

}  // namespace onet
