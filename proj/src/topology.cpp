#include "pathot/topology.hpp"

#include <algorithm>
#include <deque>

namespace pathot {

namespace {

std::pair<NodeId, NodeId> norm_edge(const NodeId& a, const NodeId& b) {
  return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
}

}  // namespace

void NetworkTopology::add_edge(const NodeId& a, const NodeId& b) {
  edges.insert(norm_edge(a, b));
}

bool NetworkTopology::has_edge(const NodeId& a, const NodeId& b) const {
  return edges.count(norm_edge(a, b)) > 0;
}

std::vector<NodeId> NetworkTopology::neighbors(const NodeId& n) const {
  std::vector<NodeId> out;
  for (const auto& [a, b] : edges) {
    if (a == n) out.push_back(b);
    if (b == n) out.push_back(a);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool NetworkTopology::connected(const std::set<NodeId>& removed) const {
  // Endpoints stay; only intermediaries can be cut.
  std::set<NodeId> seen{alice};
  std::deque<NodeId> frontier{alice};
  while (!frontier.empty()) {
    NodeId n = frontier.front();
    frontier.pop_front();
    if (n == bob) return true;
    for (const NodeId& m : neighbors(n)) {
      if (m != bob && m != alice && removed.count(m)) continue;
      if (seen.insert(m).second) frontier.push_back(m);
    }
  }
  return false;
}

void NetworkTopology::validate() const {
  if (alice == bob) throw ContractViolation("topology: alice equals bob");
  if (!nodes.count(alice) || !nodes.count(bob))
    throw ContractViolation("topology: alice and bob must be nodes");
  for (const auto& [a, b] : edges) {
    if (a == b) throw ContractViolation("topology: self-loop edge");
    if (!nodes.count(a) || !nodes.count(b))
      throw ContractViolation("topology: edge references unknown node");
  }
}

std::vector<NodeId> PathSet::internal_nodes(int j) const {
  const auto& p = paths.at(static_cast<std::size_t>(j));
  return std::vector<NodeId>(p.begin() + 1, p.end() - 1);
}

std::set<NodeId> PathSet::all_internal() const {
  std::set<NodeId> out;
  for (int j = 0; j < count(); ++j)
    for (const NodeId& n : internal_nodes(j)) out.insert(n);
  return out;
}

bool PathSet::internally_disjoint() const {
  std::set<NodeId> seen;
  for (int j = 0; j < count(); ++j)
    for (const NodeId& n : internal_nodes(j))
      if (!seen.insert(n).second) return false;
  return true;
}

void PathSet::validate(const NetworkTopology& topo) const {
  if (paths.empty()) throw ContractViolation("path set: need at least one path");
  for (const auto& p : paths) {
    if (p.size() < 2 || p.front() != topo.alice || p.back() != topo.bob)
      throw ContractViolation("path set: paths must run from alice to bob");
    std::set<NodeId> seen;
    for (const NodeId& n : p)
      if (!seen.insert(n).second)
        throw ContractViolation("path set: path repeats a node");
    for (std::size_t i = 0; i + 1 < p.size(); ++i)
      if (!topo.has_edge(p[i], p[i + 1]))
        throw ContractViolation("path set: consecutive nodes not adjacent");
  }
}

std::string to_string(Controller c) {
  switch (c) {
    case Controller::alice: return "alice";
    case Controller::bob: return "bob";
    case Controller::independent: return "independent";
  }
  return "independent";
}

Controller controller_from_string(const std::string& s) {
  if (s == "alice") return Controller::alice;
  if (s == "bob") return Controller::bob;
  if (s == "independent") return Controller::independent;
  throw ContractViolation("controller must be alice|bob|independent");
}

bool CorruptionSet::is_coalition(const NodeId& n,
                                 const NetworkTopology& topo) const {
  if (corrupted.count(n)) return true;
  if (controller == Controller::alice && n == topo.alice) return true;
  if (controller == Controller::bob && n == topo.bob) return true;
  return false;
}

void CorruptionSet::validate(const NetworkTopology& topo) const {
  for (const NodeId& n : corrupted) {
    if (n == topo.alice || n == topo.bob)
      throw ContractViolation(
          "corruption: endpoints are flagged via controller, not the "
          "corrupted set");
    if (!topo.nodes.count(n))
      throw ContractViolation("corruption: unknown node '" + n + "'");
  }
}

PathSet enumerate_paths(const NetworkTopology& topo, int max_paths) {
  if (max_paths < 1)
    throw ContractViolation("enumerate_paths: max_paths must be positive");
  topo.validate();

  // Depth-first walk with sorted neighbours yields all simple paths in
  // lexicographic order by node sequence.
  std::vector<std::vector<NodeId>> all;
  std::vector<NodeId> current{topo.alice};
  std::set<NodeId> on_path{topo.alice};
  auto walk = [&](auto&& self, const NodeId& n) -> void {
    if (n == topo.bob) {
      all.push_back(current);
      return;
    }
    for (const NodeId& next : topo.neighbors(n)) {
      if (on_path.count(next)) continue;
      current.push_back(next);
      on_path.insert(next);
      self(self, next);
      on_path.erase(next);
      current.pop_back();
    }
  };
  walk(walk, topo.alice);
  if (all.empty()) throw NoPathError("no path from alice to bob");

  // Greedily pull a maximal internally-disjoint subset to the front,
  // preserving lexicographic order within both groups.
  std::vector<bool> picked(all.size(), false);
  std::set<NodeId> used;
  PathSet out;
  for (std::size_t i = 0; i < all.size(); ++i) {
    bool clash = false;
    for (std::size_t k = 1; k + 1 < all[i].size(); ++k)
      if (used.count(all[i][k])) clash = true;
    if (clash) continue;
    for (std::size_t k = 1; k + 1 < all[i].size(); ++k) used.insert(all[i][k]);
    picked[i] = true;
    out.paths.push_back(all[i]);
    if (out.count() == max_paths) return out;
  }
  for (std::size_t i = 0; i < all.size() && out.count() < max_paths; ++i)
    if (!picked[i]) out.paths.push_back(all[i]);
  return out;
}

bool exists_honest_path(const NetworkTopology& topo, const PathSet& paths,
                        const CorruptionSet& corruption) {
  (void)topo;
  for (int j = 0; j < paths.count(); ++j) {
    bool honest = true;
    for (const NodeId& n : paths.internal_nodes(j))
      if (corruption.corrupted.count(n)) honest = false;
    if (honest) return true;
  }
  return false;
}

bool separates(const NetworkTopology& topo, const std::set<NodeId>& m) {
  return !topo.connected(m);
}

}  // namespace pathot
