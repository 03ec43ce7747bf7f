#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "pathot/errors.hpp"

namespace pathot {

using NodeId = std::string;

/// Undirected graph of nodes with the two protocol endpoints marked.
struct NetworkTopology {
  std::set<NodeId> nodes;
  std::set<std::pair<NodeId, NodeId>> edges;  // stored with first < second
  NodeId alice;
  NodeId bob;

  void add_edge(const NodeId& a, const NodeId& b);
  bool has_edge(const NodeId& a, const NodeId& b) const;
  std::vector<NodeId> neighbors(const NodeId& n) const;  // sorted
  /// True iff alice reaches bob after deleting `removed` (endpoints are never
  /// deleted).
  bool connected(const std::set<NodeId>& removed = {}) const;
  void validate() const;
};

/// The N alice-to-bob paths a protocol instance runs over. Path j fixes
/// v_j (second node, alice's neighbour) and w_j (second-to-last, bob's).
struct PathSet {
  std::vector<std::vector<NodeId>> paths;

  int count() const { return static_cast<int>(paths.size()); }
  const NodeId& v(int j) const { return paths.at(j)[1]; }
  const NodeId& w(int j) const {
    return paths.at(j)[paths.at(j).size() - 2];
  }
  std::vector<NodeId> internal_nodes(int j) const;
  std::set<NodeId> all_internal() const;
  /// True iff no internal node appears on two different paths.
  bool internally_disjoint() const;
  void validate(const NetworkTopology& topo) const;
};

enum class Controller { alice, bob, independent };

std::string to_string(Controller c);
Controller controller_from_string(const std::string& s);

/// The dishonest coalition: corrupted intermediaries plus, when controller is
/// alice or bob, that endpoint. Endpoints are never listed in `corrupted`.
struct CorruptionSet {
  std::set<NodeId> corrupted;
  Controller controller = Controller::independent;

  bool is_coalition(const NodeId& n, const NetworkTopology& topo) const;
  void validate(const NetworkTopology& topo) const;
};

/// Up to max_paths simple alice-to-bob paths in lexicographic order by node
/// sequence, reordered so a greedily-maximal internally-vertex-disjoint
/// subset comes first. Throws NoPathError when alice and bob are disconnected.
PathSet enumerate_paths(const NetworkTopology& topo, int max_paths);

/// True iff some path has no corrupted internal node. A direct alice-bob path
/// has no internal nodes and counts as trivially honest.
bool exists_honest_path(const NetworkTopology& topo, const PathSet& paths,
                        const CorruptionSet& corruption);

/// True iff deleting `m` disconnects alice from bob in the topology.
bool separates(const NetworkTopology& topo, const std::set<NodeId>& m);

}  // namespace pathot
