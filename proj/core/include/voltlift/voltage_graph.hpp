#pragma once

#include <map>
#include <optional>
#include <vector>

#include "voltlift/abelian.hpp"
#include "voltlift/multigraph.hpp"

namespace voltlift {

/// A voltage graph: a multigraph together with a group element on every
/// edge. All voltages share one spec.
class VoltageGraph {
 public:
  VoltageGraph(Multigraph graph, GroupSpec spec,
               std::map<EdgeId, GroupElement> voltages);

  const Multigraph& graph() const { return graph_; }
  const GroupSpec& spec() const { return spec_; }
  const GroupElement& voltage(const EdgeId& e) const;
  const std::map<EdgeId, GroupElement>& voltages() const { return voltages_; }

  /// Voltages in the graph's edge insertion order.
  std::vector<GroupElement> voltageList() const;

 private:
  Multigraph graph_;
  GroupSpec spec_;
  std::map<EdgeId, GroupElement> voltages_;
};

/// Signed sum of edge voltages along a walk (the empty walk gives zero).
GroupElement walkVoltage(const VoltageGraph& vg, const Walk& w);

/// Condensation with respect to a spanning tree: tree edges get zero, every
/// chord gets the voltage of its return walk. The graph is unchanged.
VoltageGraph condense(const VoltageGraph& vg, const TreeSet& tree);

/// True iff all tree edges carry zero voltage.
bool isCondensed(const VoltageGraph& vg, const TreeSet& tree);

/// True iff some spanning tree set consists of zero-voltage edges, i.e. the
/// zero-voltage subgraph connects the whole vertex set.
bool hasCondensedAssignment(const VoltageGraph& vg);

struct DerivedGraph {
  Multigraph graph;
  GraphHom projection;  // the canonical covering (x, g) -> x
};

/// Derived graph over <ambient> or, when ambient is absent, over the full
/// spec group. The chosen group must be finite and must contain every edge
/// voltage. Vertices are keyed "(v|coords)" with elements enumerated in
/// lexicographic coordinate order.
DerivedGraph derivedGraph(
    const VoltageGraph& vg,
    const std::optional<std::vector<GroupElement>>& ambient = std::nullopt);

/// The subgraph of the derived graph over <voltages> induced by all vertices
/// within walk distance `radius` of (v0, 0), traversing edges in both
/// directions; v0 is the first vertex. A finite window into a possibly
/// infinite derived graph.
Multigraph derivedBall(const VoltageGraph& vg, int radius);

/// Number of connected components of the derived graph over the full spec
/// group. Requires a condensed, connected input and a finite spec.
std::size_t countDerivedComponents(const VoltageGraph& vg);

/// Connected components of a multigraph, each induced on its vertex set,
/// listed in first-vertex order. Ids are preserved.
std::vector<Multigraph> connectedComponents(const Multigraph& g);

}  // namespace voltlift
