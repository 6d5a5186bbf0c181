#include "voltlift/voltage_graph.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace voltlift {

VoltageGraph::VoltageGraph(Multigraph graph, GroupSpec spec,
                           std::map<EdgeId, GroupElement> voltages)
    : graph_(std::move(graph)), spec_(std::move(spec)),
      voltages_(std::move(voltages)) {
  for (const EdgeId& e : graph_.edges()) {
    auto it = voltages_.find(e);
    if (it == voltages_.end())
      throw ValidationError("edge has no voltage: " + e);
    if (!(it->second.spec() == spec_))
      throw SpecMismatchError("voltage of edge " + e +
                              " does not match the group spec");
  }
  if (voltages_.size() != graph_.size())
    throw ValidationError("voltage map names edges not in the graph");
}

const GroupElement& VoltageGraph::voltage(const EdgeId& e) const {
  auto it = voltages_.find(e);
  if (it == voltages_.end()) throw ValidationError("unknown edge: " + e);
  return it->second;
}

std::vector<GroupElement> VoltageGraph::voltageList() const {
  std::vector<GroupElement> out;
  out.reserve(graph_.size());
  for (const EdgeId& e : graph_.edges()) out.push_back(voltage(e));
  return out;
}

GroupElement walkVoltage(const VoltageGraph& vg, const Walk& w) {
  w.end(vg.graph());  // validates the walk
  GroupElement acc = GroupElement::zero(vg.spec());
  for (const WalkStep& s : w.steps()) {
    const GroupElement& v = vg.voltage(s.edge);
    acc = s.dir == 1 ? add(acc, v) : add(acc, neg(v));
  }
  return acc;
}

VoltageGraph condense(const VoltageGraph& vg, const TreeSet& tree) {
  if (!isConnected(vg.graph()))
    throw DisconnectedGraphError("condensation requires a connected graph");
  requireTreeMatches(vg.graph(), tree);
  std::map<EdgeId, GroupElement> out;
  for (const EdgeId& e : vg.graph().edges()) {
    if (tree.contains(e)) {
      out.emplace(e, GroupElement::zero(vg.spec()));
    } else {
      out.emplace(e, walkVoltage(vg, returnWalk(vg.graph(), tree, e)));
    }
  }
  return VoltageGraph(vg.graph(), vg.spec(), std::move(out));
}

bool isCondensed(const VoltageGraph& vg, const TreeSet& tree) {
  requireTreeMatches(vg.graph(), tree);
  for (const EdgeId& e : tree.edgeList())
    if (!vg.voltage(e).isZero()) return false;
  return true;
}

bool hasCondensedAssignment(const VoltageGraph& vg) {
  const Multigraph& g = vg.graph();
  if (g.order() == 0) return true;
  // Union-find over zero-voltage edges.
  std::vector<std::size_t> parent(g.order());
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const EdgeId& e : g.edges()) {
    if (!vg.voltage(e).isZero()) continue;
    parent[find(g.vertexIndex(g.src(e)))] = find(g.vertexIndex(g.dst(e)));
  }
  std::size_t root = find(0);
  for (std::size_t i = 1; i < parent.size(); ++i)
    if (find(i) != root) return false;
  return true;
}

DerivedGraph derivedGraph(
    const VoltageGraph& vg,
    const std::optional<std::vector<GroupElement>>& ambient) {
  const GroupSpec& spec = vg.spec();
  std::vector<GroupElement> elements;
  if (ambient) {
    for (const GroupElement& g : *ambient)
      if (!(g.spec() == spec))
        throw SpecMismatchError("ambient generators do not match the spec");
    elements = enumerateSubgroup(spec, *ambient);
    for (const EdgeId& e : vg.graph().edges())
      if (!isMember(vg.voltage(e), *ambient))
        throw ValidationError("voltage of edge " + e +
                              " lies outside the chosen group");
  } else {
    elements = enumerateFullGroup(spec);  // throws for infinite groups
  }

  Multigraph derived;
  std::map<VertexId, VertexId> vproj;
  std::map<EdgeId, EdgeId> eproj;
  for (const VertexId& v : vg.graph().vertices()) {
    for (const GroupElement& g : elements) {
      VertexId id = makePairId(v, g.key());
      derived.addVertex(id);
      vproj[id] = v;
    }
  }
  for (const EdgeId& e : vg.graph().edges()) {
    const GroupElement& volt = vg.voltage(e);
    for (const GroupElement& g : elements) {
      EdgeId id = makePairId(e, g.key());
      derived.addEdge(id, makePairId(vg.graph().src(e), g.key()),
                      makePairId(vg.graph().dst(e), add(g, volt).key()));
      eproj[id] = e;
    }
  }
  GraphHom projection(derived, vg.graph(), std::move(vproj), std::move(eproj));
  return DerivedGraph{std::move(derived), std::move(projection)};
}

Multigraph derivedBall(const VoltageGraph& vg, int radius) {
  if (!isConnected(vg.graph()))
    throw DisconnectedGraphError("derived ball requires a connected graph");
  if (radius < 0) throw ValidationError("radius must be nonnegative");
  const Multigraph& g = vg.graph();

  using Node = std::pair<VertexId, GroupElement>;
  const Node start{g.vertices().front(), GroupElement::zero(vg.spec())};

  std::map<Node, int> dist;
  std::vector<Node> order{start};
  dist.emplace(start, 0);
  std::deque<Node> todo{start};
  while (!todo.empty()) {
    Node cur = todo.front();
    todo.pop_front();
    int d = dist.at(cur);
    if (d == radius) continue;
    // Out-edges first, then in-edges, each in insertion order.
    for (const EdgeId& e : g.outEdges(cur.first)) {
      Node nxt{g.dst(e), add(cur.second, vg.voltage(e))};
      if (dist.emplace(nxt, d + 1).second) {
        order.push_back(nxt);
        todo.push_back(nxt);
      }
    }
    for (const EdgeId& e : g.inEdges(cur.first)) {
      Node nxt{g.src(e), add(cur.second, neg(vg.voltage(e)))};
      if (dist.emplace(nxt, d + 1).second) {
        order.push_back(nxt);
        todo.push_back(nxt);
      }
    }
  }

  Multigraph ball;
  for (const Node& n : order) ball.addVertex(makePairId(n.first, n.second.key()));
  // Induced edges: (e, g) with both endpoints inside the ball.
  std::set<EdgeId> added;
  for (const Node& n : order) {
    for (const EdgeId& e : g.outEdges(n.first)) {
      Node head{g.dst(e), add(n.second, vg.voltage(e))};
      if (!dist.count(head)) continue;
      EdgeId id = makePairId(e, n.second.key());
      if (!added.insert(id).second) continue;
      ball.addEdge(id, makePairId(n.first, n.second.key()),
                   makePairId(head.first, head.second.key()));
    }
  }
  return ball;
}

std::vector<Multigraph> connectedComponents(const Multigraph& g) {
  std::map<VertexId, std::size_t> comp;
  std::size_t count = 0;
  for (const VertexId& seed : g.vertices()) {
    if (comp.count(seed)) continue;
    std::deque<VertexId> todo{seed};
    comp[seed] = count;
    while (!todo.empty()) {
      VertexId v = todo.front();
      todo.pop_front();
      for (const EdgeId& e : g.outEdges(v))
        if (!comp.count(g.dst(e))) {
          comp[g.dst(e)] = count;
          todo.push_back(g.dst(e));
        }
      for (const EdgeId& e : g.inEdges(v))
        if (!comp.count(g.src(e))) {
          comp[g.src(e)] = count;
          todo.push_back(g.src(e));
        }
    }
    ++count;
  }
  std::vector<Multigraph> parts(count);
  for (const VertexId& v : g.vertices()) parts[comp.at(v)].addVertex(v);
  for (const EdgeId& e : g.edges())
    parts[comp.at(g.src(e))].addEdge(e, g.src(e), g.dst(e));
  return parts;
}

std::size_t countDerivedComponents(const VoltageGraph& vg) {
  if (!isConnected(vg.graph()))
    throw DisconnectedGraphError("component count requires a connected graph");
  if (!hasCondensedAssignment(vg))
    throw NotCondensedError("component count requires a condensed assignment");
  DerivedGraph d = derivedGraph(vg);  // full group; throws when infinite
  return connectedComponents(d.graph).size();
}

}  // namespace voltlift
