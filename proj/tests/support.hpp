#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "voltlift/covers.hpp"
#include "voltlift/voltage_graph.hpp"

namespace voltlift::testsupport {

inline Multigraph graphOf(
    const std::vector<VertexId>& vs,
    const std::vector<std::tuple<EdgeId, VertexId, VertexId>>& es) {
  Multigraph g;
  for (const VertexId& v : vs) g.addVertex(v);
  for (const auto& [id, from, to] : es) g.addEdge(id, from, to);
  return g;
}

inline VoltageGraph vgOf(
    const Multigraph& g, const GroupSpec& spec,
    const std::vector<std::pair<EdgeId, IntVector>>& volts) {
  std::map<EdgeId, GroupElement> m;
  for (const auto& [e, coords] : volts) m.emplace(e, GroupElement(spec, coords));
  return VoltageGraph(g, spec, std::move(m));
}

inline GroupElement el(const GroupSpec& spec, const IntVector& coords) {
  return GroupElement(spec, coords);
}

struct Rng {
  std::mt19937_64 eng;
  explicit Rng(std::uint64_t seed) : eng(seed) {}

  int range(int lo, int hi) {  // inclusive
    return std::uniform_int_distribution<int>(lo, hi)(eng);
  }
  bool chance(double p) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(eng) < p;
  }
};

/// Connected multigraph with <= maxV vertices and <= maxE edges; parallel
/// multiplicity per ordered vertex pair is capped to keep automorphism
/// classes small.
inline Multigraph randomConnectedGraph(Rng& rng, int maxV, int maxE,
                                       int maxParallel = 3) {
  int nV = rng.range(1, maxV);
  Multigraph g;
  for (int i = 0; i < nV; ++i) g.addVertex("v" + std::to_string(i));
  const auto& vs = g.vertices();
  int edgeCount = 0;
  auto mult = [&](const VertexId& a, const VertexId& b) {
    std::size_t n = 0;
    for (const EdgeId& e : g.outEdges(a))
      if (g.dst(e) == b) ++n;
    return n;
  };
  for (int i = 1; i < nV; ++i) {
    int j = rng.range(0, i - 1);
    if (rng.chance(0.5))
      g.addEdge("e" + std::to_string(edgeCount++), vs[j], vs[i]);
    else
      g.addEdge("e" + std::to_string(edgeCount++), vs[i], vs[j]);
  }
  int target = rng.range(nV - 1, maxE);
  for (int tries = 0; edgeCount < target && tries < 8 * target; ++tries) {
    const VertexId& a = vs[rng.range(0, nV - 1)];
    const VertexId& b = vs[rng.range(0, nV - 1)];
    if (mult(a, b) >= static_cast<std::size_t>(maxParallel)) continue;
    g.addEdge("e" + std::to_string(edgeCount++), a, b);
  }
  return g;
}

/// Finite abelian group of order <= maxOrder (occasionally trivial).
inline GroupSpec randomFiniteSpec(Rng& rng, int maxOrder = 16) {
  std::vector<Int> moduli;
  long long order = 1;
  while (moduli.size() < 3 && rng.chance(moduli.empty() ? 0.9 : 0.4)) {
    int d = rng.range(2, 8);
    if (order * d > maxOrder) break;
    moduli.emplace_back(d);
    order *= d;
  }
  return GroupSpec(0, std::move(moduli));
}

inline GroupElement randomElement(Rng& rng, const GroupSpec& spec,
                                  int freeBound = 2) {
  IntVector coords;
  for (int i = 0; i < spec.rank(); ++i)
    coords.emplace_back(rng.range(-freeBound, freeBound));
  for (const Int& d : spec.moduli())
    coords.emplace_back(rng.range(0, static_cast<int>(d.get_si()) - 1));
  return GroupElement(spec, std::move(coords));
}

inline VoltageGraph randomVoltageGraph(Rng& rng, const Multigraph& g,
                                       const GroupSpec& spec) {
  std::map<EdgeId, GroupElement> volts;
  for (const EdgeId& e : g.edges()) volts.emplace(e, randomElement(rng, spec));
  return VoltageGraph(g, spec, std::move(volts));
}

/// A uniformly chosen spanning tree set (randomized Kruskal), rooted at a
/// random vertex.
inline TreeSet randomSpanningTree(Rng& rng, const Multigraph& g) {
  std::vector<EdgeId> edges = g.edges();
  std::shuffle(edges.begin(), edges.end(), rng.eng);
  std::vector<std::size_t> parent(g.order());
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<EdgeId> chosen;
  for (const EdgeId& e : edges) {
    std::size_t a = find(g.vertexIndex(g.src(e)));
    std::size_t b = find(g.vertexIndex(g.dst(e)));
    if (a == b) continue;
    parent[a] = b;
    chosen.push_back(e);
  }
  const VertexId& base =
      g.vertices()[rng.range(0, static_cast<int>(g.order()) - 1)];
  return treeFromEdges(g, base, chosen);
}

/// Random connected condensed voltage graph over a finite group.
inline VoltageGraph randomCondensedVoltageGraph(Rng& rng, int maxV = 6,
                                                int maxE = 8,
                                                int maxOrder = 16) {
  Multigraph g = randomConnectedGraph(rng, maxV, maxE);
  GroupSpec spec = randomFiniteSpec(rng, maxOrder);
  VoltageGraph vg = randomVoltageGraph(rng, g, spec);
  return condense(vg, randomSpanningTree(rng, g));
}

/// Pair generator for the decide-vs-oracle corpus. Mixes independent pairs,
/// same-graph pairs with fresh voltages (the interesting negatives), and
/// pairs known to be related (re-condensation, voltage negation, relabeled
/// copies).
inline std::pair<VoltageGraph, VoltageGraph> randomDecidePair(Rng& rng) {
  VoltageGraph first = randomCondensedVoltageGraph(rng);
  int strategy = rng.range(0, 5);
  if (strategy == 0) {
    return {first, randomCondensedVoltageGraph(rng)};
  }
  if (strategy <= 2) {  // same graph and group, independent voltages
    VoltageGraph second = condense(
        randomVoltageGraph(rng, first.graph(), first.spec()),
        randomSpanningTree(rng, first.graph()));
    return {first, second};
  }
  if (strategy == 3) {  // re-condense over another tree
    VoltageGraph second =
        condense(first, randomSpanningTree(rng, first.graph()));
    return {first, second};
  }
  if (strategy == 4) {  // negate every voltage (a group automorphism)
    std::map<EdgeId, GroupElement> volts;
    for (const EdgeId& e : first.graph().edges())
      volts.emplace(e, neg(first.voltage(e)));
    return {first,
            VoltageGraph(first.graph(), first.spec(), std::move(volts))};
  }
  // relabeled copy
  Multigraph renamed;
  for (const VertexId& v : first.graph().vertices())
    renamed.addVertex("r_" + v);
  for (const EdgeId& e : first.graph().edges())
    renamed.addEdge("r_" + e, "r_" + first.graph().src(e),
                    "r_" + first.graph().dst(e));
  std::map<EdgeId, GroupElement> volts;
  for (const EdgeId& e : first.graph().edges())
    volts.emplace("r_" + e, first.voltage(e));
  return {first,
          VoltageGraph(std::move(renamed), first.spec(), std::move(volts))};
}

}  // namespace voltlift::testsupport
