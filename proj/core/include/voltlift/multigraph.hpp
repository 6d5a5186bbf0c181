#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "voltlift/errors.hpp"

namespace voltlift {

using VertexId = std::string;
using EdgeId = std::string;

/// Finite directed multigraph with explicit endpoint maps. Loops and parallel
/// edges are allowed. Vertex and edge identifiers are opaque strings; all
/// iteration follows insertion order, which downstream constructions rely on
/// for reproducibility.
class Multigraph {
 public:
  Multigraph() = default;

  void addVertex(const VertexId& v);
  void addEdge(const EdgeId& e, const VertexId& from, const VertexId& to);

  bool hasVertex(const VertexId& v) const { return vindex_.count(v) != 0; }
  bool hasEdge(const EdgeId& e) const { return eindex_.count(e) != 0; }

  /// Number of vertices.
  std::size_t order() const { return vertices_.size(); }
  /// Number of edges.
  std::size_t size() const { return edges_.size(); }

  const std::vector<VertexId>& vertices() const { return vertices_; }
  const std::vector<EdgeId>& edges() const { return edges_; }

  /// Initial endpoint of an edge.
  const VertexId& src(const EdgeId& e) const;
  /// Terminal endpoint of an edge.
  const VertexId& dst(const EdgeId& e) const;

  const std::vector<EdgeId>& outEdges(const VertexId& v) const;
  const std::vector<EdgeId>& inEdges(const VertexId& v) const;

  std::size_t vertexIndex(const VertexId& v) const;
  std::size_t edgeIndex(const EdgeId& e) const;

  /// Structural equality: same vertex/edge sequences and endpoints.
  bool operator==(const Multigraph& other) const;

 private:
  std::vector<VertexId> vertices_;
  std::vector<EdgeId> edges_;
  std::map<VertexId, std::size_t> vindex_;
  std::map<EdgeId, std::size_t> eindex_;
  std::vector<std::size_t> srcIdx_;
  std::vector<std::size_t> dstIdx_;
  std::vector<std::vector<EdgeId>> out_;
  std::vector<std::vector<EdgeId>> in_;
};

/// One step of a walk: an edge together with the direction of traversal,
/// +1 along the edge's orientation and -1 against it.
struct WalkStep {
  EdgeId edge;
  int dir = 1;

  bool operator==(const WalkStep& other) const = default;
};

/// A walk: a start vertex and a sequence of endpoint-compatible steps.
/// Walks are plain values; validity is checked against a graph on demand.
class Walk {
 public:
  explicit Walk(VertexId start, std::vector<WalkStep> steps = {})
      : start_(std::move(start)), steps_(std::move(steps)) {}

  const VertexId& start() const { return start_; }
  const std::vector<WalkStep>& steps() const { return steps_; }
  std::size_t length() const { return steps_.size(); }

  /// Terminal vertex; throws InvalidWalkError if some step is not
  /// endpoint-compatible or uses an unknown edge.
  VertexId end(const Multigraph& g) const;
  bool isCyclic(const Multigraph& g) const;

  /// Concatenation; the tail must start where this walk ends.
  Walk then(const Walk& tail) const;

  bool operator==(const Walk& other) const = default;

 private:
  VertexId start_;
  std::vector<WalkStep> steps_;
};

/// A spanning tree set: base vertex, tree edges, and for every non-base
/// vertex the step that moves one edge closer to the base.
class TreeSet {
 public:
  struct ParentLink {
    WalkStep step;   // step from the vertex toward the base
    VertexId parent;

    bool operator==(const ParentLink& other) const = default;
  };

  TreeSet(VertexId base, std::vector<EdgeId> edgeOrder,
          std::map<VertexId, ParentLink> parents,
          std::map<VertexId, int> depths);

  const VertexId& base() const { return base_; }
  const std::vector<EdgeId>& edgeList() const { return edgeOrder_; }
  bool contains(const EdgeId& e) const { return inTree_.count(e) != 0; }
  std::size_t vertexCount() const { return depths_.size(); }

  /// Step from `v` toward the base; `v` must be a non-base tree vertex.
  const WalkStep& parentStep(const VertexId& v) const;
  int depth(const VertexId& v) const;

  /// Unique tree path from `v` to the base (empty when v is the base).
  Walk pathToBase(const VertexId& v) const;
  /// Unique tree path from the base to `v`.
  Walk pathFromBase(const VertexId& v) const;

 private:
  VertexId base_;
  std::vector<EdgeId> edgeOrder_;
  std::map<EdgeId, bool> inTree_;
  std::map<VertexId, ParentLink> parents_;
  std::map<VertexId, int> depths_;
};

/// Graph homomorphism: vertex and edge maps that respect endpoints.
/// Both graphs are stored by value; construction validates the defining
/// equations src(emap(e)) = vmap(src(e)) and dst(emap(e)) = vmap(dst(e)).
class GraphHom {
 public:
  GraphHom(Multigraph domain, Multigraph codomain,
           std::map<VertexId, VertexId> vmap, std::map<EdgeId, EdgeId> emap);

  static GraphHom identity(const Multigraph& g);

  const Multigraph& domain() const { return domain_; }
  const Multigraph& codomain() const { return codomain_; }
  const VertexId& mapVertex(const VertexId& v) const;
  const EdgeId& mapEdge(const EdgeId& e) const;
  const std::map<VertexId, VertexId>& vertexMap() const { return vmap_; }
  const std::map<EdgeId, EdgeId>& edgeMap() const { return emap_; }

 private:
  Multigraph domain_;
  Multigraph codomain_;
  std::map<VertexId, VertexId> vmap_;
  std::map<EdgeId, EdgeId> emap_;
};

/// True iff the underlying undirected graph is connected. The empty graph
/// counts as connected.
bool isConnected(const Multigraph& g);

/// Deterministic breadth-first spanning tree rooted at `base`: at each
/// frontier vertex the full edge list is scanned in insertion order and
/// edges may be traversed in either direction.
TreeSet spanningTree(const Multigraph& g, const VertexId& base);

/// Builds a TreeSet from an explicit edge set, validating that it is a
/// spanning tree set of `g` (connected, acyclic, touching every vertex).
TreeSet treeFromEdges(const Multigraph& g, const VertexId& base,
                      const std::vector<EdgeId>& treeEdges);

/// Checks that `tree` is consistent with `g` (same vertex count, tree edges
/// present with matching endpoints). Throws ValidationError otherwise.
void requireTreeMatches(const Multigraph& g, const TreeSet& tree);

/// Return walk of a non-tree edge `e`: the unique tree path base -> src(e),
/// then e traversed along its orientation, then the unique tree path
/// dst(e) -> base. Always cyclic at the base.
Walk returnWalk(const Multigraph& g, const TreeSet& tree, const EdgeId& e);

struct Product {
  Multigraph graph;
  GraphHom toFirst;
  GraphHom toSecond;
};

/// Tensor-style directed product: vertices are pairs, and there is one edge
/// (e1,e2) from (src e1, src e2) to (dst e1, dst e2) for every pair of
/// edges. Identifiers are pair-encoded as "(a|b)".
Product directedProduct(const Multigraph& d1, const Multigraph& d2);

/// Pair-encoded identifier used by products and derived graphs.
std::string makePairId(const std::string& a, const std::string& b);

/// True iff `h` is onto on vertices and edges and its edge map restricts to
/// a bijection on every out-set and every in-set.
bool isCovering(const GraphHom& h);

/// Lexicographically sorted multiset of (indegree, outdegree) pairs.
std::vector<std::pair<std::size_t, std::size_t>> degreeProfile(
    const Multigraph& g);

/// All automorphisms fixing every tree edge (hence every vertex): the direct
/// product of the permutations of each parallel-edge class among non-tree
/// edges. The identity is always included.
std::vector<GraphHom> automorphismsFixingTree(const Multigraph& g,
                                              const TreeSet& tree);

}  // namespace voltlift
