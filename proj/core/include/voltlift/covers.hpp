#pragma once

#include <map>
#include <vector>

#include "voltlift/multigraph.hpp"
#include "voltlift/voltage_graph.hpp"

namespace voltlift {

inline constexpr long long kDefaultSearchBudget = 10'000'000;
inline constexpr long long kDefaultClosureBudget = 1'000'000;

/// A graph homomorphism verified to be a covering at construction.
class CoverMap {
 public:
  explicit CoverMap(GraphHom hom);

  const GraphHom& hom() const { return hom_; }
  const Multigraph& domain() const { return hom_.domain(); }
  const Multigraph& codomain() const { return hom_.codomain(); }
  bool verified() const { return verified_; }

  /// Vertices of the domain lying over `v`, in domain insertion order.
  std::vector<VertexId> fiber(const VertexId& v) const;

 private:
  GraphHom hom_;
  bool verified_;
};

/// Unique lift of a codomain walk starting at a chosen fiber point.
Walk liftWalk(const CoverMap& c, const Walk& w, const VertexId& start);

/// A proper lift: one interior vertex per fiber, all edges leaving the
/// interior, partitioned into interior and boundary edges.
class ProperLift {
 public:
  ProperLift(std::vector<VertexId> interiorVertices,
             std::vector<EdgeId> interiorEdges,
             std::vector<EdgeId> boundaryEdges,
             std::vector<EdgeId> liftedTreeEdges,
             std::map<VertexId, VertexId> interiorOver);

  const std::vector<VertexId>& interiorVertices() const {
    return interiorVertices_;
  }
  const std::vector<EdgeId>& interiorEdges() const { return interiorEdges_; }
  const std::vector<EdgeId>& boundaryEdges() const { return boundaryEdges_; }
  const std::vector<EdgeId>& liftedTreeEdges() const {
    return liftedTreeEdges_;
  }
  /// The interior vertex lying over a given codomain vertex.
  const VertexId& interiorOver(const VertexId& codomainVertex) const;

 private:
  std::vector<VertexId> interiorVertices_;
  std::vector<EdgeId> interiorEdges_;
  std::vector<EdgeId> boundaryEdges_;
  std::vector<EdgeId> liftedTreeEdges_;
  std::map<VertexId, VertexId> interiorOver_;
};

/// Builds a proper lift by lifting the spanning tree vertex by vertex from
/// `baseLift` (which must lie over the tree base), then attaching every
/// domain edge whose initial vertex is interior.
ProperLift properLift(const CoverMap& c, const TreeSet& tree,
                      const VertexId& baseLift);

/// Fiber action of the codomain's fundamental group on the base fiber: one
/// permutation per non-tree edge, obtained by lifting its return walk from
/// every fiber point.
class Monodromy {
 public:
  Monodromy(CoverMap cover, TreeSet tree, std::vector<VertexId> baseFiber,
            std::vector<EdgeId> chords,
            std::vector<std::vector<std::size_t>> chordPerms);

  const CoverMap& cover() const { return cover_; }
  const TreeSet& tree() const { return tree_; }
  const std::vector<VertexId>& baseFiber() const { return baseFiber_; }
  const std::vector<EdgeId>& chords() const { return chords_; }
  const std::vector<std::vector<std::size_t>>& chordPerms() const {
    return chordPerms_;
  }

 private:
  CoverMap cover_;
  TreeSet tree_;
  std::vector<VertexId> baseFiber_;
  std::vector<EdgeId> chords_;
  std::vector<std::vector<std::size_t>> chordPerms_;
};

Monodromy monodromy(const CoverMap& c, const TreeSet& tree);

/// True iff every element of the permutation group generated by the chord
/// permutations fixes either every fiber point or none. The closure is
/// computed breadth-first; exceeding `closureBudget` elements raises
/// GroupTooLargeError.
bool isRegular(const Monodromy& m,
               long long closureBudget = kDefaultClosureBudget);

/// Decides whether the cover is good for the voltage assignment: every
/// cyclic walk of zero voltage lifts to cyclic walks only. Decided
/// algebraically, see implementation notes.
bool isGoodCover(const Monodromy& m, const VoltageGraph& vg,
                 const TreeSet& tree);

/// Pulls a voltage assignment back along a covering: every domain edge
/// receives the voltage of its image edge.
VoltageGraph liftVoltage(const VoltageGraph& vg, const CoverMap& c);

/// All automorphisms g of the (finite, connected) domain with c.hom * g =
/// c.hom. Each is determined by the image of one base-fiber vertex.
std::vector<GraphHom> deckGroup(const CoverMap& c);

struct CommonCover {
  Multigraph top;
  CoverMap mu1;
  CoverMap mu2;
};

/// All connected subgraphs of the directed product d1 x d2 on which both
/// coordinate projections are coverings, deduplicated by vertex/edge sets
/// and sorted smallest-first. Throws SearchBudgetExceededError when the
/// backtracking node budget runs out.
std::vector<CommonCover> findCommonCovers(
    const Multigraph& d1, const Multigraph& d2,
    long long nodeBudget = kDefaultSearchBudget);

}  // namespace voltlift
