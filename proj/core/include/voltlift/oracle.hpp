#pragma once

#include <map>
#include <optional>
#include <vector>

#include "voltlift/covers.hpp"
#include "voltlift/multigraph.hpp"
#include "voltlift/voltage_graph.hpp"

// Brute-force validators used by the test suites. These deliberately share
// no algorithms with the main pipeline: agreement between the two is the
// evidence the tests are after.
namespace voltlift::oracle {

/// An explicit isomorphism of directed multigraphs.
struct IsoCertificate {
  std::map<VertexId, VertexId> vbij;
  std::map<EdgeId, EdgeId> ebij;
};

inline constexpr long long kDefaultIsoBudget = 10'000'000;

/// Exhaustive isomorphism search with color-refinement and adjacency
/// pruning. Returns a certificate iff the multigraphs are isomorphic.
/// Throws SizeBudgetExceededError when the node budget runs out.
std::optional<IsoCertificate> bruteForceIso(
    const Multigraph& g1, const Multigraph& g2,
    long long nodeBudget = kDefaultIsoBudget);

/// Definitional good-cover check, bounded: true iff every cyclic walk of
/// length <= maxLen in the codomain with zero voltage lifts to cyclic walks
/// only. Walks are explored through their (vertex, voltage, fiber-position)
/// states, which decides exactly the same bounded property as enumerating
/// the walks one by one.
bool goodCoverByDefinition(const CoverMap& c, const VoltageGraph& vg,
                           int maxLen);

/// Vertex/edge id sets of a subgraph of the product, sorted ascending.
struct SubgraphKey {
  std::vector<VertexId> vertices;
  std::vector<EdgeId> edges;

  bool operator==(const SubgraphKey& other) const = default;
  bool operator<(const SubgraphKey& other) const;
};

/// Tests every connected vertex/edge subset of d1 x d2 with at most
/// maxSize vertices for the covering-projection property. Only feasible on
/// tiny inputs; oversized instances throw SizeBudgetExceededError.
std::vector<SubgraphKey> exhaustiveCommonCovers(const Multigraph& d1,
                                                const Multigraph& d2,
                                                std::size_t maxSize);

}  // namespace voltlift::oracle
