#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "voltlift/covers.hpp"

namespace voltlift {

enum class Outcome { Isomorphic, NotIsomorphic, Unresolved, BudgetExceeded };

enum class Reason {
  DegreeMismatch,
  NoCommonCover,
  NoGoodCommonCover,
  AllGoodCoversFail,
  GeneratorMapIso,
  NonRegularProjection,
  SearchBudget,
};

std::string outcomeName(Outcome o);
std::string reasonName(Reason r);

/// Everything needed to re-check an Isomorphic verdict: the successful
/// common cover with its projections, the spanning tree used on top, both
/// condensed lifted assignments, the automorphism applied to the second
/// side, and the generator correspondence that extends to an isomorphism.
struct Witness {
  Multigraph commonCover;
  CoverMap mu1;
  CoverMap mu2;
  TreeSet treeTop;
  VoltageGraph lifted1;
  VoltageGraph lifted2;
  GraphHom alpha;
  std::vector<std::pair<GroupElement, GroupElement>> generatorPairs;
};

struct Verdict {
  Outcome outcome;
  Reason reason;
  std::optional<Witness> witness;
};

struct DecideOptions {
  long long searchBudget = kDefaultSearchBudget;
  long long closureBudget = kDefaultClosureBudget;
  /// Widen the automorphism search from tree-fixing (pointwise) to all
  /// automorphisms mapping the tree edge set onto itself, re-condensing the
  /// pulled-back assignment.
  bool alphaSetwise = false;
};

/// Fast necessary condition: equal degree profiles. Inputs must be
/// connected and condensed; violations throw.
bool precheck(const VoltageGraph& vg1, const VoltageGraph& vg2);

enum class CoverTestStatus { Success, Fail, NotGood, NonRegular };

struct CoverTestResult {
  CoverTestStatus status;
  std::optional<Witness> witness;
};

/// Tests one common cover: goodness of both projections, regularity of
/// both, then the generator-map isomorphism over every admissible
/// automorphism of the cover.
CoverTestResult testCover(const VoltageGraph& vg1, const VoltageGraph& vg2,
                          const CommonCover& cover,
                          const DecideOptions& opts = {});

/// The end-to-end decision procedure: precheck, enumerate common covers
/// smallest-first, and test them until one succeeds or all good ones fail.
Verdict decideIsomorphism(const VoltageGraph& vg1, const VoltageGraph& vg2,
                          const DecideOptions& opts = {});

/// All automorphisms of `g` mapping the tree edge set onto itself. Used by
/// the setwise widening; can be expensive, hence budgeted.
std::vector<GraphHom> treeSetwiseAutomorphisms(
    const Multigraph& g, const TreeSet& tree,
    long long nodeBudget = kDefaultSearchBudget);

}  // namespace voltlift
