#include "voltlift/covers.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>

namespace voltlift {

namespace {

using Perm = std::vector<std::size_t>;

Perm identityPerm(std::size_t n) {
  Perm p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = i;
  return p;
}

// (a after b): apply b first.
Perm compose(const Perm& a, const Perm& b) {
  Perm r(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = a[b[i]];
  return r;
}

bool isIdentityPerm(const Perm& p) {
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] != i) return false;
  return true;
}

// p^e for arbitrary-precision e, applied cycle by cycle so no permutation
// order ever needs to be materialised.
Perm permPower(const Perm& p, const Int& e) {
  const std::size_t n = p.size();
  Perm r(n);
  std::vector<bool> done(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    if (done[i]) continue;
    std::vector<std::size_t> cycle{i};
    done[i] = true;
    for (std::size_t j = p[i]; j != i; j = p[j]) {
      cycle.push_back(j);
      done[j] = true;
    }
    Int shiftBig;
    mpz_fdiv_r_ui(shiftBig.get_mpz_t(), e.get_mpz_t(),
                  static_cast<unsigned long>(cycle.size()));
    const std::size_t shift = shiftBig.get_ui();
    for (std::size_t k = 0; k < cycle.size(); ++k)
      r[cycle[k]] = cycle[(k + shift) % cycle.size()];
  }
  return r;
}

}  // namespace

CoverMap::CoverMap(GraphHom hom) : hom_(std::move(hom)), verified_(false) {
  if (!isCovering(hom_))
    throw ValidationError("homomorphism is not a covering");
  verified_ = true;
}

std::vector<VertexId> CoverMap::fiber(const VertexId& v) const {
  if (!codomain().hasVertex(v))
    throw UnknownVertexError("unknown vertex: " + v);
  std::vector<VertexId> out;
  for (const VertexId& u : domain().vertices())
    if (hom_.mapVertex(u) == v) out.push_back(u);
  return out;
}

Walk liftWalk(const CoverMap& c, const Walk& w, const VertexId& start) {
  const Multigraph& dom = c.domain();
  const Multigraph& cod = c.codomain();
  w.end(cod);
  if (!dom.hasVertex(start))
    throw UnknownVertexError("unknown vertex: " + start);
  if (c.hom().mapVertex(start) != w.start())
    throw FiberMismatchError("lift start does not lie over the walk start");

  VertexId at = start;
  std::vector<WalkStep> steps;
  steps.reserve(w.length());
  for (const WalkStep& s : w.steps()) {
    const std::vector<EdgeId>& candidates =
        s.dir == 1 ? dom.outEdges(at) : dom.inEdges(at);
    const EdgeId* lift = nullptr;
    for (const EdgeId& e : candidates) {
      if (c.hom().mapEdge(e) == s.edge) {
        lift = &e;
        break;
      }
    }
    if (lift == nullptr)
      throw ValidationError("walk has no lift; the map is not a covering");
    steps.push_back({*lift, s.dir});
    at = s.dir == 1 ? dom.dst(*lift) : dom.src(*lift);
  }
  return Walk(start, std::move(steps));
}

ProperLift::ProperLift(std::vector<VertexId> interiorVertices,
                       std::vector<EdgeId> interiorEdges,
                       std::vector<EdgeId> boundaryEdges,
                       std::vector<EdgeId> liftedTreeEdges,
                       std::map<VertexId, VertexId> interiorOver)
    : interiorVertices_(std::move(interiorVertices)),
      interiorEdges_(std::move(interiorEdges)),
      boundaryEdges_(std::move(boundaryEdges)),
      liftedTreeEdges_(std::move(liftedTreeEdges)),
      interiorOver_(std::move(interiorOver)) {}

const VertexId& ProperLift::interiorOver(const VertexId& codomainVertex) const {
  auto it = interiorOver_.find(codomainVertex);
  if (it == interiorOver_.end())
    throw UnknownVertexError("no interior vertex over: " + codomainVertex);
  return it->second;
}

ProperLift properLift(const CoverMap& c, const TreeSet& tree,
                      const VertexId& baseLift) {
  const Multigraph& dom = c.domain();
  const Multigraph& cod = c.codomain();
  requireTreeMatches(cod, tree);
  if (!dom.hasVertex(baseLift))
    throw UnknownVertexError("unknown vertex: " + baseLift);
  if (c.hom().mapVertex(baseLift) != tree.base())
    throw FiberMismatchError("base lift does not lie over the tree base");

  // Lift the spanning tree one vertex at a time, shallowest first; each new
  // vertex is reached by lifting the single step from its tree parent.
  std::vector<VertexId> byDepth = cod.vertices();
  std::stable_sort(byDepth.begin(), byDepth.end(),
                   [&](const VertexId& a, const VertexId& b) {
                     return tree.depth(a) < tree.depth(b);
                   });
  std::map<VertexId, VertexId> interiorOver;
  interiorOver[tree.base()] = baseLift;
  std::vector<EdgeId> liftedTree;
  for (const VertexId& v : byDepth) {
    if (v == tree.base()) continue;
    const WalkStep& toParent = tree.parentStep(v);
    WalkStep fromParent{toParent.edge, -toParent.dir};
    const VertexId& parent = toParent.dir == 1 ? cod.dst(toParent.edge)
                                               : cod.src(toParent.edge);
    Walk step(parent, {fromParent});
    Walk lifted = liftWalk(c, step, interiorOver.at(parent));
    interiorOver[v] = lifted.end(dom);
    liftedTree.push_back(lifted.steps().front().edge);
  }

  std::vector<VertexId> interior;
  interior.reserve(cod.order());
  std::set<VertexId> interiorSet;
  for (const VertexId& v : cod.vertices()) {
    interior.push_back(interiorOver.at(v));
    interiorSet.insert(interiorOver.at(v));
  }

  std::vector<EdgeId> interiorEdges, boundaryEdges;
  for (const VertexId& u : interior) {
    for (const EdgeId& e : dom.outEdges(u)) {
      if (interiorSet.count(dom.dst(e)))
        interiorEdges.push_back(e);
      else
        boundaryEdges.push_back(e);
    }
  }
  return ProperLift(std::move(interior), std::move(interiorEdges),
                    std::move(boundaryEdges), std::move(liftedTree),
                    std::move(interiorOver));
}

Monodromy::Monodromy(CoverMap cover, TreeSet tree,
                     std::vector<VertexId> baseFiber,
                     std::vector<EdgeId> chords,
                     std::vector<std::vector<std::size_t>> chordPerms)
    : cover_(std::move(cover)),
      tree_(std::move(tree)),
      baseFiber_(std::move(baseFiber)),
      chords_(std::move(chords)),
      chordPerms_(std::move(chordPerms)) {}

Monodromy monodromy(const CoverMap& c, const TreeSet& tree) {
  const Multigraph& cod = c.codomain();
  requireTreeMatches(cod, tree);
  if (!isConnected(c.domain()) || !isConnected(cod))
    throw DisconnectedGraphError("monodromy requires connected graphs");

  std::vector<VertexId> fiber = c.fiber(tree.base());
  std::map<VertexId, std::size_t> fiberIndex;
  for (std::size_t i = 0; i < fiber.size(); ++i) fiberIndex[fiber[i]] = i;

  std::vector<EdgeId> chords;
  for (const EdgeId& e : cod.edges())
    if (!tree.contains(e)) chords.push_back(e);

  std::vector<Perm> perms;
  perms.reserve(chords.size());
  for (const EdgeId& e : chords) {
    Walk rw = returnWalk(cod, tree, e);
    Perm p(fiber.size());
    for (std::size_t i = 0; i < fiber.size(); ++i)
      p[i] = fiberIndex.at(liftWalk(c, rw, fiber[i]).end(c.domain()));
    perms.push_back(std::move(p));
  }
  return Monodromy(c, tree, std::move(fiber), std::move(chords),
                   std::move(perms));
}

bool isRegular(const Monodromy& m, long long closureBudget) {
  const std::size_t n = m.baseFiber().size();
  std::set<Perm> seen;
  std::deque<Perm> todo;
  seen.insert(identityPerm(n));
  todo.push_back(identityPerm(n));
  while (!todo.empty()) {
    Perm p = todo.front();
    todo.pop_front();
    for (const Perm& g : m.chordPerms()) {
      Perm q = compose(g, p);
      if (seen.insert(q).second) {
        if (static_cast<long long>(seen.size()) > closureBudget)
          throw GroupTooLargeError("monodromy closure exceeds budget");
        todo.push_back(q);
      }
    }
  }
  for (const Perm& p : seen) {
    std::size_t fixed = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (p[i] == i) ++fixed;
    if (fixed != 0 && fixed != n) return false;
  }
  return true;
}

bool isGoodCover(const Monodromy& m, const VoltageGraph& vg,
                 const TreeSet& tree) {
  if (!(vg.graph() == m.cover().codomain()))
    throw ValidationError("voltage graph does not match the cover codomain");
  if (tree.base() != m.tree().base() ||
      tree.edgeList() != m.tree().edgeList())
    throw ValidationError("good-cover check needs the monodromy's tree");

  // Over an abelian voltage group, every zero-voltage cyclic walk is a tree
  // conjugate of a base walk whose chord exponent vector lies in the
  // relation lattice of the condensed chord voltages, and conjugates of the
  // identity permutation are the identity. So all lifts of all zero-voltage
  // cyclic walks close exactly when (i) the chord permutations commute
  // pairwise (commutators are zero-voltage walks) and (ii) each lattice
  // basis word acts trivially on the base fiber.
  const auto& perms = m.chordPerms();
  for (std::size_t i = 0; i < perms.size(); ++i)
    for (std::size_t j = i + 1; j < perms.size(); ++j)
      if (compose(perms[i], perms[j]) != compose(perms[j], perms[i]))
        return false;

  VoltageGraph condensed = condense(vg, tree);
  std::vector<GroupElement> chordVoltages;
  chordVoltages.reserve(m.chords().size());
  for (const EdgeId& e : m.chords())
    chordVoltages.push_back(condensed.voltage(e));

  const std::size_t n = m.baseFiber().size();
  IntegerLattice lattice = relationLattice(chordVoltages);
  for (const IntVector& word : lattice.basis()) {
    Perm acc = identityPerm(n);
    for (std::size_t i = 0; i < word.size(); ++i) {
      if (word[i] == 0) continue;
      acc = compose(permPower(perms[i], word[i]), acc);
    }
    if (!isIdentityPerm(acc)) return false;
  }
  return true;
}

VoltageGraph liftVoltage(const VoltageGraph& vg, const CoverMap& c) {
  if (!(c.codomain() == vg.graph()))
    throw ValidationError("cover codomain does not match the voltage graph");
  std::map<EdgeId, GroupElement> lifted;
  for (const EdgeId& e : c.domain().edges())
    lifted.emplace(e, vg.voltage(c.hom().mapEdge(e)));
  return VoltageGraph(c.domain(), vg.spec(), std::move(lifted));
}

std::vector<GraphHom> deckGroup(const CoverMap& c) {
  const Multigraph& dom = c.domain();
  if (dom.order() == 0) return {};
  if (!isConnected(dom))
    throw DisconnectedGraphError("deck group requires a connected domain");

  const VertexId& base = dom.vertices().front();
  std::vector<VertexId> fiber = c.fiber(c.hom().mapVertex(base));

  std::vector<GraphHom> deck;
  for (const VertexId& target : fiber) {
    // Unique lifting: the image of the base vertex determines the whole
    // automorphism; propagate it and reject on any conflict.
    std::map<VertexId, VertexId> vmap;
    std::map<EdgeId, EdgeId> emap;
    vmap[base] = target;
    std::deque<VertexId> todo{base};
    std::set<VertexId> processed;
    bool ok = true;
    while (ok && !todo.empty()) {
      VertexId w = todo.front();
      todo.pop_front();
      if (!processed.insert(w).second) continue;
      const VertexId& img = vmap.at(w);
      auto extend = [&](const EdgeId& e, bool outgoing) {
        const auto& candidates =
            outgoing ? dom.outEdges(img) : dom.inEdges(img);
        const EdgeId* match = nullptr;
        for (const EdgeId& f : candidates)
          if (c.hom().mapEdge(f) == c.hom().mapEdge(e)) {
            match = &f;
            break;
          }
        if (match == nullptr) return false;
        auto [eit, inserted] = emap.emplace(e, *match);
        if (!inserted && eit->second != *match) return false;
        const VertexId& across = outgoing ? dom.dst(e) : dom.src(e);
        const VertexId& acrossImg = outgoing ? dom.dst(*match) : dom.src(*match);
        auto [vit, vinserted] = vmap.emplace(across, acrossImg);
        if (!vinserted && vit->second != acrossImg) return false;
        if (vinserted) todo.push_back(across);
        return true;
      };
      for (const EdgeId& e : dom.outEdges(w))
        if (!(ok = extend(e, true))) break;
      if (!ok) break;
      for (const EdgeId& e : dom.inEdges(w))
        if (!(ok = extend(e, false))) break;
    }
    if (!ok) continue;
    if (vmap.size() != dom.order() || emap.size() != dom.size()) continue;
    std::set<VertexId> vimage;
    for (const auto& kv : vmap) vimage.insert(kv.second);
    std::set<EdgeId> eimage;
    for (const auto& kv : emap) eimage.insert(kv.second);
    if (vimage.size() != dom.order() || eimage.size() != dom.size()) continue;
    deck.emplace_back(dom, dom, std::move(vmap), std::move(emap));
  }
  return deck;
}

namespace {

/// Backtracking enumeration of covering subgraphs of the directed product.
/// At every included product vertex the subgraph must select a bijection
/// between the two factors' out-sets and one between the in-sets; edges
/// chosen at one vertex force partial matchings at their other endpoint.
class CoverSearch {
 public:
  CoverSearch(const Multigraph& d1, const Multigraph& d2,
              const Product& theta, long long budget)
      : d1_(d1), d2_(d2), theta_(theta), budget_(budget) {}

  std::vector<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>>
  run() {
    const std::size_t n = theta_.graph.order();
    for (seed_ = 0; seed_ < n; ++seed_) {
      auto [v1, v2] = vertexFactors(seed_);
      if (d1_.outEdges(d1_.vertices()[v1]).size() !=
              d2_.outEdges(d2_.vertices()[v2]).size() ||
          d1_.inEdges(d1_.vertices()[v1]).size() !=
              d2_.inEdges(d2_.vertices()[v2]).size())
        continue;
      State s;
      s.verts[seed_];
      s.queue.push_back(seed_);
      expand(s);
    }
    return {found_.begin(), found_.end()};
  }

 private:
  struct VState {
    std::map<std::size_t, std::size_t> outMatch;  // d1 edge idx -> d2 edge idx
    std::map<std::size_t, std::size_t> inMatch;
    bool processed = false;
  };
  struct State {
    std::map<std::size_t, VState> verts;
    std::vector<std::size_t> queue;
    std::size_t qhead = 0;
    std::set<std::size_t> edges;  // product edge indices
  };

  std::pair<std::size_t, std::size_t> vertexFactors(std::size_t v) const {
    return {v / d2_.order(), v % d2_.order()};
  }
  std::size_t productEdge(std::size_t j1, std::size_t j2) const {
    return j1 * d2_.size() + j2;
  }

  bool isLoop1(std::size_t j1) const {
    const EdgeId& e = d1_.edges()[j1];
    return d1_.src(e) == d1_.dst(e);
  }
  bool isLoop2(std::size_t j2) const {
    const EdgeId& e = d2_.edges()[j2];
    return d2_.src(e) == d2_.dst(e);
  }

  void chargeNode() {
    if (++nodes_ > budget_)
      throw SearchBudgetExceededError(
          "common-cover search exceeded its node budget");
  }

  // Adds a product edge, forcing matching entries at both endpoints.
  bool addEdge(State& s, std::size_t j1, std::size_t j2) {
    std::size_t j = productEdge(j1, j2);
    if (s.edges.count(j)) return true;
    const EdgeId& eid = theta_.graph.edges()[j];
    std::size_t tail = theta_.graph.vertexIndex(theta_.graph.src(eid));
    std::size_t head = theta_.graph.vertexIndex(theta_.graph.dst(eid));
    for (std::size_t v : {tail, head}) {
      if (s.verts.count(v)) continue;
      if (v < seed_) return false;  // found from an earlier seed already
      s.verts[v];
      s.queue.push_back(v);
    }
    VState& tv = s.verts.at(tail);
    auto [oit, oins] = tv.outMatch.emplace(j1, j2);
    if (!oins && oit->second != j2) return false;
    if (oins && tv.processed) return false;
    if (oins)
      for (const auto& kv : tv.outMatch)
        if (kv.first != j1 && kv.second == j2) return false;
    VState& hv = s.verts.at(head);
    auto [iit, iins] = hv.inMatch.emplace(j1, j2);
    if (!iins && iit->second != j2) return false;
    if (iins && hv.processed) return false;
    if (iins)
      for (const auto& kv : hv.inMatch)
        if (kv.first != j1 && kv.second == j2) return false;
    s.edges.insert(j);
    return true;
  }

  // All completions of a partial bijection side1 -> side2.
  void enumCompletions(const std::vector<std::size_t>& side1,
                       const std::vector<std::size_t>& side2,
                       const std::map<std::size_t, std::size_t>& partial,
                       std::vector<std::map<std::size_t, std::size_t>>& out) {
    std::vector<std::size_t> free1;
    std::set<std::size_t> used2;
    for (const auto& kv : partial) used2.insert(kv.second);
    for (std::size_t j1 : side1)
      if (!partial.count(j1)) free1.push_back(j1);

    std::map<std::size_t, std::size_t> current = partial;
    std::function<void(std::size_t)> rec = [&](std::size_t k) {
      if (k == free1.size()) {
        out.push_back(current);
        return;
      }
      chargeNode();
      for (std::size_t j2 : side2) {
        if (used2.count(j2)) continue;
        current[free1[k]] = j2;
        used2.insert(j2);
        rec(k + 1);
        current.erase(free1[k]);
        used2.erase(j2);
      }
    };
    rec(0);
  }

  void expand(State s) {
    chargeNode();
    if (s.qhead == s.queue.size()) {
      record(s);
      return;
    }
    const std::size_t w = s.queue[s.qhead];
    auto [i1, i2] = vertexFactors(w);
    const VertexId& v1 = d1_.vertices()[i1];
    const VertexId& v2 = d2_.vertices()[i2];
    if (d1_.outEdges(v1).size() != d2_.outEdges(v2).size() ||
        d1_.inEdges(v1).size() != d2_.inEdges(v2).size())
      return;

    std::vector<std::size_t> out1, out2, in1, in2;
    for (const EdgeId& e : d1_.outEdges(v1)) out1.push_back(d1_.edgeIndex(e));
    for (const EdgeId& e : d2_.outEdges(v2)) out2.push_back(d2_.edgeIndex(e));
    for (const EdgeId& e : d1_.inEdges(v1)) in1.push_back(d1_.edgeIndex(e));
    for (const EdgeId& e : d2_.inEdges(v2)) in2.push_back(d2_.edgeIndex(e));

    std::vector<std::map<std::size_t, std::size_t>> outChoices;
    enumCompletions(out1, out2, s.verts.at(w).outMatch, outChoices);
    for (const auto& om : outChoices) {
      // A loop paired with a loop is simultaneously an in-edge here, so it
      // forces the corresponding entry of the in-matching.
      std::map<std::size_t, std::size_t> inPartial = s.verts.at(w).inMatch;
      bool consistent = true;
      for (const auto& kv : om) {
        if (!isLoop1(kv.first) || !isLoop2(kv.second)) continue;
        auto [it, ins] = inPartial.emplace(kv.first, kv.second);
        if (!ins && it->second != kv.second) {
          consistent = false;
          break;
        }
      }
      if (!consistent) continue;
      {
        std::set<std::size_t> vals;
        for (const auto& kv : inPartial)
          if (!vals.insert(kv.second).second) consistent = false;
      }
      if (!consistent) continue;

      std::vector<std::map<std::size_t, std::size_t>> inChoices;
      enumCompletions(in1, in2, inPartial, inChoices);
      for (const auto& im : inChoices) {
        bool valid = true;
        for (const auto& kv : im) {
          if (isLoop1(kv.first) && isLoop2(kv.second)) {
            auto it = om.find(kv.first);
            if (it == om.end() || it->second != kv.second) {
              valid = false;
              break;
            }
          }
        }
        if (!valid) continue;

        State child = s;
        VState& cw = child.verts.at(w);
        cw.outMatch = om;
        cw.inMatch = im;
        cw.processed = true;
        child.qhead = s.qhead + 1;
        bool ok = true;
        for (const auto& kv : om)
          if (!(ok = addEdge(child, kv.first, kv.second))) break;
        if (ok)
          for (const auto& kv : im)
            if (!(ok = addEdge(child, kv.first, kv.second))) break;
        if (ok) expand(std::move(child));
      }
    }
  }

  void record(const State& s) {
    std::vector<std::size_t> vs;
    vs.reserve(s.verts.size());
    for (const auto& kv : s.verts) vs.push_back(kv.first);
    std::vector<std::size_t> es(s.edges.begin(), s.edges.end());
    found_.insert({std::move(vs), std::move(es)});
  }

  const Multigraph& d1_;
  const Multigraph& d2_;
  const Product& theta_;
  long long budget_;
  long long nodes_ = 0;
  std::size_t seed_ = 0;
  std::set<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>>
      found_;
};

}  // namespace

std::vector<CommonCover> findCommonCovers(const Multigraph& d1,
                                          const Multigraph& d2,
                                          long long nodeBudget) {
  if (!isConnected(d1) || !isConnected(d2))
    throw DisconnectedGraphError("common covers require connected factors");
  Product theta = directedProduct(d1, d2);

  CoverSearch search(d1, d2, theta, nodeBudget);
  auto raw = search.run();

  std::sort(raw.begin(), raw.end(), [](const auto& a, const auto& b) {
    if (a.first.size() != b.first.size())
      return a.first.size() < b.first.size();
    if (a.second.size() != b.second.size())
      return a.second.size() < b.second.size();
    if (a.first != b.first) return a.first < b.first;
    return a.second < b.second;
  });

  std::vector<CommonCover> covers;
  covers.reserve(raw.size());
  for (const auto& [vs, es] : raw) {
    Multigraph top;
    for (std::size_t v : vs) top.addVertex(theta.graph.vertices()[v]);
    std::map<VertexId, VertexId> vmap1, vmap2;
    std::map<EdgeId, EdgeId> emap1, emap2;
    for (std::size_t v : vs) {
      const VertexId& id = theta.graph.vertices()[v];
      vmap1[id] = theta.toFirst.mapVertex(id);
      vmap2[id] = theta.toSecond.mapVertex(id);
    }
    for (std::size_t e : es) {
      const EdgeId& id = theta.graph.edges()[e];
      top.addEdge(id, theta.graph.src(id), theta.graph.dst(id));
      emap1[id] = theta.toFirst.mapEdge(id);
      emap2[id] = theta.toSecond.mapEdge(id);
    }
    CoverMap mu1(GraphHom(top, d1, std::move(vmap1), std::move(emap1)));
    CoverMap mu2(GraphHom(top, d2, std::move(vmap2), std::move(emap2)));
    covers.push_back(CommonCover{std::move(top), std::move(mu1), std::move(mu2)});
  }
  return covers;
}

}  // namespace voltlift
