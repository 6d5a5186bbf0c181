#include "voltlift/oracle.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>
#include <tuple>

namespace voltlift::oracle {

namespace {

// Joint 1-dimensional color refinement over both graphs so final colors are
// comparable. Multiplicities matter: parallel edges contribute repeated
// neighbor colors.
std::pair<std::map<VertexId, int>, std::map<VertexId, int>> jointRefine(
    const Multigraph& g1, const Multigraph& g2) {
  std::map<VertexId, int> c1, c2;
  auto initial = [](const Multigraph& g, std::map<VertexId, int>& c,
                    std::map<std::pair<std::size_t, std::size_t>, int>& pal) {
    for (const VertexId& v : g.vertices()) {
      auto key = std::make_pair(g.inEdges(v).size(), g.outEdges(v).size());
      auto it = pal.find(key);
      if (it == pal.end()) it = pal.emplace(key, static_cast<int>(pal.size())).first;
      c[v] = it->second;
    }
  };
  std::map<std::pair<std::size_t, std::size_t>, int> palette;
  initial(g1, c1, palette);
  initial(g2, c2, palette);

  for (std::size_t round = 0; round < g1.order() + g2.order() + 1; ++round) {
    using Sig = std::tuple<int, std::vector<int>, std::vector<int>>;
    auto signatureOf = [](const Multigraph& g, const std::map<VertexId, int>& c,
                          const VertexId& v) {
      std::vector<int> outs, ins;
      for (const EdgeId& e : g.outEdges(v)) outs.push_back(c.at(g.dst(e)));
      for (const EdgeId& e : g.inEdges(v)) ins.push_back(c.at(g.src(e)));
      std::sort(outs.begin(), outs.end());
      std::sort(ins.begin(), ins.end());
      return Sig{c.at(v), std::move(outs), std::move(ins)};
    };
    std::map<Sig, int> next;
    std::map<VertexId, int> n1, n2;
    for (const VertexId& v : g1.vertices()) {
      Sig s = signatureOf(g1, c1, v);
      auto it = next.find(s);
      if (it == next.end()) it = next.emplace(s, static_cast<int>(next.size())).first;
      n1[v] = it->second;
    }
    for (const VertexId& v : g2.vertices()) {
      Sig s = signatureOf(g2, c2, v);
      auto it = next.find(s);
      if (it == next.end()) it = next.emplace(s, static_cast<int>(next.size())).first;
      n2[v] = it->second;
    }
    if (n1 == c1 && n2 == c2) break;
    c1 = std::move(n1);
    c2 = std::move(n2);
  }
  return {std::move(c1), std::move(c2)};
}

std::map<int, std::size_t> histogram(const std::map<VertexId, int>& colors) {
  std::map<int, std::size_t> h;
  for (const auto& kv : colors) ++h[kv.second];
  return h;
}

std::size_t multiplicity(const Multigraph& g, const VertexId& a,
                         const VertexId& b) {
  std::size_t n = 0;
  for (const EdgeId& e : g.outEdges(a))
    if (g.dst(e) == b) ++n;
  return n;
}

}  // namespace

bool SubgraphKey::operator<(const SubgraphKey& other) const {
  if (vertices.size() != other.vertices.size())
    return vertices.size() < other.vertices.size();
  if (edges.size() != other.edges.size())
    return edges.size() < other.edges.size();
  if (vertices != other.vertices) return vertices < other.vertices;
  return edges < other.edges;
}

std::optional<IsoCertificate> bruteForceIso(const Multigraph& g1,
                                            const Multigraph& g2,
                                            long long nodeBudget) {
  if (g1.order() != g2.order() || g1.size() != g2.size()) return std::nullopt;
  if (g1.order() == 0) return IsoCertificate{};

  auto [c1, c2] = jointRefine(g1, g2);
  if (histogram(c1) != histogram(c2)) return std::nullopt;

  // Map vertices one at a time, preferring vertices adjacent to the mapped
  // region, with rare colors first for the root.
  std::vector<VertexId> order;
  {
    std::map<int, std::size_t> freq = histogram(c1);
    std::set<VertexId> placed;
    VertexId root = g1.vertices().front();
    for (const VertexId& v : g1.vertices())
      if (freq[c1[v]] < freq[c1[root]]) root = v;
    order.push_back(root);
    placed.insert(root);
    while (order.size() < g1.order()) {
      VertexId next;
      bool foundAdjacent = false;
      for (std::size_t i = 0; i < order.size() && !foundAdjacent; ++i) {
        const VertexId& u = order[i];
        for (const EdgeId& e : g1.outEdges(u))
          if (!placed.count(g1.dst(e))) {
            next = g1.dst(e);
            foundAdjacent = true;
            break;
          }
        if (!foundAdjacent)
          for (const EdgeId& e : g1.inEdges(u))
            if (!placed.count(g1.src(e))) {
              next = g1.src(e);
              foundAdjacent = true;
              break;
            }
      }
      if (!foundAdjacent)
        for (const VertexId& v : g1.vertices())
          if (!placed.count(v)) {
            next = v;
            break;
          }
      order.push_back(next);
      placed.insert(next);
    }
  }

  std::map<VertexId, VertexId> vbij;
  std::set<VertexId> used;
  long long nodes = 0;
  std::function<bool(std::size_t)> rec = [&](std::size_t k) -> bool {
    if (k == order.size()) return true;
    if (++nodes > nodeBudget)
      throw SizeBudgetExceededError("isomorphism search exceeded its budget");
    const VertexId& v = order[k];
    for (const VertexId& w : g2.vertices()) {
      if (used.count(w)) continue;
      if (c1.at(v) != c2.at(w)) continue;
      if (multiplicity(g1, v, v) != multiplicity(g2, w, w)) continue;
      bool ok = true;
      for (const auto& kv : vbij) {
        if (multiplicity(g1, v, kv.first) != multiplicity(g2, w, kv.second) ||
            multiplicity(g1, kv.first, v) != multiplicity(g2, kv.second, w)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      vbij[v] = w;
      used.insert(w);
      if (rec(k + 1)) return true;
      vbij.erase(v);
      used.erase(w);
    }
    return false;
  };
  if (!rec(0)) return std::nullopt;

  // Multiplicities agree for every vertex pair, so edges can be matched
  // within each parallel class in insertion order.
  std::map<std::pair<VertexId, VertexId>, std::vector<EdgeId>> classes2;
  for (const EdgeId& e : g2.edges())
    classes2[{g2.src(e), g2.dst(e)}].push_back(e);
  std::map<std::pair<VertexId, VertexId>, std::size_t> cursor;
  IsoCertificate cert;
  cert.vbij = vbij;
  for (const EdgeId& e : g1.edges()) {
    auto key = std::make_pair(vbij.at(g1.src(e)), vbij.at(g1.dst(e)));
    cert.ebij[e] = classes2.at(key)[cursor[key]++];
  }
  return cert;
}

bool goodCoverByDefinition(const CoverMap& c, const VoltageGraph& vg,
                           int maxLen) {
  if (!(c.codomain() == vg.graph()))
    throw ValidationError("voltage graph does not match the cover codomain");
  const Multigraph& cod = c.codomain();
  const Multigraph& dom = c.domain();

  // One fiber position step, along (+1) or against (-1) an edge image.
  auto stepFiber = [&](const VertexId& at, const EdgeId& image, int dir) {
    const auto& candidates = dir == 1 ? dom.outEdges(at) : dom.inEdges(at);
    for (const EdgeId& f : candidates)
      if (c.hom().mapEdge(f) == image)
        return dir == 1 ? dom.dst(f) : dom.src(f);
    throw ValidationError("fiber step has no lift; not a covering");
  };

  for (const VertexId& start : cod.vertices()) {
    std::vector<VertexId> fiber = c.fiber(start);
    using State = std::tuple<VertexId, GroupElement, std::vector<VertexId>>;
    State init{start, GroupElement::zero(vg.spec()), fiber};
    std::set<State> seen{init};
    std::deque<std::pair<State, int>> todo{{init, 0}};
    while (!todo.empty()) {
      auto [state, depth] = todo.front();
      todo.pop_front();
      const auto& [v, volt, positions] = state;
      if (v == start && volt.isZero() && positions != fiber)
        return false;  // a zero-voltage cyclic walk with an open lift
      if (depth == maxLen) continue;
      auto push = [&](const VertexId& nv, GroupElement nvolt, const EdgeId& e,
                      int dir) {
        std::vector<VertexId> npos(positions.size());
        for (std::size_t i = 0; i < positions.size(); ++i)
          npos[i] = stepFiber(positions[i], e, dir);
        State nxt{nv, std::move(nvolt), std::move(npos)};
        if (seen.insert(nxt).second) todo.emplace_back(nxt, depth + 1);
      };
      for (const EdgeId& e : cod.outEdges(v))
        push(cod.dst(e), add(volt, vg.voltage(e)), e, 1);
      for (const EdgeId& e : cod.inEdges(v))
        push(cod.src(e), add(volt, neg(vg.voltage(e))), e, -1);
    }
  }
  return true;
}

std::vector<SubgraphKey> exhaustiveCommonCovers(const Multigraph& d1,
                                                const Multigraph& d2,
                                                std::size_t maxSize) {
  // Independent product construction.
  struct PVertex {
    VertexId id, a, b;
  };
  struct PEdge {
    EdgeId id, a, b;
    std::size_t tail, head;
  };
  std::vector<PVertex> pv;
  std::map<std::pair<VertexId, VertexId>, std::size_t> pvIndex;
  for (const VertexId& a : d1.vertices())
    for (const VertexId& b : d2.vertices()) {
      pvIndex[{a, b}] = pv.size();
      pv.push_back({"(" + a + "|" + b + ")", a, b});
    }
  std::vector<PEdge> pe;
  for (const EdgeId& a : d1.edges())
    for (const EdgeId& b : d2.edges()) {
      pe.push_back({"(" + a + "|" + b + ")", a, b,
                    pvIndex.at({d1.src(a), d2.src(b)}),
                    pvIndex.at({d1.dst(a), d2.dst(b)})});
    }

  if (pv.size() > 16)
    throw SizeBudgetExceededError("product too large for exhaustive search");

  std::vector<SubgraphKey> results;
  const std::size_t n = pv.size();
  for (std::size_t mask = 1; mask < (1u << n); ++mask) {
    std::size_t popcount = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) ++popcount;
    if (popcount > maxSize) continue;

    std::vector<std::size_t> inside;
    for (std::size_t j = 0; j < pe.size(); ++j)
      if ((mask & (1u << pe[j].tail)) && (mask & (1u << pe[j].head)))
        inside.push_back(j);
    if (inside.size() > 22)
      throw SizeBudgetExceededError("too many candidate edges for subset");

    for (std::size_t emask = 0; emask < (1ull << inside.size()); ++emask) {
      std::vector<std::size_t> chosen;
      for (std::size_t j = 0; j < inside.size(); ++j)
        if (emask & (1ull << j)) chosen.push_back(inside[j]);

      // Connectivity over the chosen edges, all masked vertices included.
      std::map<std::size_t, std::size_t> uf;
      for (std::size_t i = 0; i < n; ++i)
        if (mask & (1u << i)) uf[i] = i;
      std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
        while (uf[x] != x) x = uf[x] = uf[uf[x]];
        return x;
      };
      for (std::size_t j : chosen) uf[find(pe[j].tail)] = find(pe[j].head);
      bool connected = true;
      std::size_t root = n;
      for (const auto& kv : uf) {
        std::size_t r = find(kv.first);
        if (root == n) root = r;
        else if (r != root) connected = false;
      }
      if (!connected) continue;

      // Covering projections by direct definition: at every included vertex
      // the chosen out-edges hit each factor out-edge exactly once, same for
      // in-edges; and both projections are onto.
      bool covering = true;
      std::set<VertexId> hit1v, hit2v;
      std::set<EdgeId> hit1e, hit2e;
      for (std::size_t i = 0; i < n && covering; ++i) {
        if (!(mask & (1u << i))) continue;
        hit1v.insert(pv[i].a);
        hit2v.insert(pv[i].b);
        std::set<EdgeId> out1, out2, in1, in2;
        for (std::size_t j : chosen) {
          if (pe[j].tail == i) {
            if (!out1.insert(pe[j].a).second || !out2.insert(pe[j].b).second)
              covering = false;
          }
          if (pe[j].head == i) {
            if (!in1.insert(pe[j].a).second || !in2.insert(pe[j].b).second)
              covering = false;
          }
        }
        if (out1.size() != d1.outEdges(pv[i].a).size() ||
            out2.size() != d2.outEdges(pv[i].b).size() ||
            in1.size() != d1.inEdges(pv[i].a).size() ||
            in2.size() != d2.inEdges(pv[i].b).size())
          covering = false;
      }
      if (!covering) continue;
      for (std::size_t j : chosen) {
        hit1e.insert(pe[j].a);
        hit2e.insert(pe[j].b);
      }
      if (hit1v.size() != d1.order() || hit2v.size() != d2.order() ||
          hit1e.size() != d1.size() || hit2e.size() != d2.size())
        continue;

      SubgraphKey key;
      for (std::size_t i = 0; i < n; ++i)
        if (mask & (1u << i)) key.vertices.push_back(pv[i].id);
      for (std::size_t j : chosen) key.edges.push_back(pe[j].id);
      std::sort(key.vertices.begin(), key.vertices.end());
      std::sort(key.edges.begin(), key.edges.end());
      results.push_back(std::move(key));
    }
  }
  std::sort(results.begin(), results.end());
  return results;
}

}  // namespace voltlift::oracle
