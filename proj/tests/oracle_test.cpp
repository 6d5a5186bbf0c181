#include <doctest.h>

#include <set>

#include "support.hpp"
#include "voltlift/oracle.hpp"

using namespace voltlift;
using testsupport::graphOf;
using testsupport::vgOf;

namespace {

Multigraph cycle(int n, const std::string& prefix) {
  Multigraph g;
  for (int i = 0; i < n; ++i) g.addVertex(prefix + std::to_string(i));
  for (int i = 0; i < n; ++i)
    g.addEdge(prefix + "e" + std::to_string(i), prefix + std::to_string(i),
              prefix + std::to_string((i + 1) % n));
  return g;
}

}  // namespace

TEST_CASE("bruteForceIso finds and refutes") {
  CHECK(oracle::bruteForceIso(cycle(3, "a"), cycle(3, "b")).has_value());

  Multigraph path = graphOf(
      {"p0", "p1", "p2"}, {{"e0", "p0", "p1"}, {"e1", "p1", "p2"}});
  CHECK_FALSE(oracle::bruteForceIso(cycle(3, "a"), path).has_value());

  // Parallel pair versus a 2-cycle: same degree profile, different
  // orientation structure.
  Multigraph par = graphOf({"a", "b"}, {{"e1", "a", "b"}, {"e2", "a", "b"}});
  Multigraph two = graphOf({"x", "y"}, {{"u", "x", "y"}, {"d", "y", "x"}});
  CHECK_FALSE(oracle::bruteForceIso(par, two).has_value());
}

TEST_CASE("bruteForceIso certificates are valid homomorphism pairs") {
  testsupport::Rng rng(321);
  for (int iter = 0; iter < 20; ++iter) {
    Multigraph g = testsupport::randomConnectedGraph(rng, 6, 9);
    // relabeled copy
    Multigraph h;
    for (const VertexId& v : g.vertices()) h.addVertex("h_" + v);
    for (const EdgeId& e : g.edges())
      h.addEdge("h_" + e, "h_" + g.src(e), "h_" + g.dst(e));
    auto cert = oracle::bruteForceIso(g, h);
    REQUIRE(cert.has_value());
    std::set<VertexId> vimg;
    for (const auto& [v, w] : cert->vbij) vimg.insert(w);
    CHECK(vimg.size() == g.order());
    for (const auto& [e, f] : cert->ebij) {
      CHECK(cert->vbij.at(g.src(e)) == h.src(f));
      CHECK(cert->vbij.at(g.dst(e)) == h.dst(f));
    }
  }
}

TEST_CASE("bruteForceIso is an equivalence on a small corpus") {
  testsupport::Rng rng(17);
  std::vector<Multigraph> corpus;
  for (int i = 0; i < 6; ++i)
    corpus.push_back(testsupport::randomConnectedGraph(rng, 4, 6));
  for (const Multigraph& g : corpus) {
    CHECK(oracle::bruteForceIso(g, g).has_value());  // reflexive
    for (const Multigraph& h : corpus) {
      bool gh = oracle::bruteForceIso(g, h).has_value();
      bool hg = oracle::bruteForceIso(h, g).has_value();
      CHECK(gh == hg);  // symmetric
      if (!gh) continue;
      for (const Multigraph& k : corpus) {
        if (oracle::bruteForceIso(h, k).has_value())
          CHECK(oracle::bruteForceIso(g, k).has_value());  // transitive
      }
    }
  }
}

TEST_CASE("goodCoverByDefinition") {
  GroupSpec z(1, {});
  Multigraph base = graphOf({"v"}, {{"x", "v", "v"}, {"y", "v", "v"}});
  VoltageGraph vg = vgOf(base, z, {{"x", {0}}, {"y", {1}}});

  CoverMap idc(GraphHom::identity(base));
  CHECK(oracle::goodCoverByDefinition(idc, vg, 8));

  // Double cover where the zero-voltage loop x swaps the fiber: the walk
  // "x" itself witnesses badness at length 1.
  Multigraph swapX = graphOf({"0", "1"}, {{"x0", "0", "1"},
                                          {"x1", "1", "0"},
                                          {"y0", "0", "0"},
                                          {"y1", "1", "1"}});
  CoverMap bad(GraphHom(swapX, base, {{"0", "v"}, {"1", "v"}},
                        {{"x0", "x"}, {"x1", "x"}, {"y0", "y"}, {"y1", "y"}}));
  CHECK_FALSE(oracle::goodCoverByDefinition(bad, vg, 1));
  CHECK_FALSE(oracle::goodCoverByDefinition(bad, vg, 6));  // stays false

  // Swap on y instead: good.
  Multigraph swapY = graphOf({"0", "1"}, {{"x0", "0", "0"},
                                          {"x1", "1", "1"},
                                          {"y0", "0", "1"},
                                          {"y1", "1", "0"}});
  CoverMap good(GraphHom(swapY, base, {{"0", "v"}, {"1", "v"}},
                         {{"x0", "x"}, {"x1", "x"}, {"y0", "y"}, {"y1", "y"}}));
  CHECK(oracle::goodCoverByDefinition(good, vg, 8));
}

TEST_CASE("goodCoverByDefinition agrees with isGoodCover on random covers") {
  testsupport::Rng rng(5050);
  for (int iter = 0; iter < 15; ++iter) {
    VoltageGraph vg = testsupport::randomCondensedVoltageGraph(rng, 3, 5, 8);
    std::vector<CommonCover> covers =
        findCommonCovers(vg.graph(), vg.graph());
    std::size_t examined = 0;
    for (const CommonCover& c : covers) {
      if (++examined > 6) break;  // keep the unit test quick
      TreeSet tree = spanningTree(vg.graph(), vg.graph().vertices().front());
      bool algebraic = isGoodCover(monodromy(c.mu1, tree), vg, tree);
      int maxLen = 2 * static_cast<int>(c.top.size());
      CHECK(algebraic == oracle::goodCoverByDefinition(c.mu1, vg, maxLen));
    }
  }
}

TEST_CASE("exhaustiveCommonCovers on the loop examples") {
  Multigraph one1 = graphOf({"v"}, {{"x", "v", "v"}});
  Multigraph one2 = graphOf({"w"}, {{"a", "w", "w"}});
  CHECK(oracle::exhaustiveCommonCovers(one1, one2, 8).size() == 1);

  Multigraph two1 = graphOf({"v"}, {{"x", "v", "v"}, {"y", "v", "v"}});
  Multigraph two2 = graphOf({"w"}, {{"a", "w", "w"}, {"b", "w", "w"}});
  CHECK(oracle::exhaustiveCommonCovers(two1, two2, 8).size() == 2);

  // Mismatched degree profiles admit no covering subgraph.
  CHECK(oracle::exhaustiveCommonCovers(one1, two2, 8).empty());
}

TEST_CASE("exhaustiveCommonCovers equals findCommonCovers on tiny inputs") {
  testsupport::Rng rng(9001);
  int compared = 0;
  while (compared < 10) {
    Multigraph a = testsupport::randomConnectedGraph(rng, 2, 4);
    Multigraph b = testsupport::randomConnectedGraph(rng, 2, 4);
    if (a.order() * b.order() > 4 || a.size() * b.size() > 18) continue;
    ++compared;
    std::vector<oracle::SubgraphKey> exhaustive =
        oracle::exhaustiveCommonCovers(a, b, 8);
    std::vector<oracle::SubgraphKey> fast;
    for (const CommonCover& c : findCommonCovers(a, b)) {
      oracle::SubgraphKey key;
      key.vertices = c.top.vertices();
      key.edges = c.top.edges();
      std::sort(key.vertices.begin(), key.vertices.end());
      std::sort(key.edges.begin(), key.edges.end());
      fast.push_back(std::move(key));
    }
    std::sort(fast.begin(), fast.end());
    CHECK(exhaustive == fast);
  }
}
