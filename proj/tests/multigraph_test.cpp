#include <doctest.h>

#include <numeric>
#include <set>

#include "support.hpp"
#include "voltlift/multigraph.hpp"

using namespace voltlift;
using testsupport::graphOf;

namespace {

Multigraph triangle() {
  return graphOf({"a", "b", "c"},
                 {{"e1", "a", "b"}, {"e2", "b", "c"}, {"e3", "c", "a"}});
}

}  // namespace

TEST_CASE("isConnected") {
  CHECK(isConnected(graphOf({"a"}, {})));
  CHECK_FALSE(isConnected(graphOf({"a", "b"}, {})));
  CHECK(isConnected(graphOf({"a", "b"}, {{"e", "a", "b"}})));
  CHECK(isConnected(Multigraph{}));
}

TEST_CASE("spanningTree on a path keeps all edges") {
  Multigraph g =
      graphOf({"a", "b", "c"}, {{"e1", "a", "b"}, {"e2", "b", "c"}});
  TreeSet t = spanningTree(g, "a");
  CHECK(t.edgeList() == std::vector<EdgeId>{"e1", "e2"});
  CHECK(t.base() == "a");
}

TEST_CASE("spanningTree BFS tie-break on a 3-cycle") {
  TreeSet t = spanningTree(triangle(), "a");
  // Both b and c are at distance 1 from a: a->b forward, c->a backward.
  CHECK(t.edgeList() == std::vector<EdgeId>{"e1", "e3"});
  CHECK(t.depth("b") == 1);
  CHECK(t.depth("c") == 1);
}

TEST_CASE("spanningTree ignores loops") {
  Multigraph g = graphOf({"v"}, {{"l", "v", "v"}});
  TreeSet t = spanningTree(g, "v");
  CHECK(t.edgeList().empty());
}

TEST_CASE("spanningTree errors") {
  CHECK_THROWS_AS(spanningTree(graphOf({"a", "b"}, {}), "a"),
                  DisconnectedGraphError);
  CHECK_THROWS_AS(spanningTree(triangle(), "zz"), UnknownVertexError);
}

TEST_CASE("returnWalk via tree paths") {
  Multigraph g = triangle();
  TreeSet t = treeFromEdges(g, "a", {"e1", "e2"});
  Walk w = returnWalk(g, t, "e3");
  CHECK(w.start() == "a");
  CHECK(w.steps() == std::vector<WalkStep>{{"e1", 1}, {"e2", 1}, {"e3", 1}});
  CHECK(w.isCyclic(g));
}

TEST_CASE("returnWalk of a loop under the empty tree") {
  Multigraph g = graphOf({"v"}, {{"l", "v", "v"}});
  TreeSet t = spanningTree(g, "v");
  Walk w = returnWalk(g, t, "l");
  CHECK(w.steps() == std::vector<WalkStep>{{"l", 1}});
}

TEST_CASE("returnWalk of a parallel chord reverses the tree edge") {
  Multigraph g = graphOf({"a", "b"}, {{"e1", "a", "b"}, {"e2", "a", "b"}});
  TreeSet t = treeFromEdges(g, "a", {"e1"});
  Walk w = returnWalk(g, t, "e2");
  CHECK(w.steps() == std::vector<WalkStep>{{"e2", 1}, {"e1", -1}});
  CHECK_THROWS_AS(returnWalk(g, t, "e1"), EdgeInTreeError);
}

TEST_CASE("directedProduct small cases") {
  Multigraph loop1 = graphOf({"v"}, {{"x", "v", "v"}});
  Multigraph loop2 = graphOf({"w"}, {{"a", "w", "w"}});
  Product p = directedProduct(loop1, loop2);
  CHECK(p.graph.order() == 1);
  CHECK(p.graph.size() == 1);

  Multigraph twoLoops1 = graphOf({"v"}, {{"x", "v", "v"}, {"y", "v", "v"}});
  Multigraph twoLoops2 = graphOf({"w"}, {{"a", "w", "w"}, {"b", "w", "w"}});
  CHECK(directedProduct(twoLoops1, twoLoops2).graph.size() == 4);

  Multigraph ab = graphOf({"a", "b"}, {{"e", "a", "b"}});
  Multigraph cd = graphOf({"c", "d"}, {{"f", "c", "d"}});
  Product q = directedProduct(ab, cd);
  CHECK(q.graph.order() == 4);
  CHECK(q.graph.size() == 1);
  CHECK(q.graph.src("(e|f)") == "(a|c)");
  CHECK(q.graph.dst("(e|f)") == "(b|d)");
  CHECK(q.toFirst.mapVertex("(a|c)") == "a");
  CHECK(q.toSecond.mapVertex("(a|c)") == "c");
}

TEST_CASE("isCovering") {
  Multigraph g = triangle();
  CHECK(isCovering(GraphHom::identity(g)));

  // 2-cycle onto a single loop.
  Multigraph twoCycle = graphOf({"0", "1"}, {{"u", "0", "1"}, {"d", "1", "0"}});
  Multigraph loop = graphOf({"v"}, {{"l", "v", "v"}});
  GraphHom down(twoCycle, loop, {{"0", "v"}, {"1", "v"}},
                {{"u", "l"}, {"d", "l"}});
  CHECK(isCovering(down));

  // Collapsing parallel edges is not a covering: Out(a) is not injective.
  Multigraph par = graphOf({"a", "b"}, {{"e1", "a", "b"}, {"e2", "a", "b"}});
  Multigraph single = graphOf({"a", "b"}, {{"e", "a", "b"}});
  GraphHom collapse(par, single, {{"a", "a"}, {"b", "b"}},
                    {{"e1", "e"}, {"e2", "e"}});
  CHECK_FALSE(isCovering(collapse));
}

TEST_CASE("degreeProfile") {
  using Profile = std::vector<std::pair<std::size_t, std::size_t>>;
  CHECK(degreeProfile(triangle()) == Profile{{1, 1}, {1, 1}, {1, 1}});
  Multigraph twoLoops = graphOf({"v"}, {{"x", "v", "v"}, {"y", "v", "v"}});
  CHECK(degreeProfile(twoLoops) == Profile{{2, 2}});
  Multigraph path = graphOf({"a", "b"}, {{"e", "a", "b"}});
  CHECK(degreeProfile(path) == Profile{{0, 1}, {1, 0}});
}

TEST_CASE("automorphismsFixingTree") {
  Multigraph path =
      graphOf({"a", "b", "c"}, {{"e1", "a", "b"}, {"e2", "b", "c"}});
  TreeSet t = spanningTree(path, "a");
  CHECK(automorphismsFixingTree(path, t).size() == 1);

  Multigraph par = graphOf(
      {"a", "b"}, {{"t", "a", "b"}, {"c1", "a", "b"}, {"c2", "a", "b"}});
  TreeSet pt = treeFromEdges(par, "a", {"t"});
  auto autos = automorphismsFixingTree(par, pt);
  CHECK(autos.size() == 2);
  bool sawSwap = false, sawId = false;
  for (const GraphHom& h : autos) {
    if (h.mapEdge("c1") == "c2" && h.mapEdge("c2") == "c1") sawSwap = true;
    if (h.mapEdge("c1") == "c1" && h.mapEdge("c2") == "c2") sawId = true;
    CHECK(h.mapEdge("t") == "t");
  }
  CHECK(sawSwap);
  CHECK(sawId);

  Multigraph loops = graphOf(
      {"v"}, {{"l1", "v", "v"}, {"l2", "v", "v"}, {"l3", "v", "v"}});
  TreeSet lt = spanningTree(loops, "v");
  CHECK(automorphismsFixingTree(loops, lt).size() == 6);
}

TEST_CASE("spanning tree property: size and acyclicity (union-find)") {
  testsupport::Rng rng(20260810);
  for (int iter = 0; iter < 60; ++iter) {
    Multigraph g = testsupport::randomConnectedGraph(rng, 7, 11);
    TreeSet t = spanningTree(g, g.vertices().front());
    CHECK(t.edgeList().size() == g.order() - 1);
    std::vector<std::size_t> parent(g.order());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const EdgeId& e : t.edgeList()) {
      std::size_t a = find(g.vertexIndex(g.src(e)));
      std::size_t b = find(g.vertexIndex(g.dst(e)));
      CHECK(a != b);  // a tree edge never closes a cycle
      parent[a] = b;
    }
  }
}

TEST_CASE("return walk property: cyclic, one chord, exponent +1") {
  testsupport::Rng rng(7);
  for (int iter = 0; iter < 40; ++iter) {
    Multigraph g = testsupport::randomConnectedGraph(rng, 6, 9);
    TreeSet t = spanningTree(g, g.vertices().front());
    for (const EdgeId& e : g.edges()) {
      if (t.contains(e)) continue;
      Walk w = returnWalk(g, t, e);
      CHECK(w.isCyclic(g));
      CHECK(w.start() == t.base());
      int chordSteps = 0;
      for (const WalkStep& s : w.steps()) {
        if (!t.contains(s.edge)) {
          ++chordSteps;
          CHECK(s.edge == e);
          CHECK(s.dir == 1);
        }
      }
      CHECK(chordSteps == 1);
    }
  }
}

TEST_CASE("product projections cover when both factors are degree-regular") {
  Multigraph loop = graphOf({"v"}, {{"x", "v", "v"}});
  Multigraph two = graphOf({"0", "1"}, {{"u", "0", "1"}, {"d", "1", "0"}});
  Product p = directedProduct(two, loop);
  CHECK(isCovering(p.toFirst));
  CHECK(isCovering(p.toSecond));
}

TEST_CASE("tree-fixing automorphisms are closed under composition") {
  Multigraph g = graphOf({"a", "b"}, {{"t", "a", "b"},
                                      {"c1", "a", "b"},
                                      {"c2", "a", "b"},
                                      {"l1", "b", "b"},
                                      {"l2", "b", "b"}});
  TreeSet t = treeFromEdges(g, "a", {"t"});
  auto autos = automorphismsFixingTree(g, t);
  CHECK(autos.size() == 4);
  auto edgeImage = [&](const GraphHom& h) {
    std::map<EdgeId, EdgeId> m;
    for (const EdgeId& e : g.edges()) m[e] = h.mapEdge(e);
    return m;
  };
  std::set<std::map<EdgeId, EdgeId>> all;
  for (const GraphHom& h : autos) all.insert(edgeImage(h));
  for (const GraphHom& h1 : autos) {
    for (const GraphHom& h2 : autos) {
      std::map<EdgeId, EdgeId> composed;
      for (const EdgeId& e : g.edges())
        composed[e] = h1.mapEdge(h2.mapEdge(e));
      CHECK(all.count(composed) == 1);
    }
  }
}
