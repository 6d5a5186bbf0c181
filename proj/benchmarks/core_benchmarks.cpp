#include <benchmark/benchmark.h>

#include <random>

#include "voltlift/decide.hpp"
#include "voltlift/oracle.hpp"

using namespace voltlift;

namespace {

Multigraph wedgeOfLoops(int n) {
  Multigraph g;
  g.addVertex("v");
  for (int i = 0; i < n; ++i) g.addEdge("l" + std::to_string(i), "v", "v");
  return g;
}

// The two quotients of the Z x Z/2 strip used throughout the test suite.
VoltageGraph stripQuotient1() {
  Multigraph g;
  g.addVertex("u");
  g.addVertex("w");
  g.addEdge("ru", "u", "u");
  g.addEdge("rw", "w", "w");
  g.addEdge("bu", "u", "w");
  g.addEdge("bd", "w", "u");
  GroupSpec z(1, {});
  return VoltageGraph(g, z,
                      {{"ru", GroupElement(z, {1})},
                       {"rw", GroupElement(z, {1})},
                       {"bu", GroupElement(z, {0})},
                       {"bd", GroupElement(z, {0})}});
}

VoltageGraph stripQuotient2() {
  Multigraph g;
  g.addVertex("A");
  g.addVertex("B");
  g.addEdge("re", "A", "B");
  g.addEdge("ro", "B", "A");
  g.addEdge("b1", "A", "B");
  g.addEdge("b2", "B", "A");
  GroupSpec z(1, {});
  return VoltageGraph(g, z,
                      {{"re", GroupElement(z, {0})},
                       {"ro", GroupElement(z, {2})},
                       {"b1", GroupElement(z, {-1})},
                       {"b2", GroupElement(z, {1})}});
}

IntMatrix randomMatrix(int rows, int cols, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> dist(-50, 50);
  IntMatrix m(rows, IntVector(cols));
  for (auto& row : m)
    for (auto& x : row) x = dist(rng);
  return m;
}

void BM_HermiteNormalForm(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  IntMatrix m = randomMatrix(n, n, 42);
  for (auto _ : state) {
    IntegerLattice l = hermiteNormalForm(m);
    benchmark::DoNotOptimize(l);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_HermiteNormalForm)->RangeMultiplier(2)->Range(4, 32)->Complexity();

void BM_DerivedGraph(benchmark::State& state) {
  GroupSpec spec(0, {Int(state.range(0))});
  Multigraph g = wedgeOfLoops(3);
  std::map<EdgeId, GroupElement> volts;
  volts.emplace("l0", GroupElement(spec, {1}));
  volts.emplace("l1", GroupElement(spec, {2}));
  volts.emplace("l2", GroupElement(spec, {0}));
  VoltageGraph vg(g, spec, volts);
  for (auto _ : state) {
    DerivedGraph d = derivedGraph(vg);
    benchmark::DoNotOptimize(d);
  }
}
BENCHMARK(BM_DerivedGraph)->Arg(8)->Arg(32)->Arg(128);

void BM_FindCommonCovers(benchmark::State& state) {
  VoltageGraph a = stripQuotient1();
  VoltageGraph b = stripQuotient2();
  for (auto _ : state) {
    auto covers = findCommonCovers(a.graph(), b.graph());
    benchmark::DoNotOptimize(covers);
  }
}
BENCHMARK(BM_FindCommonCovers);

void BM_DecideIsomorphic(benchmark::State& state) {
  VoltageGraph a = stripQuotient1();
  VoltageGraph b = stripQuotient2();
  for (auto _ : state) {
    Verdict v = decideIsomorphism(a, b);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_DecideIsomorphic);

void BM_BruteForceIso(benchmark::State& state) {
  GroupSpec spec(0, {Int(state.range(0))});
  Multigraph g = wedgeOfLoops(2);
  std::map<EdgeId, GroupElement> volts;
  volts.emplace("l0", GroupElement(spec, {1}));
  volts.emplace("l1", GroupElement(spec, {0}));
  VoltageGraph vg(g, spec, volts);
  Multigraph d1 = derivedGraph(vg).graph;
  Multigraph d2 = d1;
  for (auto _ : state) {
    auto cert = oracle::bruteForceIso(d1, d2);
    benchmark::DoNotOptimize(cert);
  }
}
BENCHMARK(BM_BruteForceIso)->Arg(8)->Arg(16);

}  // namespace

BENCHMARK_MAIN();
