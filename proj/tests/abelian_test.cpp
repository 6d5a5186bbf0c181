#include <doctest.h>

#include "support.hpp"
#include "voltlift/abelian.hpp"

using namespace voltlift;
using testsupport::el;

// Coordinate layout everywhere: free coordinates first, then one torsion
// coordinate per modulus. For Z/4 (+) Z with rank 1 and moduli [4] an
// element is [free, mod4].

TEST_CASE("add, neg, zero in Z/4 (+) Z") {
  GroupSpec spec(1, {4});
  // mod-4 parts 3 and 2 sum to 1; free parts 1 and -1 cancel.
  GroupElement a = el(spec, {1, 3});
  GroupElement b = el(spec, {-1, 2});
  CHECK(add(a, b) == el(spec, {0, 1}));
  CHECK(add(a, zero(spec)) == a);
  CHECK(add(a, neg(a)).isZero());
}

TEST_CASE("torsion coordinates are reduced on construction") {
  GroupSpec spec(1, {4});
  CHECK(el(spec, {1, 5}) == el(spec, {1, 1}));
  CHECK(el(spec, {0, -1}) == el(spec, {0, 3}));
}

TEST_CASE("spec mismatch is rejected") {
  GroupSpec a(1, {});
  GroupSpec b(0, {2});
  CHECK_THROWS_AS(add(el(a, {1}), el(b, {1})), SpecMismatchError);
  CHECK_THROWS_AS(GroupSpec(0, {1}), ValidationError);
  CHECK_THROWS_AS(GroupSpec(-1, {}), ValidationError);
}

TEST_CASE("hermiteNormalForm") {
  IntegerLattice l = hermiteNormalForm({{2, 4}, {1, 2}});
  CHECK(l.basis() == IntMatrix{{1, 2}});

  CHECK(hermiteNormalForm(IntMatrix{}).basis().empty());
  CHECK(hermiteNormalForm(2, IntMatrix{}).basis().empty());

  IntegerLattice id2 = hermiteNormalForm({{1, 0}, {0, 1}});
  CHECK(id2.basis() == IntMatrix{{1, 0}, {0, 1}});
}

TEST_CASE("HNF idempotence on random lattices") {
  testsupport::Rng rng(99);
  for (int iter = 0; iter < 50; ++iter) {
    int n = rng.range(1, 4);
    int m = rng.range(0, 5);
    IntMatrix rows(m, IntVector(n));
    for (auto& row : rows)
      for (auto& x : row) x = rng.range(-6, 6);
    IntegerLattice l = hermiteNormalForm(static_cast<std::size_t>(n), rows);
    IntegerLattice again =
        hermiteNormalForm(static_cast<std::size_t>(n), l.basis());
    CHECK(l == again);
  }
}

TEST_CASE("relationLattice examples") {
  GroupSpec z(1, {});
  CHECK(relationLattice({el(z, {1}), el(z, {-1})}).basis() ==
        IntMatrix{{1, 1}});
  CHECK(relationLattice({el(z, {1}), el(z, {2})}).basis() ==
        IntMatrix{{2, -1}});
  GroupSpec z3(0, {3});
  CHECK(relationLattice({el(z3, {1})}).basis() == IntMatrix{{3}});
}

TEST_CASE("relationLattice agrees with direct evaluation on a small box") {
  testsupport::Rng rng(4242);
  for (int iter = 0; iter < 30; ++iter) {
    GroupSpec spec(rng.range(0, 1), iter % 2 ? std::vector<Int>{Int(rng.range(2, 5))}
                                             : std::vector<Int>{});
    int m = rng.range(1, 3);
    std::vector<GroupElement> gens;
    for (int i = 0; i < m; ++i)
      gens.push_back(testsupport::randomElement(rng, spec));
    IntegerLattice lat = relationLattice(gens);

    std::vector<Int> x(m, -3);
    while (true) {
      GroupElement sum = zero(spec);
      for (int i = 0; i < m; ++i) {
        Int c = x[i];
        GroupElement term = gens[i];
        GroupElement acc = zero(spec);
        for (Int k = 0; k < abs(c); ++k) acc = add(acc, term);
        if (c < 0) acc = neg(acc);
        sum = add(sum, acc);
      }
      CHECK(lat.contains(IntVector(x.begin(), x.end())) == sum.isZero());
      int i = 0;
      for (; i < m; ++i) {
        if (x[i] < 3) {
          ++x[i];
          break;
        }
        x[i] = -3;
      }
      if (i == m) break;
    }
  }
}

TEST_CASE("generatorMapExtendsToIso") {
  GroupSpec z(1, {});
  std::vector<GroupElement> a{el(z, {1}), el(z, {-1})};
  std::vector<GroupElement> b{el(z, {1}), el(z, {2})};
  std::vector<GroupElement> c{el(z, {2}), el(z, {-2})};
  CHECK(generatorMapExtendsToIso(a, a));
  CHECK_FALSE(generatorMapExtendsToIso(a, b));
  CHECK(generatorMapExtendsToIso(a, c));  // z -> 2z, 1 -> 2
  CHECK_THROWS_AS(generatorMapExtendsToIso(a, {el(z, {1})}),
                  LengthMismatchError);
}

TEST_CASE("generatorMapExtendsToIso is reflexive, symmetric, transitive-ish") {
  testsupport::Rng rng(11);
  for (int iter = 0; iter < 40; ++iter) {
    GroupSpec spec = testsupport::randomFiniteSpec(rng);
    int m = rng.range(1, 3);
    auto mk = [&] {
      std::vector<GroupElement> v;
      for (int i = 0; i < m; ++i)
        v.push_back(testsupport::randomElement(rng, spec));
      return v;
    };
    auto a = mk(), b = mk(), c = mk();
    CHECK(generatorMapExtendsToIso(a, a));
    CHECK(generatorMapExtendsToIso(a, b) == generatorMapExtendsToIso(b, a));
    if (generatorMapExtendsToIso(a, b) && generatorMapExtendsToIso(b, c))
      CHECK(generatorMapExtendsToIso(a, c));
  }
}

TEST_CASE("subgroupIntersection in Z4 (+) Z") {
  GroupSpec spec(1, {4});
  // <(mod4:1, free:0), (mod4:0, free:3)> meet <(mod4:2, free:0), (mod4:0, free:1)>
  std::vector<GroupElement> A{el(spec, {0, 1}), el(spec, {3, 0})};
  std::vector<GroupElement> B{el(spec, {0, 2}), el(spec, {1, 0})};
  std::vector<GroupElement> expected{el(spec, {0, 2}), el(spec, {3, 0})};
  std::vector<GroupElement> got = subgroupIntersection(A, B);
  for (const GroupElement& g : got) {
    CHECK(isMember(g, A));
    CHECK(isMember(g, B));
    CHECK(isMember(g, expected));
  }
  for (const GroupElement& g : expected) CHECK(isMember(g, got));
}

TEST_CASE("subgroupIntersection in Z") {
  GroupSpec z(1, {});
  std::vector<GroupElement> got =
      subgroupIntersection({el(z, {2})}, {el(z, {3})});
  REQUIRE(got.size() == 1);
  CHECK((got[0] == el(z, {6}) || got[0] == el(z, {-6})));
}

TEST_CASE("subgroupIntersection idempotence") {
  testsupport::Rng rng(5150);
  for (int iter = 0; iter < 25; ++iter) {
    GroupSpec spec = testsupport::randomFiniteSpec(rng);
    std::vector<GroupElement> A;
    for (int i = 0, n = rng.range(1, 3); i < n; ++i)
      A.push_back(testsupport::randomElement(rng, spec));
    std::vector<GroupElement> meet = subgroupIntersection(A, A);
    for (const GroupElement& g : meet) CHECK(isMember(g, A));
    for (const GroupElement& g : A) CHECK(isMember(g, meet));
  }
}

TEST_CASE("intersection members found by exhaustive search lie in the meet") {
  GroupSpec spec(0, {4, 2});
  std::vector<GroupElement> A{el(spec, {2, 0}), el(spec, {0, 1})};
  std::vector<GroupElement> B{el(spec, {1, 1})};
  std::vector<GroupElement> meet = subgroupIntersection(A, B);
  for (const GroupElement& g : enumerateFullGroup(spec)) {
    if (isMember(g, A) && isMember(g, B)) CHECK(isMember(g, meet));
  }
}

TEST_CASE("isMember and subgroupIndex") {
  GroupSpec z4(0, {4});
  CHECK(subgroupIndex({el(z4, {2})}, z4) == Int(2));
  CHECK(isMember(el(z4, {2}), {el(z4, {2})}));
  CHECK_FALSE(isMember(el(z4, {1}), {el(z4, {2})}));

  GroupSpec spec(1, {4});
  CHECK(subgroupIndex({el(spec, {0, 2}), el(spec, {3, 0})}, spec) == Int(6));

  GroupSpec z(1, {});
  CHECK(subgroupIndex({el(z, {1})}, z) == Int(1));
  CHECK(subgroupIndex({}, z) == std::nullopt);  // trivial subgroup of Z
}

TEST_CASE("enumerateSubgroup and enumerateFullGroup") {
  GroupSpec z4(0, {4});
  CHECK(enumerateSubgroup(z4, {el(z4, {2})}).size() == 2);
  CHECK(enumerateFullGroup(z4).size() == 4);
  GroupSpec trivial(0, {});
  CHECK(enumerateFullGroup(trivial).size() == 1);
  GroupSpec z(1, {});
  CHECK_THROWS_AS(enumerateSubgroup(z, {el(z, {1})}), InfiniteGroupError);
  CHECK_THROWS_AS(enumerateFullGroup(z), InfiniteGroupError);
}
