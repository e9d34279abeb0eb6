#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "bibasis/polytope.hpp"

using namespace bibasis;

TEST_CASE("hull basics") {
  auto pt = LatticePolytope::hull({{0, 0}});
  CHECK(pt.vertices() == std::vector<RootVector>{{0, 0}});

  // triangle 0, a1, a1+a2 in root coordinates
  auto tri = LatticePolytope::hull({{0, 0}, {1, 0}, {1, 1}});
  CHECK(tri.vertices() == std::vector<RootVector>{{0, 0}, {1, 0}, {1, 1}});

  auto seg = LatticePolytope::hull({{0, 0}, {1, 0}, {2, 0}});
  CHECK(seg.vertices() == std::vector<RootVector>{{0, 0}, {2, 0}});

  CHECK_THROWS(LatticePolytope::hull({}));
  CHECK_THROWS(LatticePolytope::hull({{0, 0, 0, 0, 0}}));
}

TEST_CASE("hull kills interior and duplicate points") {
  auto sq = LatticePolytope::hull(
      {{0, 0}, {2, 0}, {0, 2}, {2, 2}, {1, 1}, {1, 0}, {2, 2}});
  CHECK(sq.vertices() == std::vector<RootVector>{{0, 0}, {0, 2}, {2, 0}, {2, 2}});
}

TEST_CASE("equality is canonical") {
  auto a = LatticePolytope::hull({{0, 0}, {1, 0}, {1, 1}});
  auto b = LatticePolytope::hull({{1, 1}, {0, 0}, {1, 0}, {1, 0}});
  CHECK(a == b);
  auto c = LatticePolytope::hull({{0, 0}, {1, 0}, {0, 1}});
  CHECK(a != c);
}

TEST_CASE("contains") {
  auto tri = LatticePolytope::hull({{0, 0}, {1, 0}, {1, 1}});
  CHECK(tri.contains({1, 0}));
  CHECK(tri.contains({0, 0}));
  CHECK(!tri.contains({0, 1}));
  CHECK(tri.contains_rational({rat(1, 2), rat(1, 4)}));
  CHECK(!tri.contains_rational({rat(1, 2), rat(3, 4)}));
}

TEST_CASE("support function") {
  auto tri = LatticePolytope::hull({{0, 0}, {1, 0}, {1, 1}});
  CHECK(tri.support({Rat(1), Rat(0)}) == 1);
  CHECK(tri.support({Rat(0), Rat(1)}) == 1);
  CHECK(tri.support({Rat(-1), Rat(0)}) == 0);
  // the hexagon with these vertices has width 5 in the first root direction
  auto hex = LatticePolytope::hull(
      {{0, 0}, {3, 0}, {5, 2}, {5, 3}, {1, 3}, {0, 2}});
  CHECK(hex.vertices().size() == 6);
  CHECK(hex.support({Rat(1), Rat(0)}) == 5);
}

TEST_CASE("hull properties on random point sets") {
  std::mt19937 rng(424242);
  std::uniform_int_distribution<int> coord(-3, 3);
  std::uniform_int_distribution<int> count(1, 9);
  for (int dim = 2; dim <= 4; ++dim) {
    for (int trial = 0; trial < 12; ++trial) {
      std::vector<RootVector> pts;
      int n = count(rng);
      for (int k = 0; k < n; ++k) {
        RootVector p(dim);
        for (int i = 0; i < dim; ++i) p[i] = coord(rng);
        pts.push_back(p);
      }
      auto P = LatticePolytope::hull(pts);
      // idempotent
      CHECK(LatticePolytope::hull(P.vertices()) == P);
      // contains all inputs
      for (const auto& p : pts) CHECK(P.contains(p));
      // support is sublinear
      std::vector<Rat> phi(dim), psi(dim), sum(dim);
      for (int i = 0; i < dim; ++i) {
        phi[i] = Rat(coord(rng));
        psi[i] = Rat(coord(rng));
        sum[i] = phi[i] + psi[i];
      }
      CHECK(P.support(sum) <= P.support(phi) + P.support(psi));
    }
  }
}
