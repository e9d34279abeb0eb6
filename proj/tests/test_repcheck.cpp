#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "bibasis/char_oracle.hpp"
#include "bibasis/explicit_rep.hpp"
#include "oracles.hpp"

using namespace bibasis;

namespace {

std::vector<std::vector<Rat>> standard_basis(int dim) {
  std::vector<std::vector<Rat>> b(dim, std::vector<Rat>(dim, Rat(0)));
  for (int k = 0; k < dim; ++k) b[k][k] = 1;
  return b;
}

bool all_zero(const std::vector<Rat>& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

}  // namespace

TEST_CASE("sl2 monomial model") {
  auto a1 = CartanData::parse("A1");
  for (long n = 0; n <= 4; ++n) {
    auto V = irrep(a1, {n});
    CHECK(V.dim == n + 1);
    check_chevalley(V);
    // e = y d/dx on x^k y^{n-k}
    for (long k = 1; k <= n; ++k) CHECK(V.e[0](k - 1, k) == Rat(k));
    auto rep = verify_perfect(V, standard_basis(V.dim));
    CHECK(rep.pass);
    for (long k = 0; k <= n; ++k) CHECK(rep.eps[k][0] == k);
    for (const auto& c : rep.checks)
      if (c.epsilon > 0) CHECK(all_zero(c.residual));
  }
}

TEST_CASE("sl3 irreps match the character oracle") {
  auto a2 = CartanData::parse("A2");
  for (long a = 0; a <= 2; ++a)
    for (long b = 0; b <= 2; ++b) {
      Weight lam{a, b};
      auto V = irrep(a2, lam);
      check_chevalley(V);
      CHECK(V.dim == oracles::dim_irrep(a2, lam));
      std::map<Weight, long long> got;
      for (const auto& w : V.weights) ++got[w];
      CHECK(got == oracles::weyl_character(a2, lam));
    }
  // adjoint: dim 8, zero weight twice
  auto th = irrep(a2, {1, 1});
  CHECK(th.dim == 8);
  CHECK(weight_space_dims(th).at({0, 0}) == 2);
}

TEST_CASE("tensor products") {
  auto a2 = CartanData::parse("A2");
  auto V = irrep(a2, {1, 0});
  auto W = irrep(a2, {0, 1});
  auto T = tensor_rep(V, W);
  CHECK(T.dim == 9);
  check_chevalley(T);
  std::map<Weight, long long> got;
  for (const auto& w : T.weights) ++got[w];
  std::map<Weight, long long> expect;
  for (const auto& [nu, c] : oracles::tensor_decompose(a2, {1, 0}, {0, 1}))
    for (const auto& [w, m] : oracles::weyl_character(a2, nu)) expect[w] += c * m;
  CHECK(got == expect);
}

TEST_CASE("library character routine agrees with the division oracle") {
  for (const char* type : {"A2", "A3"}) {
    auto cd = CartanData::parse(type);
    long top = type == std::string("A2") ? 2 : 1;
    std::vector<Weight> lams;
    Weight cur(cd.rank, 0);
    while (true) {
      lams.push_back(cur);
      int k = 0;
      while (k < cd.rank && cur[k] == top) cur[k++] = 0;
      if (k == cd.rank) break;
      ++cur[k];
    }
    for (const auto& lam : lams) {
      CHECK(character(cd, lam) == oracles::weyl_character(cd, lam));
      CHECK(character_dim(cd, lam) == oracles::dim_irrep(cd, lam));
    }
  }
  auto a2 = CartanData::parse("A2");
  CHECK(tensor_product_decomposition(a2, {1, 1}, {1, 1}) ==
        oracles::tensor_decompose(a2, {1, 1}, {1, 1}));
  CHECK(tensor_product_decomposition(a2, {1, 1}, {1, 1}).at({1, 1}) == 2);
  CHECK(tensor_product_decomposition(a2, {2, 0}, {0, 2}) ==
        oracles::tensor_decompose(a2, {2, 0}, {0, 2}));
}

TEST_CASE("multiplicity spaces") {
  auto a2 = CartanData::parse("A2");
  Weight th{1, 1};
  CHECK(multiplicity_space_dim(a2, th, th, th) == 2);
  CHECK(multiplicity_space_dim(a2, {1, 0}, {0, 1}, {0, 0}) == 1);
  // mu = 0 detects highest weight vectors only
  auto V = irrep(a2, th);
  for (const auto& nu :
       {Weight{1, 1}, Weight{2, 0}, Weight{0, 0}, Weight{3, 0}, Weight{0, 3}})
    CHECK(multiplicity_space_dim(V, {0, 0}, nu) == (nu == th ? 1 : 0));

  // full grid versus the character oracle, plus the dimension sum rule
  std::map<Weight, ExplicitRep> cache;
  for (long a = 0; a <= 2; ++a)
    for (long b = 0; b <= 2; ++b) cache.emplace(Weight{a, b}, irrep(a2, {a, b}));
  for (const auto& [lam, Vl] : cache)
    for (const auto& [mu, Vm] : cache) {
      auto oracle = oracles::tensor_decompose(a2, lam, mu);
      long long total = 0;
      // candidate highest weights nu live in mu + (weights of V(lambda))
      std::map<Weight, int> seen;
      for (const auto& w : Vl.weights) {
        Weight nu = add_w(w, mu);
        if (!a2.dominant(nu) || seen.count(nu)) continue;
        seen[nu] = 1;
        long m = multiplicity_space_dim(Vl, mu, nu);
        auto it = oracle.find(nu);
        long long expect = it == oracle.end() ? 0 : it->second;
        CHECK(m == expect);
        total += m * oracles::dim_irrep(a2, nu);
      }
      CHECK(total == (long long)Vl.dim * Vm.dim);
      // swap symmetry
      for (const auto& [nu, c] : oracle)
        CHECK(multiplicity_space_dim(Vl, mu, nu) ==
              multiplicity_space_dim(cache.at(mu), lam, nu));
    }
}

TEST_CASE("perfect-basis verification on the adjoint") {
  auto adj = adjoint_rep_sl3();
  check_chevalley(adj);
  CHECK(weight_space_dims(adj) == weight_space_dims(irrep(CartanData::parse("A2"), {1, 1})));

  auto basis = force_sl3_adjoint_basis();
  auto rep = verify_perfect(adj, basis);
  CHECK(rep.pass);
  // the lower root vectors reach the Cartan: eps = 2 there
  CHECK(rep.eps[5] == std::vector<long>{2, 0});  // E21 slot
  CHECK(rep.eps[6] == std::vector<long>{0, 2});  // E32 slot

  // the standard basis is NOT perfect: H1, H2 have the wrong leading scalars
  auto bad = verify_perfect(adj, standard_basis(adj.dim));
  CHECK(!bad.pass);

  // non-weight vectors are rejected with a certificate
  auto mixed = standard_basis(adj.dim);
  mixed[0][3] = 1;  // E13 + H1
  auto r2 = verify_perfect(adj, mixed);
  CHECK(!r2.pass);
  CHECK(r2.checks.back().reason.find("weight") != std::string::npos);
}

TEST_CASE("adjoint forcing yields a = b = 1/3") {
  auto forced = force_sl3_adjoint();
  REQUIRE(forced.size() == 2);
  CHECK(forced[0] == std::vector<Rat>{rat(-1, 3), rat(-1, 3), rat(2, 3)});
  CHECK(forced[1] == std::vector<Rat>{rat(2, 3), rat(-1, 3), rat(-1, 3)});
}
