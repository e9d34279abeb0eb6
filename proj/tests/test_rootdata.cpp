#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "bibasis/root_data.hpp"
#include "oracles.hpp"

using namespace bibasis;

TEST_CASE("cartan type parsing") {
  auto a2 = CartanData::parse("A2");
  CHECK(a2.rank == 2);
  CHECK(a2.a(1, 1) == 2);
  CHECK(a2.a(1, 2) == -1);

  auto d4 = CartanData::parse("D4");
  CHECK(d4.rank == 4);
  CHECK(d4.a(2, 3) == -1);
  CHECK(d4.a(3, 4) == 0);   // fork: 3 and 4 both hang off 2
  CHECK(d4.a(2, 4) == -1);

  auto b2 = CartanData::parse("B2");
  CHECK(b2.a(1, 2) == -2);
  CHECK(b2.a(2, 1) == -1);

  auto prod = CartanData::parse("A1xA1");
  CHECK(prod.rank == 2);
  CHECK(prod.a(1, 2) == 0);

  CHECK_THROWS(CartanData::parse("H3"));
  CHECK_THROWS(CartanData::parse("A0"));
  CHECK_THROWS(CartanData::parse("A9"));
  CHECK_THROWS(CartanData::parse("A2x"));
  CHECK_THROWS(CartanData::parse(""));
}

TEST_CASE("pairings") {
  auto a2 = CartanData::parse("A2");
  CHECK(a2.pairing(1, a2.fundamental_weight(1)) == 1);
  CHECK(a2.pairing(1, a2.root_to_weight(a2.simple_root(2))) == -1);
  CHECK(a2.pairing(2, a2.rho()) == 1);
  // linearity
  Weight lam = add_w(a2.fundamental_weight(1), a2.root_to_weight(a2.simple_root(2)));
  CHECK(a2.pairing(1, lam) == 0);
  CHECK_THROWS(a2.pairing(3, a2.rho()));
}

TEST_CASE("positive root counts") {
  CHECK(CartanData::parse("A2").positive_roots().size() == 3);
  CHECK(CartanData::parse("A3").positive_roots().size() == 6);
  CHECK(CartanData::parse("D4").positive_roots().size() == 12);
  CHECK(CartanData::parse("B2").positive_roots().size() == 4);
  CHECK(CartanData::parse("G2").positive_roots().size() == 6);
  CHECK(CartanData::parse("A1xA1").positive_roots().size() == 2);

  auto a2 = CartanData::parse("A2");
  std::vector<RootVector> expect = {{1, 0}, {0, 1}, {1, 1}};
  std::sort(expect.begin(), expect.end());
  auto roots = a2.positive_roots();
  std::sort(roots.begin(), roots.end());
  CHECK(roots == expect);
}

TEST_CASE("simple reflections permute the other positive roots") {
  for (const char* type : {"A2", "A3", "B2", "G2", "A1xA1", "D4"}) {
    auto cd = CartanData::parse(type);
    auto pos = cd.positive_roots();
    std::set<RootVector> pos_set(pos.begin(), pos.end());
    for (int i = 1; i <= cd.rank; ++i) {
      for (const auto& beta : pos) {
        if (beta == cd.simple_root(i)) continue;
        RootVector img = cd.reflect_root(i, beta);
        CHECK(pos_set.count(img) == 1);
      }
    }
  }
}

TEST_CASE("reduced words for w0") {
  auto a2 = CartanData::parse("A2");
  auto words = reduced_words_w0(a2);
  std::set<Word> ws(words.begin(), words.end());
  CHECK(ws == std::set<Word>{{1, 2, 1}, {2, 1, 2}});

  auto p = CartanData::parse("A1xA1");
  auto pw = reduced_words_w0(p);
  std::set<Word> pws(pw.begin(), pw.end());
  CHECK(pws == std::set<Word>{{1, 2}, {2, 1}});

  auto a3 = CartanData::parse("A3");
  auto w3 = reduced_words_w0(a3);
  CHECK(w3.size() == 16);
  std::set<Word> distinct(w3.begin(), w3.end());
  CHECK(distinct.size() == 16);
  for (const auto& w : w3) {
    CHECK(w.size() == 6);
    CHECK(is_reduced(a3, w));
  }

  CHECK_THROWS(reduced_words_w0(CartanData::parse("A5")));
}

TEST_CASE("word_roots") {
  auto a2 = CartanData::parse("A2");
  auto b = word_roots(a2, {1, 2, 1});
  CHECK(b == std::vector<RootVector>{{1, 0}, {1, 1}, {0, 1}});
  auto b2 = word_roots(a2, {2, 1, 2});
  CHECK(b2 == std::vector<RootVector>{{0, 1}, {1, 1}, {1, 0}});
  CHECK(word_roots(a2, {2}) == std::vector<RootVector>{{0, 1}});
  CHECK_THROWS(word_roots(a2, {1, 1}));

  // for every w0 word the beta_k exhaust the positive roots
  for (const char* type : {"A3", "B2", "G2"}) {
    auto cd = CartanData::parse(type);
    auto pos = cd.positive_roots();
    std::set<RootVector> pos_set(pos.begin(), pos.end());
    for (const auto& w : reduced_words_w0(cd)) {
      auto roots = word_roots(cd, w);
      std::set<RootVector> got(roots.begin(), roots.end());
      CHECK(got == pos_set);
      CHECK(roots.size() == pos.size());
    }
  }
}

TEST_CASE("braid neighbors and connectivity") {
  auto a2 = CartanData::parse("A2");
  CHECK(braid_neighbors(a2, {1, 2, 1}) == std::vector<Word>{{2, 1, 2}});

  auto p = CartanData::parse("A1xA1");
  CHECK(braid_neighbors(p, {1, 2}) == std::vector<Word>{{2, 1}});

  for (const char* type : {"A2", "A3", "B2", "G2", "A1xA1"}) {
    auto cd = CartanData::parse(type);
    auto words = reduced_words_w0(cd);
    std::set<Word> all(words.begin(), words.end());
    // every neighbor is again a reduced w0 word, and the move graph is connected
    std::set<Word> visited;
    std::vector<Word> queue{words.front()};
    visited.insert(words.front());
    while (!queue.empty()) {
      Word w = queue.back();
      queue.pop_back();
      for (const auto& nb : braid_neighbors(cd, w)) {
        CHECK(all.count(nb) == 1);
        if (visited.insert(nb).second) queue.push_back(nb);
      }
    }
    CHECK(visited.size() == all.size());
  }
}

TEST_CASE("w0 and the diagram involution") {
  auto a2 = CartanData::parse("A2");
  CHECK(a2.some_w0_word().size() == 3);
  CHECK(a2.star_index(1) == 2);
  CHECK(a2.star_index(2) == 1);
  CHECK(a2.w0_weight(a2.fundamental_weight(1)) == neg_w(a2.fundamental_weight(2)));

  auto a3 = CartanData::parse("A3");
  CHECK(a3.star_index(1) == 3);
  CHECK(a3.star_index(2) == 2);

  auto d4 = CartanData::parse("D4");
  for (int i = 1; i <= 4; ++i) CHECK(d4.star_index(i) == i);

  auto b2 = CartanData::parse("B2");
  for (int i = 1; i <= 2; ++i) CHECK(b2.star_index(i) == i);

  auto p = CartanData::parse("A1xA1");
  CHECK(p.star_index(1) == 1);
  CHECK(p.star_index(2) == 2);
}

TEST_CASE("kostant partition") {
  auto a2 = CartanData::parse("A2");
  CHECK(kostant_partition(a2, {1, 1}) == 2);
  CHECK(kostant_partition(a2, {0, 0}) == 1);
  CHECK(kostant_partition(a2, {2, 2}) == 3);
  CHECK(kostant_partition(a2, {1, 0}) == 1);
  CHECK_THROWS(kostant_partition(a2, {7, 7}));

  // cross-check against the product-formula oracle on a grid
  for (long a = 0; a <= 3; ++a)
    for (long b = 0; b <= 3; ++b)
      CHECK(kostant_partition(a2, {a, b}) == oracles::kostant_product_formula(a2, {a, b}));

  auto a3 = CartanData::parse("A3");
  for (long a = 0; a <= 2; ++a)
    for (long b = 0; b <= 2; ++b)
      for (long c = 0; c <= 2; ++c)
        CHECK(kostant_partition(a3, {a, b, c}) ==
              oracles::kostant_product_formula(a3, {a, b, c}));

  auto d4 = CartanData::parse("D4");
  CHECK(kostant_partition(d4, {1, 1, 1, 1}) ==
        oracles::kostant_product_formula(d4, {1, 1, 1, 1}));
  CHECK(kostant_partition(d4, {1, 2, 1, 1}) ==
        oracles::kostant_product_formula(d4, {1, 2, 1, 1}));
}

TEST_CASE("braid order table") {
  CHECK(CartanData::parse("A2").braid_order(1, 2) == 3);
  CHECK(CartanData::parse("B2").braid_order(1, 2) == 4);
  CHECK(CartanData::parse("G2").braid_order(1, 2) == 6);
  CHECK(CartanData::parse("A1xA1").braid_order(1, 2) == 2);
}

TEST_CASE("character oracle sanity") {
  auto a2 = CartanData::parse("A2");
  CHECK(oracles::dim_irrep(a2, {1, 0}) == 3);
  CHECK(oracles::dim_irrep(a2, {1, 1}) == 8);
  CHECK(oracles::weight_multiplicity(a2, {1, 1}, {0, 0}) == 2);
  auto dec = oracles::tensor_decompose(a2, {1, 0}, {0, 1});
  CHECK(dec[Weight{1, 1}] == 1);
  CHECK(dec[Weight{0, 0}] == 1);
  CHECK(dec.size() == 2);

  // 8 (x) 8 = 27 + 10 + 10bar + 8 + 8 + 1
  auto adj = oracles::tensor_decompose(a2, {1, 1}, {1, 1});
  CHECK(adj[Weight{1, 1}] == 2);
  CHECK(adj[Weight{2, 2}] == 1);
  CHECK(adj[Weight{3, 0}] == 1);
  CHECK(adj[Weight{0, 3}] == 1);
  CHECK(adj[Weight{0, 0}] == 1);
}
