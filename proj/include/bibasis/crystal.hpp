#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bibasis/polytope.hpp"
#include "bibasis/root_data.hpp"

namespace bibasis {

// Lusztig parametrization of B(infinity): a nonnegative integer vector read
// against a reduced word for w0.  Only simply-laced types are supported; the
// rank-2 transition formulas for multiply-laced types are not implemented.
struct LusztigDatum {
  Word word;
  std::vector<long> data;
};

// An element of B(infinity), stored against the lexicographically least
// reduced word for w0 so that equality is plain vector equality.
struct BinfElement {
  std::vector<long> data;
  bool operator==(const BinfElement& o) const { return data == o.data; }
  bool operator!=(const BinfElement& o) const { return data != o.data; }
  bool operator<(const BinfElement& o) const { return data < o.data; }
};

bool simply_laced(const CartanData& cd);

// lexicographically least reduced word for w0 (rank <= 4)
const Word& reference_word(const CartanData& cd);

// change of reduced word by a chain of rank-2 braid moves
LusztigDatum transition(const CartanData& cd, const LusztigDatum& d, const Word& target);

BinfElement binf_zero(const CartanData& cd);
BinfElement binf_from_datum(const CartanData& cd, const LusztigDatum& d);
LusztigDatum binf_datum(const CartanData& cd, const BinfElement& b, const Word& w);

RootVector binf_nu(const CartanData& cd, const BinfElement& b);
Weight binf_wt(const CartanData& cd, const BinfElement& b);  // = -nu as a weight

long binf_epsilon(const CartanData& cd, const BinfElement& b, int i);
long binf_epsilon_star(const CartanData& cd, const BinfElement& b, int i);
BinfElement binf_f(const CartanData& cd, const BinfElement& b, int i);
std::optional<BinfElement> binf_e(const CartanData& cd, const BinfElement& b, int i);

// Kashiwara involution.  Implemented by reading the datum against the
// star-reversed word (i_m*, ..., i_1*) and reversing the vector, where i* is
// the diagram involution induced by w0.
BinfElement binf_star(const CartanData& cd, const BinfElement& b);

struct MVPolytope {
  LatticePolytope poly;
  RootVector nu;  // highest path point; 0 is always the lowest
};

// hull of the partial-sum path points over every reduced word for w0
MVPolytope mv_polytope(const CartanData& cd, const BinfElement& b);

// path corners for one reduced word: 0, c_1 b_1, c_1 b_1 + c_2 b_2, ...
std::vector<RootVector> mv_path_points(const CartanData& cd, const BinfElement& b,
                                       const Word& w);

struct CrystalGraph {
  long depth = 0;
  std::vector<BinfElement> nodes;  // sorted by (height, datum)
  std::map<std::vector<long>, int> index;
  std::vector<std::vector<int>> e_target;  // [node][i-1], -1 if undefined
  std::vector<std::vector<int>> f_target;  // [node][i-1], -1 if beyond depth
  std::vector<long> level_sizes;           // heights 0..depth
};

// all elements with height(nu) <= depth, closed under the lowering operators
CrystalGraph enumerate_binf(const CartanData& cd, long depth);

// node indices with epsilon*_i <= <alpha_i^vee, lambda> for all i
std::vector<int> b_lambda_nodes(const CartanData& cd, const CrystalGraph& g,
                                const Weight& lambda);

// Multiplicity of V(nu) in V(lambda) (x) V(mu): counts elements b with
// -wt(b) = lambda + mu - nu, eps_i(b) <= <alpha_i^vee, mu> and
// eps*_i(b) <= <alpha_i^vee, lambda>.  The graph must be deep enough to
// hold the full weight piece; the overload builds one of exactly that depth.
long lr_multiplicity(const CartanData& cd, const CrystalGraph& g, const Weight& lambda,
                     const Weight& mu, const Weight& nu);
long lr_multiplicity(const CartanData& cd, const Weight& lambda, const Weight& mu,
                     const Weight& nu);

std::string crystal_to_dot(const CartanData& cd, const CrystalGraph& g);
std::string crystal_to_json(const CartanData& cd, const CrystalGraph& g);

}  // namespace bibasis
