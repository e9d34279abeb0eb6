#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bibasis/crystal.hpp"
#include "bibasis/multi_poly.hpp"
#include "bibasis/root_data.hpp"

namespace bibasis {

// Coordinate ring of the upper unitriangular subgroup of SL_n, 2 <= n <= 4.
// Variables are the strict upper matrix entries x_{ij}, graded by
// wt(x_{ij}) = alpha_i + ... + alpha_{j-1}.  For n = 3 the printing names
// are x = x_{12}, y = x_{23}, z = x_{13}.
class CoordRing {
 public:
  static CoordRing make(int n);

  int n() const { return n_; }
  int nvars() const { return nvars_; }
  const CartanData& cartan() const { return cd_; }
  const std::vector<std::string>& names() const { return names_; }

  int var_index(int i, int j) const;            // 1-based, i < j
  std::pair<int, int> var_pair(int k) const;    // inverse of var_index
  const RootVector& var_weight(int k) const { return var_weights_[k]; }

  MultiPoly zero() const { return MultiPoly(nvars_); }
  MultiPoly one() const { return MultiPoly::constant(nvars_, Rat(1)); }
  MultiPoly coordinate(int i, int j) const;

  bool is_homogeneous(const MultiPoly& f) const;
  // weight of a nonzero homogeneous element; constants have weight 0
  RootVector weight(const MultiPoly& f) const;

  // derivative at s = 0 of f(exp(s e_i) g), resp. f(g exp(s e_i))
  MultiPoly e_left(int i, const MultiPoly& f) const;
  MultiPoly e_right(int i, const MultiPoly& f) const;

  // nilpotence degree: largest k with e^k f != 0 (f must be nonzero)
  int eps_left(int i, const MultiPoly& f) const;
  int eps_right(int i, const MultiPoly& f) const;

  // apply e_left along seq (first entry first), then evaluate at the identity
  Rat pairing(const Word& seq, const MultiPoly& f) const;

  // all monomial exponent vectors of the given weight
  std::vector<MultiPoly::Exponents> weight_monomials(const RootVector& nu) const;

  // pullback along g -> g^{-1}; an involution exchanging the two actions
  MultiPoly star(const MultiPoly& f) const;

 private:
  int n_ = 0;
  int nvars_ = 0;
  CartanData cd_;
  std::vector<std::string> names_;
  std::vector<RootVector> var_weights_;
  std::vector<std::vector<int>> var_of_pair_;   // [i][j], -1 off range
  std::vector<MultiPoly> inverse_entries_;      // strict upper entries of g^{-1}
};

struct BasisElement {
  MultiPoly f;
  RootVector nu;
  std::vector<int> eps;           // per i, left action
  std::vector<int> eps_star;      // per i, right action
  std::vector<int> e_link;        // index of the leading partner, -1 if eps = 0
  std::vector<int> e_star_link;
};

// A candidate biperfect family, truncated at a weight height.  Elements are
// sorted by (height, weight, graded-lex leading term) so indices are stable.
struct BasisFamily {
  CoordRing ring;
  int max_height = 0;
  std::vector<BasisElement> elems;
  std::map<RootVector, std::vector<int>> by_weight;

  int index_of(const MultiPoly& f) const;       // -1 if absent
};

BasisFamily make_family(const CoordRing& ring, const std::vector<MultiPoly>& polys);

// the closed-form families; elements of weight height <= max_height
BasisFamily sl2_family(int max_height);
BasisFamily sl3_family(int max_height);

struct PerfectFailure {
  int elem;            // index into elems, -1 for piece-level failures
  char side;           // 'L', 'R', or '-'
  int i;               // root index, 0 for piece-level failures
  RootVector nu;
  std::string reason;
};

struct BiperfectReport {
  bool pass = true;
  std::vector<PerfectFailure> failures;
};

// Checks, per weight piece of height <= max_height: spanning, presence of 1,
// weight homogeneity, kernel-filtration compatibility of the eps levels, and
// the expansion axiom e_i b = eps_i(b) * partner + (residual killed by
// e_i^{eps_i(b)-1}), on both sides.
BiperfectReport verify_biperfect(const BasisFamily& fam, int max_height);

struct ExtractedCrystal {
  std::vector<RootVector> nu;
  std::vector<std::vector<int>> eps, eps_star;
  std::vector<std::vector<int>> e_link, e_star_link;
};

// leading-term crystal of a verified family
ExtractedCrystal extract_crystal(const BasisFamily& fam, int height);

struct BinfMatch {
  bool ok = false;          // a (wt, eps, eps*)-respecting bijection exists
  bool unique = false;
  std::vector<BinfElement> image;   // per family element, when ok
  std::string reason;
};

BinfMatch match_binf(const BasisFamily& fam, int height);

// One slot of the weight-piece constraint solve: an affine solution space
// for the coefficient vector of a basis element with the given crystal
// signature.  dim = dimension of the solution space (-1 when inconsistent).
struct SlotSolution {
  std::vector<int> eps, eps_star;
  int dim = -1;
  MultiPoly witness;
};

struct UniquenessPiece {
  RootVector nu;
  long families;            // number of valid families for the piece, -1 = infinite
  std::vector<SlotSolution> slots;
};

struct UniquenessResult {
  long family_count = 0;    // -1 = infinite
  std::vector<UniquenessPiece> pieces;
  std::optional<BasisFamily> family;   // populated when family_count == 1
};

// Weight-by-weight search for all biperfect families of C[N] for SL3 up to
// max_height.  Candidate eps assignments are constrained by the kernel
// filtration dimensions; the expansion axiom is imposed as an exact affine
// system against the (already determined) lower pieces.  With
// require_right = false only the left action is constrained.
UniquenessResult uniqueness_search(int max_height, bool require_right = true);

struct PsiImage {
  std::vector<int> elems;   // family indices with eps*_i <= <alpha_i^vee, lambda>
  bool dims_ok = false;     // per-piece dimension match with the joint kernel
};

PsiImage psi_image_basis(const BasisFamily& fam, const Weight& lambda, int max_height);

std::string family_to_json(const BasisFamily& fam);

}  // namespace bibasis

