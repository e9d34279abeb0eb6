#pragma once

#include <vector>

#include "bibasis/coord_ring.hpp"
#include "bibasis/exp_sum.hpp"
#include "bibasis/polytope.hpp"
#include "bibasis/symbolic.hpp"

namespace bibasis {

// all words in which letter i appears nu[i-1] times
std::vector<Word> words_spelling(const CartanData& cd, const RootVector& nu);

// product over positions k of 1 / <alpha_{i_k} + ... + alpha_{i_p}>
RationalFn d_bar_seq(const CartanData& cd, const Word& w);

// Fourier transform of the simplex measure along the prefix-sum path of w;
// total mass 1/len(w)!
ExpSum ft_d_seq(const CartanData& cd, const Word& w);

// word sums weighted by the iterated-derivative pairings of f, which must
// be nonzero and weight-homogeneous
RationalFn d_bar(const CoordRing& ring, const MultiPoly& f);
ExpSum ft_d(const CoordRing& ring, const MultiPoly& f);

// Unitriangular matrix over the rational functions on the torus solving
// Ad_n(x0) = x0 + e, where x0 is the generic diagonal element (successive
// differences <alpha_i>) and e is the sum of the simple raising entries.
struct NxMatrix {
  int n = 0;
  std::vector<std::vector<RationalFn>> entries;
};

NxMatrix solve_nx(const CoordRing& ring);

// Ad_n(x0) - x0 - e, entrywise; identically zero exactly at the solution
std::vector<std::vector<RationalFn>> nx_residual(const CoordRing& ring,
                                                 const std::vector<std::vector<RationalFn>>& n);

// evaluation of f at the matrix point; a ring morphism equal to d_bar
RationalFn evaluate_at_nx(const CoordRing& ring, const NxMatrix& nx, const MultiPoly& f);

// evaluation at t^{-1} n t n^{-1}, whose (i,j) entry picks up the
// exponential of the entry weight; equal to ft_d
ExpSum evaluate_at_twist(const CoordRing& ring, const NxMatrix& nx, const MultiPoly& f);

// convex hull of the exponents present in the transform
LatticePolytope support_hull(const ExpSum& s);

}  // namespace bibasis
