#pragma once

#include <vector>

#include "bibasis/exp_sum.hpp"
#include "bibasis/root_data.hpp"

namespace bibasis {

// The t-coordinates t_1..t_r are dual to the fundamental weights, so a weight
// with omega-coordinates (b_1..b_r) has linear form b_1 t_1 + ... + b_r t_r
// and <alpha_i, .> is the i-th row of the Cartan matrix in these coordinates.
MultiPoly linear_form(const CartanData& cd, const Weight& beta);
MultiPoly linear_form_root(const CartanData& cd, const RootVector& nu);

// Fourier transform of the pushforward of Lebesgue measure on the ordered
// p-simplex under t |-> beta_0 + sum t_k (beta_k - beta_{k-1}); equivalently
// the divided difference [z_0..z_p] exp with z_k = <beta_k, x>.  Confluent
// (repeated) nodes are handled exactly.  Total mass is 1/p!.
ExpSum ft_simplex(const CartanData& cd, const std::vector<Weight>& nodes);

// Taylor coefficients (orders 0..order) of s |-> value of the ExpSum at x =
// s*dir.  The individual coefficient functions may have poles at s = 0; they
// must cancel in the sum, otherwise PoleError.  dir must avoid the zero sets
// of all denominator factors.
std::vector<Rat> taylor_along_line(const ExpSum& s, const std::vector<Rat>& dir,
                                   int order);

}  // namespace bibasis
