#pragma once

#include <map>

#include "bibasis/rational.hpp"
#include "bibasis/root_data.hpp"

namespace bibasis {

// Formal character of the irreducible V(lambda), weight -> multiplicity,
// computed by the Freudenthal multiplicity recursion over the dominant cone
// and expanded along Weyl orbits.
std::map<Weight, long long> character(const CartanData& cd, const Weight& lambda);

long long character_dim(const CartanData& cd, const Weight& lambda);

// V(lambda) (x) V(mu) = sum c^nu V(nu); returns nu -> c^nu with c^nu > 0.
std::map<Weight, long long> tensor_product_decomposition(const CartanData& cd,
                                                         const Weight& lambda,
                                                         const Weight& mu);

// Weyl orbit of an arbitrary weight.
std::vector<Weight> weyl_orbit(const CartanData& cd, const Weight& mu);

// unique dominant representative of the orbit
Weight dominant_representative(const CartanData& cd, const Weight& mu);

}  // namespace bibasis
