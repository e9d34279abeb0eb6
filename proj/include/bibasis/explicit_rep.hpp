#pragma once

#include <string>
#include <vector>

#include "bibasis/matq.hpp"
#include "bibasis/root_data.hpp"

namespace bibasis {

// Finite-dimensional representation with explicit exact matrices for the
// Chevalley generators and a weight basis.
struct ExplicitRep {
  CartanData cd;
  int dim = 0;
  std::vector<MatQ> e, f, h;    // one matrix per simple root, 1-based index i -> [i-1]
  std::vector<Weight> weights;  // weight of each basis vector
};

// Irreducible V(lambda) for types A1 and A2.  A1 uses the monomial model on
// homogeneous polynomials of degree n (e acts as y d/dx); A2 is generated
// from the top vector inside a tensor power of the 3-dimensional fundamental
// representations by exact saturation.
ExplicitRep irrep(const CartanData& cd, const Weight& lambda);

ExplicitRep tensor_rep(const ExplicitRep& V, const ExplicitRep& W);

// Throws std::logic_error describing the first violated relation:
// [h_i,h_j] = 0, [h_i,e_j] = a_ij e_j, [h_i,f_j] = -a_ij f_j,
// [e_i,f_j] = delta_ij h_i, Serre relations, h_i diagonal on the weight
// basis, e_i raising weight by alpha_i.
void check_chevalley(const ExplicitRep& V);

std::map<Weight, int> weight_space_dims(const ExplicitRep& V);

// dim of the intersection of ker e_i^{<alpha_i^vee,mu>+1} with the weight
// space V(lambda)_{nu-mu}; 0 when nu-mu is not a weight of V(lambda).
long multiplicity_space_dim(const CartanData& cd, const Weight& lambda,
                            const Weight& mu, const Weight& nu);
// same, with V(lambda) already built (callers looping over mu/nu)
long multiplicity_space_dim(const ExplicitRep& Vlambda, const Weight& mu,
                            const Weight& nu);

struct PerfectCheck {
  int vector_index = -1;
  int i = 0;
  long epsilon = 0;
  int partner = -1;           // basis index of the leading partner, -1 if eps = 0
  std::vector<Rat> residual;  // e_i b - eps * partner, empty when eps = 0
  bool pass = false;
  std::string reason;
};

struct PerfectBasisReport {
  bool pass = false;
  std::vector<std::vector<long>> eps;  // [vector][i-1]
  std::vector<PerfectCheck> checks;
};

// Checks that `basis` is a weight basis of V and that every vector satisfies
// e_i b = eps_i(b) * (partner basis vector) + v with e_i^{eps_i(b)-1} v = 0.
PerfectBasisReport verify_perfect(const ExplicitRep& V,
                                  const std::vector<std::vector<Rat>>& basis);

// The adjoint representation of sl3 in the fixed basis
// (E13, E12, E23, H1, H2, E21, E32, E31).
ExplicitRep adjoint_rep_sl3();

// Solves the perfect-basis constraints for the sl3 adjoint representation
// starting from the highest weight vector E13: kernel compatibility pins the
// two zero-weight lines, the leading-term equations pin every scalar.
// Returns the diagonal entries of the two forced Cartan vectors, the one
// annihilated by e_1 first.
std::vector<std::vector<Rat>> force_sl3_adjoint();

// The full forced basis (8 vectors) in the coordinates of adjoint_rep_sl3().
std::vector<std::vector<Rat>> force_sl3_adjoint_basis();

}  // namespace bibasis
