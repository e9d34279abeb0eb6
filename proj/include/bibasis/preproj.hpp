#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "bibasis/coord_ring.hpp"
#include "bibasis/matq.hpp"
#include "bibasis/polytope.hpp"
#include "bibasis/root_data.hpp"

namespace bibasis {

// Doubled quiver of a simply laced Cartan datum: one arrow each way per
// edge of the diagram, carrying a sign that is +1 on the chosen
// orientation (low vertex to high) and -1 on the reverses.
struct Arrow {
  int from = 0, to = 0;  // 1-based vertices
  int sign = 0;
  int rev = -1;          // index of the reversed arrow
};

struct QuiverData {
  CartanData cd;
  std::vector<Arrow> arrows;

  static QuiverData doubled(const CartanData& cd);

  std::vector<int> arrows_from(int v) const;
  std::vector<int> arrows_into(int v) const;
};

// Module over the preprojective algebra: one matrix per arrow, with rows
// indexed by the target vertex and columns by the source.  field is "Q"
// or "F<p>"; finite-field entries are residues stored in the Rat slots.
struct PPModule {
  QuiverData quiver;
  RootVector dims;
  std::vector<MatQ> mats;  // indexed like quiver.arrows
  std::string field = "Q";

  long total_dim() const;
  long field_char() const;  // 0 for Q
};

PPModule make_ppmodule(const CartanData& cd, const RootVector& dims,
                       const std::map<std::pair<int, int>, MatQ>& arrow_mats,
                       const std::string& field = "Q");

PPModule ppmodule_from_json(const std::string& text);
std::string ppmodule_to_json(const PPModule& m);

// sum over arrows into each vertex of sign * M_h * M_hbar; true iff it
// vanishes identically at every vertex
bool check_relation(const PPModule& m);

// Euler characteristic of the variety of composition series
// 0 = N^0 < N^1 < ... < N^p = M with N^k/N^{k-1} isomorphic to the simple
// at vertex seq[k-1] (bottom first).  Flags are counted over F_p for
// enough primes, the counting polynomial is Lagrange-interpolated and
// evaluated at q = 1, and two extra primes must agree with the fit;
// disagreement or a fractional value throws instead of being patched up.
long chi_flag(const PPModule& m, const Word& seq);

// brute-force flag count over one prime, enumerating subspace chains and
// testing stability directly; independent cross-check path
long long chi_flag_direct(const PPModule& m, const Word& seq, long p);

// The element of the coordinate ring whose iterated-derivative pairings
// against every word spelling the dimension vector equal the flag counts.
// Solved against the monomial basis of the graded piece; the pairing
// matrix must have full column rank and the system must be consistent.
MultiPoly xi(const CoordRing& ring, const PPModule& m);

// Dimension vectors of arrow-stable subspace tuples.  Rational modules
// are sampled over two small finite fields avoiding all entry numerators
// and denominators; the samples must agree, which fails when a minor
// degenerates at one of the primes.  An explicit finite-field module is
// enumerated over its own field.
std::vector<RootVector> submodule_dimvectors(const PPModule& m);

// convex hull of the submodule dimension vectors
LatticePolytope hn_polytope(const PPModule& m);

struct ModuleStats {
  std::vector<int> eps;       // socle: joint kernel of the outgoing arrows
  std::vector<int> eps_star;  // top: cokernel of the incoming arrows
};

ModuleStats epsilons(const PPModule& m);

// chi-weights of submodule dimension vectors of M[t]/t^n, with t acting
// as the blockwise shift.  Arrowless quivers use a closed-form per-prime
// count (submodule types of a torsion module), so larger n stay cheap;
// with arrows present the subspace tuples are enumerated directly and
// (total dim) * n <= 6 is enforced.
using LatticeDist = std::map<RootVector, long>;

LatticeDist grassmannian_lattice_dist(const PPModule& m, int n);

}  // namespace bibasis
