#pragma once

#include <string>
#include <vector>

#include "bibasis/matq.hpp"
#include "bibasis/root_data.hpp"

namespace bibasis {

// Feasibility of {x >= 0 : Ax = b}, exact phase-1 simplex with Bland's rule.
bool lp_feasible(const MatQ& A, const std::vector<Rat>& b);

// Convex hull of lattice points in root coordinates, ambient dim <= 4.
// Canonical form: vertex list sorted lexicographically, extreme points only,
// so equality of polytopes is equality of vertex lists.
class LatticePolytope {
 public:
  static LatticePolytope hull(const std::vector<RootVector>& points);

  const std::vector<RootVector>& vertices() const { return vertices_; }
  int ambient_dim() const { return dim_; }

  bool operator==(const LatticePolytope& o) const {
    return dim_ == o.dim_ && vertices_ == o.vertices_;
  }
  bool operator!=(const LatticePolytope& o) const { return !(*this == o); }

  bool contains(const RootVector& x) const;
  bool contains_rational(const std::vector<Rat>& x) const;

  // max of phi over the polytope (= max over vertices)
  Rat support(const std::vector<Rat>& phi) const;

  std::string to_json() const;

 private:
  int dim_ = 0;
  std::vector<RootVector> vertices_;
};

bool point_in_hull(const std::vector<RootVector>& points, const std::vector<Rat>& x);

}  // namespace bibasis
