#include "bibasis/polytope.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace bibasis {

bool lp_feasible(const MatQ& A, const std::vector<Rat>& b) {
  const std::size_t m = A.rows(), n = A.cols();
  if (b.size() != m) throw std::invalid_argument("lp_feasible: shape mismatch");
  // tableau [A | I | rhs] with rhs >= 0; artificial vars n..n+m-1
  std::vector<std::vector<Rat>> T(m, std::vector<Rat>(n + m + 1, Rat(0)));
  for (std::size_t i = 0; i < m; ++i) {
    int sign = b[i] < 0 ? -1 : 1;
    for (std::size_t j = 0; j < n; ++j) T[i][j] = A(i, j) * sign;
    T[i][n + i] = 1;
    T[i][n + m] = b[i] * sign;
  }
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;
  auto cost = [&](std::size_t j) { return j >= n ? Rat(1) : Rat(0); };
  while (true) {
    // reduced costs under the phase-1 objective
    std::size_t enter = n + m;
    for (std::size_t j = 0; j < n + m; ++j) {
      Rat zj = 0;
      for (std::size_t i = 0; i < m; ++i)
        if (cost(basis[i]) != 0) zj += T[i][j];
      if (cost(j) - zj < 0) {
        enter = j;
        break;  // Bland: smallest index
      }
    }
    if (enter == n + m) break;  // optimal
    std::size_t leave = m;
    Rat best_ratio = 0;
    for (std::size_t i = 0; i < m; ++i) {
      if (T[i][enter] <= 0) continue;
      Rat ratio = T[i][n + m] / T[i][enter];
      if (leave == m || ratio < best_ratio ||
          (ratio == best_ratio && basis[i] < basis[leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave == m) throw std::logic_error("phase-1 LP unbounded");
    // pivot
    Rat piv = T[leave][enter];
    for (auto& v : T[leave]) v /= piv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave || T[i][enter] == 0) continue;
      Rat f = T[i][enter];
      for (std::size_t j = 0; j <= n + m; ++j) T[i][j] -= f * T[leave][j];
    }
    basis[leave] = enter;
  }
  Rat obj = 0;
  for (std::size_t i = 0; i < m; ++i)
    if (cost(basis[i]) != 0) obj += T[i][n + m];
  return obj == 0;
}

bool point_in_hull(const std::vector<RootVector>& points, const std::vector<Rat>& x) {
  if (points.empty()) return false;
  const std::size_t d = x.size();
  // lambda >= 0, sum lambda = 1, sum lambda p = x
  MatQ A(d + 1, points.size());
  std::vector<Rat> b(d + 1);
  for (std::size_t j = 0; j < points.size(); ++j) {
    for (std::size_t i = 0; i < d; ++i) A(i, j) = Rat(points[j][i]);
    A(d, j) = 1;
  }
  for (std::size_t i = 0; i < d; ++i) b[i] = x[i];
  b[d] = 1;
  return lp_feasible(A, b);
}

LatticePolytope LatticePolytope::hull(const std::vector<RootVector>& points) {
  if (points.empty()) throw std::invalid_argument("hull of empty point set");
  const int d = (int)points[0].size();
  if (d > 4) throw std::invalid_argument("ambient dimension > 4 not supported");
  for (const auto& p : points)
    if ((int)p.size() != d) throw std::invalid_argument("mixed ambient dimensions");
  std::set<RootVector> uniq(points.begin(), points.end());
  std::vector<RootVector> verts(uniq.begin(), uniq.end());
  // drop any point inside the hull of the others until stable
  bool removed = true;
  while (removed) {
    removed = false;
    for (std::size_t k = 0; k < verts.size(); ++k) {
      std::vector<RootVector> others;
      others.reserve(verts.size() - 1);
      for (std::size_t j = 0; j < verts.size(); ++j)
        if (j != k) others.push_back(verts[j]);
      if (others.empty()) break;
      std::vector<Rat> x(verts[k].begin(), verts[k].end());
      if (point_in_hull(others, x)) {
        verts.erase(verts.begin() + k);
        removed = true;
        break;
      }
    }
  }
  LatticePolytope P;
  P.dim_ = d;
  std::sort(verts.begin(), verts.end());
  P.vertices_ = std::move(verts);
  return P;
}

bool LatticePolytope::contains(const RootVector& x) const {
  std::vector<Rat> xr(x.begin(), x.end());
  return contains_rational(xr);
}

bool LatticePolytope::contains_rational(const std::vector<Rat>& x) const {
  if ((int)x.size() != dim_) throw std::invalid_argument("dimension mismatch");
  return point_in_hull(vertices_, x);
}

Rat LatticePolytope::support(const std::vector<Rat>& phi) const {
  if ((int)phi.size() != dim_) throw std::invalid_argument("dimension mismatch");
  bool first = true;
  Rat best = 0;
  for (const auto& v : vertices_) {
    Rat val = 0;
    for (int i = 0; i < dim_; ++i) val += phi[i] * Rat(v[i]);
    if (first || val > best) best = val;
    first = false;
  }
  return best;
}

std::string LatticePolytope::to_json() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t k = 0; k < vertices_.size(); ++k) {
    if (k) os << ",";
    os << "[";
    for (int i = 0; i < dim_; ++i) {
      if (i) os << ",";
      os << vertices_[k][i];
    }
    os << "]";
  }
  os << "]";
  return os.str();
}

}  // namespace bibasis
