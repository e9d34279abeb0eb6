#include "bibasis/measures.hpp"

#include <algorithm>
#include <stdexcept>

namespace bibasis {

std::vector<Word> words_spelling(const CartanData& cd, const RootVector& nu) {
  if ((int)nu.size() != cd.rank) throw std::invalid_argument("weight has wrong rank");
  if (!is_nonneg(nu)) throw std::invalid_argument("weight must be nonnegative");
  Word w;
  for (int i = 1; i <= cd.rank; ++i)
    for (long k = 0; k < nu[i - 1]; ++k) w.push_back(i);
  std::vector<Word> out;
  do {
    out.push_back(w);
  } while (std::next_permutation(w.begin(), w.end()));
  return out;
}

RationalFn d_bar_seq(const CartanData& cd, const Word& w) {
  std::vector<MultiPoly> den;
  RootVector suffix = cd.zero_root();
  for (std::size_t k = w.size(); k-- > 0;) {
    if (w[k] < 1 || w[k] > cd.rank) throw std::invalid_argument("bad letter in word");
    suffix[w[k] - 1] += 1;
    den.push_back(linear_form_root(cd, suffix));
  }
  return RationalFn(MultiPoly::constant(cd.rank, Rat(1)), std::move(den));
}

ExpSum ft_d_seq(const CartanData& cd, const Word& w) {
  std::vector<Weight> nodes;
  RootVector prefix = cd.zero_root();
  nodes.push_back(cd.root_to_weight(prefix));
  for (int i : w) {
    if (i < 1 || i > cd.rank) throw std::invalid_argument("bad letter in word");
    prefix[i - 1] += 1;
    nodes.push_back(cd.root_to_weight(prefix));
  }
  return ft_simplex(cd, nodes);
}

RationalFn d_bar(const CoordRing& ring, const MultiPoly& f) {
  const CartanData& cd = ring.cartan();
  RootVector nu = ring.weight(f);
  RationalFn acc(MultiPoly(cd.rank));
  for (const Word& w : words_spelling(cd, nu)) {
    Rat c = ring.pairing(w, f);
    if (c != 0) acc += d_bar_seq(cd, w).scaled(c);
  }
  return acc;
}

ExpSum ft_d(const CoordRing& ring, const MultiPoly& f) {
  const CartanData& cd = ring.cartan();
  RootVector nu = ring.weight(f);
  ExpSum acc(cd.rank);
  for (const Word& w : words_spelling(cd, nu)) {
    Rat c = ring.pairing(w, f);
    if (c != 0) acc += ft_d_seq(cd, w).scaled(c);
  }
  return acc;
}

namespace {

// x0_j - x0_i = <alpha_i + ... + alpha_{j-1}>, 1-based i < j
MultiPoly segment_form(const CartanData& cd, int i, int j) {
  RootVector seg = cd.zero_root();
  for (int k = i; k < j; ++k) seg[k - 1] = 1;
  return linear_form_root(cd, seg);
}

using FnMatrix = std::vector<std::vector<RationalFn>>;

FnMatrix fn_zero_matrix(int n, int r) {
  return FnMatrix(n, std::vector<RationalFn>(n, RationalFn(MultiPoly(r))));
}

FnMatrix fn_mul(const FnMatrix& a, const FnMatrix& b, int r) {
  int n = (int)a.size();
  FnMatrix c = fn_zero_matrix(n, r);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      if (a[i][k].is_zero()) continue;
      for (int j = 0; j < n; ++j)
        if (!b[k][j].is_zero()) c[i][j] += a[i][k] * b[k][j];
    }
  return c;
}

// inverse of a unitriangular matrix by the finite geometric series
FnMatrix fn_unitri_inverse(const FnMatrix& m, int r) {
  int n = (int)m.size();
  FnMatrix u = fn_zero_matrix(n, r);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) u[i][j] = m[i][j];
  FnMatrix inv = fn_zero_matrix(n, r);
  for (int i = 0; i < n; ++i) inv[i][i] = RationalFn::constant(r, Rat(1));
  FnMatrix pw = u;
  Rat sign(-1);
  for (int k = 1; k < n; ++k) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) inv[i][j] += pw[i][j].scaled(sign);
    pw = fn_mul(pw, u, r);
    sign = -sign;
  }
  return inv;
}

}  // namespace

NxMatrix solve_nx(const CoordRing& ring) {
  const CartanData& cd = ring.cartan();
  int n = ring.n(), r = cd.rank;
  NxMatrix nx;
  nx.n = n;
  nx.entries = fn_zero_matrix(n, r);
  for (int i = 0; i < n; ++i) nx.entries[i][i] = RationalFn::constant(r, Rat(1));
  // row i of n x0 = (x0 + e) n reads n_{ij}(x0_j - x0_i) = n_{i+1,j}; filling
  // by increasing j - i makes every right side already known
  for (int d = 1; d < n; ++d)
    for (int i = 1; i + d <= n; ++i) {
      int j = i + d;
      nx.entries[i - 1][j - 1] = nx.entries[i][j - 1].divided_by(segment_form(cd, i, j));
    }
  return nx;
}

FnMatrix nx_residual(const CoordRing& ring, const FnMatrix& n) {
  const CartanData& cd = ring.cartan();
  int nn = (int)n.size(), r = cd.rank;
  FnMatrix x0 = fn_zero_matrix(nn, r);
  for (int i = 2; i <= nn; ++i) x0[i - 1][i - 1] = RationalFn(segment_form(cd, 1, i));
  FnMatrix ad = fn_mul(fn_mul(n, x0, r), fn_unitri_inverse(n, r), r);
  for (int i = 0; i < nn; ++i) ad[i][i] = ad[i][i] - x0[i][i];
  for (int i = 0; i + 1 < nn; ++i)
    ad[i][i + 1] = ad[i][i + 1] - RationalFn::constant(r, Rat(1));
  return ad;
}

RationalFn evaluate_at_nx(const CoordRing& ring, const NxMatrix& nx, const MultiPoly& f) {
  int r = ring.cartan().rank;
  std::vector<RationalFn> vals;
  for (int k = 0; k < ring.nvars(); ++k) {
    auto [i, j] = ring.var_pair(k);
    vals.push_back(nx.entries[i - 1][j - 1]);
  }
  return f.eval_with<RationalFn>(vals, RationalFn(MultiPoly(r)),
                                 RationalFn::constant(r, Rat(1)));
}

ExpSum evaluate_at_twist(const CoordRing& ring, const NxMatrix& nx, const MultiPoly& f) {
  const CartanData& cd = ring.cartan();
  int n = nx.n, r = cd.rank;
  FnMatrix inv = fn_unitri_inverse(nx.entries, r);
  std::vector<std::vector<ExpSum>> tn(n, std::vector<ExpSum>(n, ExpSum(r)));
  std::vector<std::vector<ExpSum>> ni(n, std::vector<ExpSum>(n, ExpSum(r)));
  Weight zero_w(cd.rank, 0);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      RootVector seg = cd.zero_root();
      for (int k = i + 1; k <= j; ++k) seg[k - 1] = 1;
      if (!nx.entries[i][j].is_zero())
        tn[i][j] = ExpSum::term(cd.root_to_weight(seg), nx.entries[i][j]);
      if (!inv[i][j].is_zero()) ni[i][j] = ExpSum::term(zero_w, inv[i][j]);
    }
  std::vector<std::vector<ExpSum>> m(n, std::vector<ExpSum>(n, ExpSum(r)));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      if (tn[i][k].is_zero()) continue;
      for (int j = 0; j < n; ++j)
        if (!ni[k][j].is_zero()) m[i][j] += tn[i][k] * ni[k][j];
    }
  std::vector<ExpSum> vals;
  for (int k = 0; k < ring.nvars(); ++k) {
    auto [i, j] = ring.var_pair(k);
    vals.push_back(m[i - 1][j - 1]);
  }
  return f.eval_with<ExpSum>(vals, ExpSum(r), ExpSum::one(r));
}

LatticePolytope support_hull(const ExpSum& s) {
  std::vector<Weight> pts;
  for (const auto& [w, c] : s.terms())
    if (!c.is_zero()) pts.push_back(w);
  return LatticePolytope::hull(pts);
}

}  // namespace bibasis
