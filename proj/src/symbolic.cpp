#include "bibasis/symbolic.hpp"

#include <algorithm>
#include <stdexcept>

namespace bibasis {

MultiPoly linear_form(const CartanData& cd, const Weight& beta) {
  if ((int)beta.size() != cd.rank) throw std::invalid_argument("weight has wrong rank");
  MultiPoly p(cd.rank);
  for (int i = 0; i < cd.rank; ++i)
    if (beta[i] != 0)
      p += MultiPoly::variable(cd.rank, i).scaled(Rat(beta[i]));
  return p;
}

MultiPoly linear_form_root(const CartanData& cd, const RootVector& nu) {
  return linear_form(cd, cd.root_to_weight(nu));
}

ExpSum ft_simplex(const CartanData& cd, const std::vector<Weight>& nodes_in) {
  if (nodes_in.empty()) throw std::invalid_argument("ft_simplex: no nodes");
  // divided differences are symmetric in the nodes, so sorting is harmless
  // and it groups coincident nodes into contiguous blocks
  std::vector<Weight> nodes = nodes_in;
  std::sort(nodes.begin(), nodes.end());
  const int p = (int)nodes.size() - 1;
  const int r = cd.rank;
  // dd[a][b] = [z_a..z_b] exp, windows grown by length
  std::vector<std::vector<ExpSum>> dd(p + 1, std::vector<ExpSum>(p + 1, ExpSum(r)));
  for (int a = 0; a <= p; ++a) dd[a][a] = ExpSum::exponential(r, nodes[a]);
  for (int len = 1; len <= p; ++len) {
    for (int a = 0; a + len <= p; ++a) {
      int b = a + len;
      if (nodes[a] == nodes[b]) {
        // whole block coincides: [z,..,z] exp = e^z / len!
        RationalFn c = RationalFn::constant(r, Rat(1) / Rat(factorial(len)));
        dd[a][b] = ExpSum::term(nodes[a], c);
      } else {
        MultiPoly gap = linear_form(cd, sub_w(nodes[b], nodes[a]));
        dd[a][b] = (dd[a + 1][b] - dd[a][b - 1]).divided_by(gap);
      }
    }
  }
  return dd[0][p];
}

namespace {

// truncated power series helpers on coefficient vectors
std::vector<Rat> series_mul(const std::vector<Rat>& a, const std::vector<Rat>& b,
                            int order) {
  std::vector<Rat> c(order + 1, Rat(0));
  for (int i = 0; i <= order && i < (int)a.size(); ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; i + j <= order && j < (int)b.size(); ++j) c[i + j] += a[i] * b[j];
  }
  return c;
}

std::vector<Rat> series_invert(const std::vector<Rat>& d, int order) {
  if (d.empty() || d[0] == 0) throw std::logic_error("series not a unit");
  std::vector<Rat> inv(order + 1, Rat(0));
  inv[0] = Rat(1) / d[0];
  for (int k = 1; k <= order; ++k) {
    Rat s = 0;
    for (int j = 1; j <= k && j < (int)d.size(); ++j) s += d[j] * inv[k - j];
    inv[k] = -s / d[0];
  }
  return inv;
}

}  // namespace

std::vector<Rat> taylor_along_line(const ExpSum& s, const std::vector<Rat>& dir,
                                   int order) {
  // Laurent bookkeeping: each term contributes from order -v upward where v
  // is the s-adic valuation of its restricted denominator
  int max_val = 0;
  for (const auto& [b, f] : s.terms()) {
    int deg_sum = 0;
    for (const auto& fac : f.den_factors()) deg_sum += std::max(fac.total_degree(), 0);
    max_val = std::max(max_val, deg_sum);
  }
  const int work = order + max_val;
  std::vector<Rat> laurent(order + max_val + max_val + 1, Rat(0));  // index = power + max_val
  for (const auto& [beta, fn] : s.terms()) {
    auto [numc, denc] = fn.restrict_line(dir);
    int v = 0;
    while (v < (int)denc.size() && denc[v] == 0) ++v;
    if (v == (int)denc.size())
      throw PoleError("denominator vanishes identically along the chosen line");
    std::vector<Rat> unit(denc.begin() + v, denc.end());
    std::vector<Rat> inv = series_invert(unit, work);
    std::vector<Rat> frac = series_mul(numc, inv, work);  // s^{-v} * frac(s)
    // exponential factor e^{<beta, dir> s}
    Rat z = 0;
    for (std::size_t i = 0; i < dir.size(); ++i) z += Rat(beta[i]) * dir[i];
    std::vector<Rat> expz(work + 1, Rat(0));
    Rat term = 1;
    for (int k = 0; k <= work; ++k) {
      expz[k] = term;
      term = term * z / Rat(k + 1);
    }
    std::vector<Rat> total = series_mul(frac, expz, work);
    for (int k = 0; k <= work; ++k) {
      int power = k - v;
      laurent[power + max_val] += total[k];
    }
  }
  for (int p = -max_val; p < 0; ++p)
    if (laurent[p + max_val] != 0)
      throw PoleError("exp-sum has a genuine pole along the chosen line");
  std::vector<Rat> out(order + 1);
  for (int k = 0; k <= order; ++k) out[k] = laurent[k + max_val];
  return out;
}

}  // namespace bibasis
