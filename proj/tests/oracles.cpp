#include "oracles.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "bibasis/matq.hpp"
#include "bibasis/multi_poly.hpp"

namespace oracles {

using namespace bibasis;

long long kostant_product_formula(const CartanData& cd, const RootVector& nu) {
  if (!is_nonneg(nu)) return 0;
  // dp over the box [0,nu], one positive root at a time
  std::map<RootVector, long long> dp;
  dp[cd.zero_root()] = 1;
  auto in_box = [&](const RootVector& v) {
    for (int i = 0; i < cd.rank; ++i)
      if (v[i] < 0 || v[i] > nu[i]) return false;
    return true;
  };
  // enumerate the box in lexicographic order once
  std::vector<RootVector> box;
  RootVector cur(cd.rank, 0);
  while (true) {
    box.push_back(cur);
    int k = cd.rank - 1;
    while (k >= 0 && cur[k] == nu[k]) {
      cur[k] = 0;
      --k;
    }
    if (k < 0) break;
    ++cur[k];
  }
  std::sort(box.begin(), box.end(), [](const RootVector& a, const RootVector& b) {
    if (height(a) != height(b)) return height(a) < height(b);
    return a < b;
  });
  for (const auto& beta : cd.positive_roots()) {
    std::map<RootVector, long long> next;
    for (const auto& v : box) {
      long long total = 0;
      RootVector rem = v;
      while (in_box(rem)) {
        auto it = dp.find(rem);
        if (it != dp.end()) total += it->second;
        rem = sub(rem, beta);
      }
      if (total) next[v] = total;
    }
    dp = std::move(next);
  }
  auto it = dp.find(nu);
  return it == dp.end() ? 0 : it->second;
}

namespace {

// Weyl group as matrices acting on omega-coordinates, with sign = (-1)^length.
struct WeylGroup {
  std::vector<std::vector<Weight>> elements;  // columns = images of omega_j
  std::vector<int> signs;
};

Weight act(const std::vector<Weight>& cols, const Weight& lam) {
  Weight out(lam.size(), 0);
  for (std::size_t j = 0; j < lam.size(); ++j)
    if (lam[j] != 0)
      for (std::size_t i = 0; i < lam.size(); ++i) out[i] += lam[j] * cols[j][i];
  return out;
}

WeylGroup enumerate_weyl(const CartanData& cd) {
  std::vector<Weight> id;
  for (int j = 1; j <= cd.rank; ++j) id.push_back(cd.fundamental_weight(j));
  WeylGroup wg;
  std::map<std::vector<Weight>, int> seen;
  std::vector<std::vector<Weight>> queue{id};
  seen[id] = 1;
  wg.elements.push_back(id);
  wg.signs.push_back(1);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    auto cols = queue[head];
    for (int i = 1; i <= cd.rank; ++i) {
      std::vector<Weight> child;
      child.reserve(cd.rank);
      for (int j = 0; j < cd.rank; ++j) child.push_back(cd.reflect(i, cols[j]));
      if (seen.emplace(child, 1).second) {
        queue.push_back(child);
        wg.elements.push_back(child);
        wg.signs.push_back(-wg.signs[head]);
        if (wg.elements.size() > 50000)
          throw std::runtime_error("Weyl group too large for oracle");
      }
    }
  }
  return wg;
}

// pairing with rho-check: key(mu) = <mu, rho^vee> = sum of alpha-coordinates
struct HeightKey {
  std::vector<Rat> h;  // solves A^T h = (1,..,1)
  explicit HeightKey(const CartanData& cd) {
    MatQ at(cd.rank, cd.rank);
    for (int i = 0; i < cd.rank; ++i)
      for (int j = 0; j < cd.rank; ++j) at(i, j) = cd.cartan[j][i];
    auto sol = at.solve(std::vector<Rat>(cd.rank, Rat(1)));
    if (!sol) throw std::logic_error("singular Cartan matrix");
    h = *sol;
  }
  Rat operator()(const Weight& mu) const {
    Rat s = 0;
    for (std::size_t i = 0; i < h.size(); ++i) s += h[i] * mu[i];
    return s;
  }
};

Weight max_term(const std::map<Weight, long long>& poly, const HeightKey& key) {
  auto best = poly.begin();
  Rat best_key = key(best->first);
  for (auto it = std::next(poly.begin()); it != poly.end(); ++it) {
    Rat k = key(it->first);
    if (k > best_key || (k == best_key && it->first > best->first)) {
      best = it;
      best_key = k;
    }
  }
  return best->first;
}

}  // namespace

std::map<Weight, long long> weyl_character(const CartanData& cd, const Weight& lambda) {
  if (!cd.dominant(lambda)) throw std::invalid_argument("weyl_character: lambda not dominant");
  auto wg = enumerate_weyl(cd);
  HeightKey key(cd);
  Weight rho = cd.rho();
  auto orbit_sum = [&](const Weight& mu) {
    std::map<Weight, long long> out;
    for (std::size_t k = 0; k < wg.elements.size(); ++k) {
      Weight img = act(wg.elements[k], mu);
      out[img] += wg.signs[k];
      if (out[img] == 0) out.erase(img);
    }
    return out;
  };
  std::map<Weight, long long> numer = orbit_sum(add_w(lambda, rho));
  std::map<Weight, long long> denom = orbit_sum(rho);
  std::map<Weight, long long> quot;
  long guard = 0;
  while (!numer.empty()) {
    if (++guard > 2000000) throw std::runtime_error("character division diverged");
    Weight mu = max_term(numer, key);
    long long c = numer[mu];
    Weight q = sub_w(mu, rho);
    quot[q] += c;
    for (const auto& [nu, d] : denom) {
      Weight t = add_w(q, nu);
      numer[t] -= c * d;
      if (numer[t] == 0) numer.erase(t);
    }
  }
  return quot;
}

long long weight_multiplicity(const CartanData& cd, const Weight& lambda, const Weight& mu) {
  auto ch = weyl_character(cd, lambda);
  auto it = ch.find(mu);
  return it == ch.end() ? 0 : it->second;
}

long long dim_irrep(const CartanData& cd, const Weight& lambda) {
  long long d = 0;
  for (const auto& [w, m] : weyl_character(cd, lambda)) d += m;
  return d;
}

std::vector<Rat> simplex_exp_taylor(const CartanData& cd, const std::vector<Weight>& nodes,
                                    const std::vector<Rat>& dir, int order) {
  const int p = (int)nodes.size() - 1;
  auto pair_dir = [&](const Weight& b) {
    Rat z = 0;
    for (int i = 0; i < cd.rank; ++i) z += Rat(b[i]) * dir[i];
    return z;
  };
  std::vector<Rat> out(order + 1, Rat(0));
  if (p == 0) {
    Rat z = pair_dir(nodes[0]), t = 1;
    for (int m = 0; m <= order; ++m) {
      out[m] = t;
      t = t * z / Rat(m + 1);
    }
    return out;
  }
  // linear integrand z_0 + sum t_k (z_k - z_{k-1}) as a poly in t_1..t_p
  MultiPoly lin = MultiPoly::constant(p, pair_dir(nodes[0]));
  for (int k = 1; k <= p; ++k) {
    Rat dz = pair_dir(nodes[k]) - pair_dir(nodes[k - 1]);
    lin += MultiPoly::variable(p, k - 1).scaled(dz);  // var k-1 is t_k
  }
  // integrate t_p from 0 to t_{p-1}, ..., t_1 from 0 to 1
  auto integrate_out = [&](MultiPoly f) {
    for (int var = p - 1; var >= 0; --var) {
      MultiPoly next(p);
      for (const auto& [e, c] : f.terms()) {
        auto e2 = e;
        int k = e2[var];
        e2[var] = 0;
        if (var > 0) e2[var - 1] += k + 1;  // substitute upper limit t_{var-1}
        next += MultiPoly::monomial(p, e2, c / Rat(k + 1));
      }
      f = next;
    }
    return f.constant_value();
  };
  MultiPoly power = MultiPoly::constant(p, 1);
  Rat mfact = 1;
  for (int m = 0; m <= order; ++m) {
    if (m > 0) {
      power = power * lin;
      mfact *= m;
    }
    out[m] = integrate_out(power) / mfact;
  }
  return out;
}

std::map<Weight, long long> tensor_decompose(const CartanData& cd, const Weight& lambda,
                                             const Weight& mu) {
  auto cl = weyl_character(cd, lambda);
  auto cm = weyl_character(cd, mu);
  std::map<Weight, long long> prod;
  for (const auto& [a, ca] : cl)
    for (const auto& [b, cb] : cm) {
      Weight s = add_w(a, b);
      prod[s] += ca * cb;
      if (prod[s] == 0) prod.erase(s);
    }
  HeightKey key(cd);
  std::map<Weight, long long> mult;
  while (!prod.empty()) {
    Weight top = max_term(prod, key);
    long long c = prod[top];
    if (!cd.dominant(top) || c <= 0)
      throw std::logic_error("tensor decomposition walked out of the dominant cone");
    mult[top] = c;
    for (const auto& [w, m] : weyl_character(cd, top)) {
      prod[w] -= c * m;
      if (prod[w] == 0) prod.erase(w);
    }
  }
  return mult;
}

}  // namespace oracles
