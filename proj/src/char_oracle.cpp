#include "bibasis/char_oracle.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

#include "bibasis/matq.hpp"

namespace bibasis {

namespace {

// symmetrizers d_i with d_i a_ij = d_j a_ji
std::vector<long> symmetrizers(const CartanData& cd) {
  std::vector<long> d(cd.rank, 0);
  d[0] = 1;
  // propagate along the Dynkin graph
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 0; i < cd.rank; ++i)
      for (int j = 0; j < cd.rank; ++j) {
        if (i == j || cd.cartan[i][j] == 0 || d[i] == 0 || d[j] != 0) continue;
        // d_j = d_i * a_ij / a_ji
        long num = d[i] * cd.cartan[i][j];
        long den = cd.cartan[j][i];
        if (num % den != 0) throw std::logic_error("non-integral symmetrizer");
        d[j] = num / den;
        changed = true;
      }
  }
  for (int i = 0; i < cd.rank; ++i)
    if (d[i] == 0) d[i] = 1;  // isolated node (product factors)
  long g = 0;
  for (long v : d) g = std::gcd(g, v);
  for (long& v : d) v /= g;
  return d;
}

// (mu, beta) for a weight mu (omega coords) and a root-lattice vector beta
// (alpha coords), with respect to the symmetrized invariant form
Int form_weight_root(const std::vector<long>& d, const Weight& mu,
                     const RootVector& beta) {
  Int acc = 0;
  for (std::size_t j = 0; j < beta.size(); ++j)
    acc += Int(beta[j]) * d[j] * mu[j];
  return acc;
}

// alpha coordinates of lambda - mu, or nullopt when not in the root lattice /
// not >= 0 is not required here
std::optional<RootVector> root_coords_diff(const MatQ& A, const Weight& lambda,
                                           const Weight& mu) {
  std::vector<Rat> rhs;
  for (std::size_t i = 0; i < lambda.size(); ++i) rhs.emplace_back(lambda[i] - mu[i]);
  auto sol = A.solve(rhs);
  if (!sol) return std::nullopt;
  RootVector c;
  for (const auto& v : *sol) {
    if (v.get_den() != 1) return std::nullopt;
    c.push_back(v.get_num().get_si());
  }
  return c;
}

MatQ cartan_matq(const CartanData& cd) {
  MatQ A(cd.rank, cd.rank);
  for (int i = 0; i < cd.rank; ++i)
    for (int j = 0; j < cd.rank; ++j) A(i, j) = Rat(cd.cartan[i][j]);
  return A;
}

}  // namespace

Weight dominant_representative(const CartanData& cd, const Weight& mu) {
  Weight v = mu;
  bool moved = true;
  while (moved) {
    moved = false;
    for (int i = 1; i <= cd.rank; ++i)
      if (cd.pairing(i, v) < 0) {
        v = cd.reflect(i, v);
        moved = true;
      }
  }
  return v;
}

std::vector<Weight> weyl_orbit(const CartanData& cd, const Weight& mu) {
  std::set<Weight> seen{mu};
  std::vector<Weight> queue{mu};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    Weight v = queue[head];
    for (int i = 1; i <= cd.rank; ++i) {
      Weight r = cd.reflect(i, v);
      if (seen.insert(r).second) queue.push_back(r);
    }
  }
  return {queue.begin(), queue.end()};
}

std::map<Weight, long long> character(const CartanData& cd, const Weight& lambda) {
  if (!cd.dominant(lambda))
    throw std::invalid_argument("character requires a dominant highest weight");
  auto d = symmetrizers(cd);
  MatQ A = cartan_matq(cd);
  auto pos = cd.positive_roots();
  Weight rho = cd.rho();

  // dominant weights mu <= lambda.  Every support weight nu satisfies
  // w0(lambda) <= nu <= lambda, so lambda - nu lies in the box
  // 0 <= c <= alpha-coords(lambda - w0 lambda); enumerate it directly.
  auto box = root_coords_diff(A, lambda, cd.w0_weight(lambda));
  if (!box || !is_nonneg(*box)) throw std::logic_error("bad weight box");
  std::vector<std::pair<long, Weight>> dominants;  // (height of lambda-mu, mu)
  RootVector c(cd.rank, 0);
  while (true) {
    Weight mu = sub_w(lambda, cd.root_to_weight(c));
    if (cd.dominant(mu)) dominants.emplace_back(height(c), mu);
    int k = 0;
    while (k < cd.rank && c[k] == (*box)[k]) c[k++] = 0;
    if (k == cd.rank) break;
    ++c[k];
  }
  std::sort(dominants.begin(), dominants.end());

  std::map<Weight, Int> mult;  // dominant mu -> multiplicity
  auto lookup = [&](const Weight& nu) -> Int {
    Weight rep = dominant_representative(cd, nu);
    auto it = mult.find(rep);
    return it == mult.end() ? Int(0) : it->second;
  };

  for (const auto& [h, mu] : dominants) {
    if (h == 0) {
      mult[mu] = 1;
      continue;
    }
    // 2 sum_{beta>0} sum_{k>=1} (mu + k beta, beta) m_{mu + k beta}
    Int num = 0;
    for (const auto& beta : pos) {
      Weight step = cd.root_to_weight(beta);
      Weight nu = mu;
      for (long k = 1;; ++k) {
        nu = add_w(nu, step);
        auto dc = root_coords_diff(A, lambda, nu);
        if (!dc || !is_nonneg(*dc)) break;
        Int m = lookup(nu);
        if (m == 0) continue;
        num += 2 * m * form_weight_root(d, nu, beta);
      }
    }
    // denominator (lambda + mu + 2 rho, lambda - mu)
    Weight s = add_w(add_w(lambda, mu), add_w(rho, rho));
    auto dc = root_coords_diff(A, lambda, mu);
    Int den = form_weight_root(d, s, *dc);
    if (den == 0 || num % den != 0)
      throw std::logic_error("Freudenthal recursion produced a non-integer");
    mult[mu] = num / den;
  }

  std::map<Weight, long long> out;
  for (const auto& [mu, m] : mult) {
    long long mm = mpz_get_si(m.get_mpz_t());
    for (const auto& w : weyl_orbit(cd, mu)) out[w] = mm;
  }
  return out;
}

long long character_dim(const CartanData& cd, const Weight& lambda) {
  long long total = 0;
  for (const auto& [w, m] : character(cd, lambda)) {
    (void)w;
    total += m;
  }
  return total;
}

std::map<Weight, long long> tensor_product_decomposition(const CartanData& cd,
                                                         const Weight& lambda,
                                                         const Weight& mu) {
  auto cl = character(cd, lambda);
  auto cm = character(cd, mu);
  std::map<Weight, long long> prod;
  for (const auto& [w1, m1] : cl)
    for (const auto& [w2, m2] : cm) prod[add_w(w1, w2)] += m1 * m2;

  MatQ A = cartan_matq(cd);
  // height functional: h . nu = sum of alpha coordinates of nu
  auto hkey = [&](const Weight& w) {
    std::vector<Rat> rhs;
    for (long v : w) rhs.emplace_back(v);
    auto sol = A.solve(rhs);
    Rat acc = 0;
    for (const auto& v : *sol) acc += v;
    return acc;
  };

  std::map<Weight, long long> out;
  while (!prod.empty()) {
    // maximal support element is a highest weight of a summand
    auto best = prod.begin();
    Rat bh = hkey(best->first);
    for (auto it = std::next(prod.begin()); it != prod.end(); ++it) {
      Rat h = hkey(it->first);
      if (h > bh || (h == bh && it->first > best->first)) {
        best = it;
        bh = h;
      }
    }
    Weight top = best->first;
    long long c = best->second;
    if (!cd.dominant(top) || c <= 0)
      throw std::logic_error("tensor decomposition failed to terminate cleanly");
    out[top] = c;
    for (const auto& [w, m] : character(cd, top)) {
      auto it = prod.find(w);
      it->second -= c * m;
      if (it->second == 0) prod.erase(it);
    }
  }
  return out;
}

}  // namespace bibasis
