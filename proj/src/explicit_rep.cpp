#include "bibasis/explicit_rep.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace bibasis {

namespace {

MatQ kron(const MatQ& A, const MatQ& B) {
  MatQ r(A.rows() * B.rows(), A.cols() * B.cols());
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = 0; j < A.cols(); ++j) {
      if (A(i, j) == 0) continue;
      for (std::size_t p = 0; p < B.rows(); ++p)
        for (std::size_t q = 0; q < B.cols(); ++q)
          if (B(p, q) != 0) r(i * B.rows() + p, j * B.cols() + q) = A(i, j) * B(p, q);
    }
  return r;
}

bool is_zero_vec(const std::vector<Rat>& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

// incremental independent-set tracker (rref rows + pivot columns)
struct SpanTracker {
  std::vector<std::vector<Rat>> rows;
  std::vector<std::size_t> pivots;

  bool insert(std::vector<Rat> v) {
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const Rat c = v[pivots[r]];
      if (c == 0) continue;
      for (std::size_t j = 0; j < v.size(); ++j) v[j] -= c * rows[r][j];
    }
    std::size_t p = 0;
    while (p < v.size() && v[p] == 0) ++p;
    if (p == v.size()) return false;
    Rat inv = Rat(1) / v[p];
    for (auto& x : v) x *= inv;
    rows.push_back(std::move(v));
    pivots.push_back(p);
    return true;
  }
};

ExplicitRep sl2_monomial_rep(const CartanData& cd, long n) {
  ExplicitRep V;
  V.cd = cd;
  V.dim = (int)n + 1;
  MatQ e(V.dim, V.dim), f(V.dim, V.dim), h(V.dim, V.dim);
  // basis vector k is x^k y^{n-k}; e = y d/dx, f = x d/dy
  for (long k = 0; k <= n; ++k) {
    if (k > 0) e(k - 1, k) = Rat(k);
    if (k < n) f(k + 1, k) = Rat(n - k);
    h(k, k) = Rat(n - 2 * k);
    V.weights.push_back({n - 2 * k});
  }
  V.e = {e};
  V.f = {f};
  V.h = {h};
  return V;
}

ExplicitRep fundamental_a2(const CartanData& cd) {
  ExplicitRep V;
  V.cd = cd;
  V.dim = 3;
  MatQ e1(3, 3), e2(3, 3);
  e1(0, 1) = 1;
  e2(1, 2) = 1;
  V.e = {e1, e2};
  V.f = {e1.transpose(), e2.transpose()};
  V.weights = {{1, 0}, {-1, 1}, {0, -1}};
  MatQ h1(3, 3), h2(3, 3);
  for (int k = 0; k < 3; ++k) {
    h1(k, k) = Rat(cd.pairing(1, V.weights[k]));
    h2(k, k) = Rat(cd.pairing(2, V.weights[k]));
  }
  V.h = {h1, h2};
  return V;
}

// submodule generated by a highest weight vector inside a completely
// reducible ambient representation: saturate under the lowering operators,
// then restrict every generator to the resulting basis
ExplicitRep generate_submodule(const ExplicitRep& amb, const std::vector<Rat>& top,
                               const Weight& top_wt) {
  ExplicitRep V;
  V.cd = amb.cd;
  int r = amb.cd.rank;
  std::vector<std::vector<Rat>> vecs;
  SpanTracker span;
  std::vector<Rat> t = top;
  if (!span.insert(t)) throw std::invalid_argument("zero highest weight vector");
  vecs.push_back(top);
  V.weights.push_back(top_wt);
  for (std::size_t head = 0; head < vecs.size(); ++head)
    for (int i = 1; i <= r; ++i) {
      auto img = amb.f[i - 1].apply(vecs[head]);
      if (is_zero_vec(img)) continue;
      if (span.insert(img)) {
        V.weights.push_back(
            sub_w(V.weights[head], amb.cd.root_to_weight(amb.cd.simple_root(i))));
        vecs.push_back(std::move(img));
      }
    }
  V.dim = (int)vecs.size();
  // restrict an operator by one rref of [basis | images]: the basis columns
  // are independent, so they pivot first and the image block converts to
  // coordinates; any pivot beyond them means the span was not stable
  auto restrict_op = [&](const MatQ& X) {
    MatQ aug(amb.dim, 2 * V.dim);
    for (int j = 0; j < V.dim; ++j) {
      auto img = X.apply(vecs[j]);
      for (int i = 0; i < amb.dim; ++i) {
        aug(i, j) = vecs[j][i];
        aug(i, V.dim + j) = img[i];
      }
    }
    auto pivots = aug.rref();
    if (pivots.size() != (std::size_t)V.dim || pivots.back() != (std::size_t)V.dim - 1)
      throw std::logic_error("generated subspace is not stable under the action");
    MatQ M(V.dim, V.dim);
    for (int i = 0; i < V.dim; ++i)
      for (int j = 0; j < V.dim; ++j) M(i, j) = aug(i, V.dim + j);
    return M;
  };
  for (int i = 0; i < r; ++i) {
    V.e.push_back(restrict_op(amb.e[i]));
    V.f.push_back(restrict_op(amb.f[i]));
    V.h.push_back(restrict_op(amb.h[i]));
  }
  return V;
}

}  // namespace

ExplicitRep tensor_rep(const ExplicitRep& V, const ExplicitRep& W) {
  if (V.cd.name != W.cd.name)
    throw std::invalid_argument("tensor factors live over different types");
  ExplicitRep T;
  T.cd = V.cd;
  T.dim = V.dim * W.dim;
  MatQ iv = MatQ::identity(V.dim), iw = MatQ::identity(W.dim);
  for (int i = 0; i < V.cd.rank; ++i) {
    T.e.push_back(kron(V.e[i], iw) + kron(iv, W.e[i]));
    T.f.push_back(kron(V.f[i], iw) + kron(iv, W.f[i]));
    T.h.push_back(kron(V.h[i], iw) + kron(iv, W.h[i]));
  }
  for (int p = 0; p < V.dim; ++p)
    for (int q = 0; q < W.dim; ++q)
      T.weights.push_back(add_w(V.weights[p], W.weights[q]));
  return T;
}

ExplicitRep irrep(const CartanData& cd, const Weight& lambda) {
  if (!cd.dominant(lambda))
    throw std::invalid_argument("irrep requires a dominant highest weight");
  if (cd.name == "A1") return sl2_monomial_rep(cd, lambda[0]);
  if (cd.name != "A2")
    throw std::invalid_argument("explicit irreps are implemented for A1 and A2 only");

  ExplicitRep f1 = fundamental_a2(cd);
  // V(omega2) = exterior square of V(omega1), generated from v1^v2
  ExplicitRep sq = tensor_rep(f1, f1);
  std::vector<Rat> wedge(9, Rat(0));
  wedge[0 * 3 + 1] = 1;
  wedge[1 * 3 + 0] = -1;
  ExplicitRep f2 = generate_submodule(sq, wedge, Weight{0, 1});

  if (lambda[0] == 0 && lambda[1] == 0) {
    ExplicitRep V;
    V.cd = cd;
    V.dim = 1;
    for (int i = 0; i < 2; ++i) {
      V.e.emplace_back(1, 1);
      V.f.emplace_back(1, 1);
      V.h.emplace_back(1, 1);
    }
    V.weights = {{0, 0}};
    return V;
  }

  ExplicitRep amb;
  bool have = false;
  for (long k = 0; k < lambda[0]; ++k) {
    amb = have ? tensor_rep(amb, f1) : f1;
    have = true;
  }
  for (long k = 0; k < lambda[1]; ++k) {
    amb = have ? tensor_rep(amb, f2) : f2;
    have = true;
  }
  std::vector<Rat> top(amb.dim, Rat(0));
  top[0] = 1;  // both fundamentals have their highest vector first
  return generate_submodule(amb, top, lambda);
}

void check_chevalley(const ExplicitRep& V) {
  int r = V.cd.rank;
  auto comm = [](const MatQ& A, const MatQ& B) { return A * B - B * A; };
  for (int i = 1; i <= r; ++i)
    for (int j = 1; j <= r; ++j) {
      if (!comm(V.h[i - 1], V.h[j - 1]).is_zero())
        throw std::logic_error("[h_i, h_j] != 0");
      if (!(comm(V.h[i - 1], V.e[j - 1]) == V.e[j - 1].scaled(Rat(V.cd.a(i, j)))))
        throw std::logic_error("[h_i, e_j] != a_ij e_j");
      if (!(comm(V.h[i - 1], V.f[j - 1]) == V.f[j - 1].scaled(Rat(-V.cd.a(i, j)))))
        throw std::logic_error("[h_i, f_j] != -a_ij f_j");
      MatQ ef = comm(V.e[i - 1], V.f[j - 1]);
      if (i == j ? !(ef == V.h[i - 1]) : !ef.is_zero())
        throw std::logic_error("[e_i, f_j] != delta_ij h_i");
      if (i != j) {
        MatQ X = V.e[j - 1], Y = V.f[j - 1];
        for (int k = 0; k < 1 - V.cd.a(i, j); ++k) {
          X = comm(V.e[i - 1], X);
          Y = comm(V.f[i - 1], Y);
        }
        if (!X.is_zero() || !Y.is_zero()) throw std::logic_error("Serre relation fails");
      }
    }
  for (int i = 1; i <= r; ++i) {
    Weight ai = V.cd.root_to_weight(V.cd.simple_root(i));
    for (int row = 0; row < V.dim; ++row)
      for (int col = 0; col < V.dim; ++col) {
        if (V.h[i - 1](row, col) != 0 &&
            (row != col || V.h[i - 1](row, col) != Rat(V.cd.pairing(i, V.weights[row]))))
          throw std::logic_error("h_i is not the weight diagonal");
        if (V.e[i - 1](row, col) != 0 && V.weights[row] != add_w(V.weights[col], ai))
          throw std::logic_error("e_i does not raise weight by alpha_i");
        if (V.f[i - 1](row, col) != 0 && V.weights[row] != sub_w(V.weights[col], ai))
          throw std::logic_error("f_i does not lower weight by alpha_i");
      }
  }
}

std::map<Weight, int> weight_space_dims(const ExplicitRep& V) {
  std::map<Weight, int> out;
  for (const auto& w : V.weights) ++out[w];
  return out;
}

long multiplicity_space_dim(const CartanData& cd, const Weight& lambda,
                            const Weight& mu, const Weight& nu) {
  return multiplicity_space_dim(irrep(cd, lambda), mu, nu);
}

long multiplicity_space_dim(const ExplicitRep& V, const Weight& mu, const Weight& nu) {
  const CartanData& cd = V.cd;
  if (!cd.dominant(mu))
    throw std::invalid_argument("multiplicity_space_dim requires dominant mu");
  Weight target = sub_w(nu, mu);
  std::vector<int> cols;
  for (int k = 0; k < V.dim; ++k)
    if (V.weights[k] == target) cols.push_back(k);
  if (cols.empty()) return 0;
  // stack e_i^{<alpha_i^vee,mu>+1} restricted to the weight space
  std::vector<MatQ> powers;
  for (int i = 1; i <= cd.rank; ++i) {
    MatQ P = MatQ::identity(V.dim);
    long m = cd.pairing(i, mu) + 1;
    for (long k = 0; k < m; ++k) P = V.e[i - 1] * P;
    powers.push_back(P);
  }
  MatQ S(cd.rank * V.dim, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (int i = 0; i < cd.rank; ++i)
      for (int row = 0; row < V.dim; ++row)
        S(i * V.dim + row, j) = powers[i](row, cols[j]);
  return (long)cols.size() - (long)S.rank();
}

PerfectBasisReport verify_perfect(const ExplicitRep& V,
                                  const std::vector<std::vector<Rat>>& basis) {
  PerfectBasisReport rep;
  rep.pass = true;
  auto fail_check = [&](PerfectCheck c, const std::string& why) {
    c.pass = false;
    c.reason = why;
    rep.pass = false;
    rep.checks.push_back(std::move(c));
  };

  if ((int)basis.size() != V.dim || span_rank(basis) != (std::size_t)V.dim) {
    PerfectCheck c;
    fail_check(c, "candidate set is not a basis");
    return rep;
  }

  // weight of each candidate vector; weight basis required
  std::vector<Weight> bwt(basis.size());
  for (std::size_t k = 0; k < basis.size(); ++k) {
    bool found = false;
    for (int row = 0; row < V.dim; ++row) {
      if (basis[k][row] == 0) continue;
      if (!found) {
        bwt[k] = V.weights[row];
        found = true;
      } else if (V.weights[row] != bwt[k]) {
        PerfectCheck c;
        c.vector_index = (int)k;
        fail_check(c, "not a weight vector: mixes " + format_weight(bwt[k]) + " and " +
                          format_weight(V.weights[row]));
        return rep;
      }
    }
  }

  rep.eps.assign(basis.size(), std::vector<long>(V.cd.rank, 0));
  for (std::size_t k = 0; k < basis.size(); ++k)
    for (int i = 1; i <= V.cd.rank; ++i) {
      PerfectCheck c;
      c.vector_index = (int)k;
      c.i = i;
      std::vector<Rat> u = V.e[i - 1].apply(basis[k]);
      long eps = 0;
      for (auto w = u; !is_zero_vec(w); w = V.e[i - 1].apply(w)) {
        ++eps;
        if (eps > V.dim) throw std::logic_error("e_i is not nilpotent");
      }
      c.epsilon = eps;
      rep.eps[k][i - 1] = eps;
      if (eps == 0) {
        c.pass = true;
        rep.checks.push_back(std::move(c));
        continue;
      }
      Weight up = add_w(bwt[k], V.cd.root_to_weight(V.cd.simple_root(i)));
      int matches = 0;
      for (std::size_t t = 0; t < basis.size(); ++t) {
        if (bwt[t] != up) continue;
        std::vector<Rat> v(u);
        for (int row = 0; row < V.dim; ++row) v[row] -= Rat(eps) * basis[t][row];
        std::vector<Rat> w = v;
        for (long s = 0; s < eps - 1; ++s) w = V.e[i - 1].apply(w);
        if (is_zero_vec(w)) {
          ++matches;
          c.partner = (int)t;
          c.residual = v;
        }
      }
      if (matches == 1) {
        c.pass = true;
        rep.checks.push_back(std::move(c));
      } else {
        fail_check(std::move(c), matches == 0 ? "no leading partner in the basis"
                                              : "ambiguous leading partner");
      }
    }
  return rep;
}

namespace {

// 3x3 rational matrices as flat 9-vectors, row major
using M3 = std::vector<Rat>;

M3 m3_unit(int a, int b) {
  M3 m(9, Rat(0));
  m[a * 3 + b] = 1;
  return m;
}

M3 m3_comm(const M3& A, const M3& B) {
  M3 r(9, Rat(0));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        r[i * 3 + j] += A[i * 3 + k] * B[k * 3 + j] - B[i * 3 + k] * A[k * 3 + j];
  return r;
}

M3 m3_scaled(const M3& A, const Rat& c) {
  M3 r = A;
  for (auto& x : r) x *= c;
  return r;
}

M3 m3_add(const M3& A, const M3& B) {
  M3 r = A;
  for (int k = 0; k < 9; ++k) r[k] += B[k];
  return r;
}

// the fixed weight-vector spanning set of sl3 used by the adjoint builder
// and the constraint solver; the two Cartan lines come from honest kernel
// computations of ad(e_i) on the diagonal part
struct AdjointFrame {
  std::vector<M3> spans;  // E13 E12 E23 h_a-line h_b-line E21 E32 E31
  std::vector<Weight> wts;
  M3 e1, e2;
};

AdjointFrame adjoint_frame() {
  AdjointFrame F;
  F.e1 = m3_unit(0, 1);
  F.e2 = m3_unit(1, 2);
  M3 H1 = m3_add(m3_unit(0, 0), m3_scaled(m3_unit(1, 1), Rat(-1)));
  M3 H2 = m3_add(m3_unit(1, 1), m3_scaled(m3_unit(2, 2), Rat(-1)));
  // ker of ad(e_i) on span{H1, H2}
  auto diag_kernel = [&](const M3& gen) {
    M3 c1 = m3_comm(gen, H1), c2 = m3_comm(gen, H2);
    MatQ K(9, 2);
    for (int k = 0; k < 9; ++k) {
      K(k, 0) = c1[k];
      K(k, 1) = c2[k];
    }
    auto kb = K.kernel_basis();
    if (kb.size() != 1) throw std::logic_error("Cartan kernel is not a line");
    return m3_add(m3_scaled(H1, kb[0][0]), m3_scaled(H2, kb[0][1]));
  };
  F.spans = {m3_unit(0, 2), m3_unit(0, 1),    m3_unit(1, 2),
             diag_kernel(F.e1), diag_kernel(F.e2),
             m3_unit(1, 0), m3_unit(2, 1),    m3_unit(2, 0)};
  F.wts = {{1, 1}, {2, -1}, {-1, 2}, {0, 0}, {0, 0}, {-2, 1}, {1, -2}, {-1, -1}};
  return F;
}

}  // namespace

ExplicitRep adjoint_rep_sl3() {
  AdjointFrame F = adjoint_frame();
  CartanData cd = CartanData::parse("A2");
  ExplicitRep V;
  V.cd = cd;
  V.dim = 8;
  V.weights = F.wts;
  MatQ B(9, 8);
  for (int j = 0; j < 8; ++j)
    for (int k = 0; k < 9; ++k) B(k, j) = F.spans[j][k];
  auto ad_matrix = [&](const M3& g) {
    MatQ M(8, 8);
    for (int j = 0; j < 8; ++j) {
      auto coords = B.solve(m3_comm(g, F.spans[j]));
      if (!coords) throw std::logic_error("adjoint action left the basis span");
      for (int i = 0; i < 8; ++i) M(i, j) = (*coords)[i];
    }
    return M;
  };
  M3 f1 = m3_unit(1, 0), f2 = m3_unit(2, 1);
  V.e = {ad_matrix(F.e1), ad_matrix(F.e2)};
  V.f = {ad_matrix(f1), ad_matrix(f2)};
  V.h = {ad_matrix(m3_comm(F.e1, f1)), ad_matrix(m3_comm(F.e2, f2))};
  return V;
}

namespace {

// Solve the perfect-basis scalar constraints on the adjoint frame, seeded by
// the highest weight vector with coefficient 1.  For eps = 1 strings the
// residual must vanish exactly; for eps = 2 strings into the Cartan the
// residual lies in ker e_i, which the alpha_i functional kills.
std::vector<Rat> solve_adjoint_scalars(const AdjointFrame& F) {
  const int n = 8;
  std::vector<std::optional<Rat>> m(n);
  m[0] = Rat(1);
  auto alpha = [&](int i, const M3& x) {  // alpha_i on diagonal matrices
    return i == 1 ? x[0] - x[4] : x[4] - x[8];
  };
  auto parallel_coeff = [&](const M3& w, const M3& s) -> std::optional<Rat> {
    // w = c*s, s != 0
    int p = 0;
    while (p < 9 && s[p] == 0) ++p;
    Rat c = w[p] / s[p];
    for (int k = 0; k < 9; ++k)
      if (w[k] != c * s[k]) return std::nullopt;
    return c;
  };
  auto assign = [&](int slot, const Rat& val) {
    if (m[slot]) {
      if (*m[slot] != val) throw std::logic_error("inconsistent forcing constraints");
      return false;
    }
    m[slot] = val;
    return true;
  };
  bool progress = true;
  while (progress) {
    progress = false;
    for (int s = 0; s < n; ++s)
      for (int i = 1; i <= 2; ++i) {
        const M3& gen = (i == 1) ? F.e1 : F.e2;
        M3 u = m3_comm(gen, F.spans[s]);
        long eps = 0;
        for (M3 w = u; !is_zero_vec(w); w = m3_comm(gen, w)) ++eps;
        if (eps == 1) {
          // e_i (m_s span_s) = 1 * (m_t span_t) exactly
          for (int t = 0; t < n; ++t) {
            auto c = parallel_coeff(u, F.spans[t]);
            if (!c || *c == 0) continue;
            if (m[s] && assign(t, *m[s] * *c)) progress = true;
            if (m[t] && assign(s, *m[t] / *c)) progress = true;
            break;
          }
        } else if (eps == 2) {
          // e_i (m_s span_s) = 2 (m_t span_t) + v, alpha_i(v) = 0,
          // t the Cartan slot not killed by alpha_i
          int t = (alpha(i, F.spans[3]) != 0) ? 3 : 4;
          Rat lhs = alpha(i, u), rhs = Rat(2) * alpha(i, F.spans[t]);
          if (m[s] && assign(t, *m[s] * lhs / rhs)) progress = true;
          if (m[t] && assign(s, *m[t] * rhs / lhs)) progress = true;
        }
      }
  }
  std::vector<Rat> out;
  for (int s = 0; s < n; ++s) {
    if (!m[s]) throw std::logic_error("forcing constraints did not determine the basis");
    out.push_back(*m[s]);
  }
  return out;
}

}  // namespace

std::vector<std::vector<Rat>> force_sl3_adjoint() {
  AdjointFrame F = adjoint_frame();
  auto m = solve_adjoint_scalars(F);
  std::vector<std::vector<Rat>> out;
  for (int slot : {3, 4}) {
    M3 v = m3_scaled(F.spans[slot], m[slot]);
    out.push_back({v[0], v[4], v[8]});
  }
  return out;
}

std::vector<std::vector<Rat>> force_sl3_adjoint_basis() {
  AdjointFrame F = adjoint_frame();
  auto m = solve_adjoint_scalars(F);
  MatQ B(9, 8);
  for (int j = 0; j < 8; ++j)
    for (int k = 0; k < 9; ++k) B(k, j) = F.spans[j][k];
  std::vector<std::vector<Rat>> out;
  for (int s = 0; s < 8; ++s) {
    auto coords = B.solve(m3_scaled(F.spans[s], m[s]));
    out.push_back(*coords);
  }
  return out;
}

}  // namespace bibasis
