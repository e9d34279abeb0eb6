#include "bibasis/coord_ring.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include "bibasis/matq.hpp"

namespace bibasis {

CoordRing CoordRing::make(int n) {
  if (n < 2 || n > 4) throw std::invalid_argument("CoordRing: n must be 2, 3 or 4");
  CoordRing r;
  r.n_ = n;
  r.cd_ = CartanData::parse("A" + std::to_string(n - 1));
  r.var_of_pair_.assign(n + 1, std::vector<int>(n + 1, -1));
  // short roots first: graded lex then ranks x before y before z for n = 3
  for (int len = 1; len < n; ++len)
    for (int i = 1; i + len <= n; ++i) {
      int j = i + len;
      r.var_of_pair_[i][j] = r.nvars_;
      RootVector wt = r.cd_.zero_root();
      for (int k = i; k < j; ++k) wt[k - 1] = 1;
      r.var_weights_.push_back(wt);
      if (n == 2) {
        r.names_.push_back("x");
      } else if (n == 3) {
        r.names_.push_back(len == 1 ? (i == 1 ? "x" : "y") : "z");
      } else {
        r.names_.push_back("x" + std::to_string(i) + std::to_string(j));
      }
      ++r.nvars_;
    }
  // strict upper entries of g^{-1} = sum_k (-U)^k for the unitriangular g = 1 + U
  std::vector<std::vector<MultiPoly>> u(n, std::vector<MultiPoly>(n, MultiPoly(r.nvars_)));
  for (int i = 1; i < n; ++i)
    for (int j = i + 1; j <= n; ++j)
      u[i - 1][j - 1] = MultiPoly::variable(r.nvars_, r.var_of_pair_[i][j]);
  std::vector<std::vector<MultiPoly>> inv(n, std::vector<MultiPoly>(n, MultiPoly(r.nvars_)));
  std::vector<std::vector<MultiPoly>> pw = u;
  for (int i = 0; i < n; ++i) inv[i][i] = MultiPoly::constant(r.nvars_, Rat(1));
  for (int k = 1; k < n; ++k) {
    Rat sign = (k % 2) ? Rat(-1) : Rat(1);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) inv[i][j] += pw[i][j].scaled(sign);
    // next power
    std::vector<std::vector<MultiPoly>> nx(n, std::vector<MultiPoly>(n, MultiPoly(r.nvars_)));
    for (int i = 0; i < n; ++i)
      for (int l = 0; l < n; ++l) {
        if (pw[i][l].is_zero()) continue;
        for (int j = 0; j < n; ++j)
          if (!u[l][j].is_zero()) nx[i][j] += pw[i][l] * u[l][j];
      }
    pw = nx;
  }
  for (int k = 0; k < r.nvars_; ++k) {
    auto [i, j] = r.var_pair(k);
    r.inverse_entries_.push_back(inv[i - 1][j - 1]);
  }
  return r;
}

int CoordRing::var_index(int i, int j) const {
  if (i < 1 || j <= i || j > n_) throw std::invalid_argument("CoordRing: bad entry index");
  return var_of_pair_[i][j];
}

std::pair<int, int> CoordRing::var_pair(int k) const {
  for (int i = 1; i < n_; ++i)
    for (int j = i + 1; j <= n_; ++j)
      if (var_of_pair_[i][j] == k) return {i, j};
  throw std::invalid_argument("CoordRing: bad variable index");
}

MultiPoly CoordRing::coordinate(int i, int j) const {
  return MultiPoly::variable(nvars_, var_index(i, j));
}

bool CoordRing::is_homogeneous(const MultiPoly& f) const {
  if (f.is_zero()) return true;
  std::optional<RootVector> w;
  for (const auto& [e, c] : f.terms()) {
    RootVector nu = cd_.zero_root();
    for (int k = 0; k < nvars_; ++k)
      if (e[k])
        for (int l = 0; l < cd_.rank; ++l) nu[l] += e[k] * var_weights_[k][l];
    if (!w)
      w = nu;
    else if (*w != nu)
      return false;
  }
  return true;
}

RootVector CoordRing::weight(const MultiPoly& f) const {
  if (f.is_zero()) throw std::invalid_argument("weight of the zero element");
  std::optional<RootVector> w;
  for (const auto& [e, c] : f.terms()) {
    RootVector nu = cd_.zero_root();
    for (int k = 0; k < nvars_; ++k)
      if (e[k])
        for (int l = 0; l < cd_.rank; ++l) nu[l] += e[k] * var_weights_[k][l];
    if (!w)
      w = nu;
    else if (*w != nu)
      throw std::invalid_argument("weight of an inhomogeneous element");
  }
  return *w;
}

MultiPoly CoordRing::e_left(int i, const MultiPoly& f) const {
  if (i < 1 || i >= n_) throw std::invalid_argument("root index out of range");
  // translation by exp(s e_i) on the left adds s*(row i+1) to row i
  MultiPoly out = f.derivative(var_index(i, i + 1));
  for (int j = i + 2; j <= n_; ++j)
    out += MultiPoly::variable(nvars_, var_index(i + 1, j)) * f.derivative(var_index(i, j));
  return out;
}

MultiPoly CoordRing::e_right(int i, const MultiPoly& f) const {
  if (i < 1 || i >= n_) throw std::invalid_argument("root index out of range");
  // translation on the right adds s*(column i) to column i+1
  MultiPoly out = f.derivative(var_index(i, i + 1));
  for (int k = 1; k < i; ++k)
    out += MultiPoly::variable(nvars_, var_index(k, i)) * f.derivative(var_index(k, i + 1));
  return out;
}

int CoordRing::eps_left(int i, const MultiPoly& f) const {
  if (f.is_zero()) throw std::invalid_argument("eps of the zero element");
  int k = 0;
  MultiPoly g = e_left(i, f);
  while (!g.is_zero()) {
    ++k;
    g = e_left(i, g);
  }
  return k;
}

int CoordRing::eps_right(int i, const MultiPoly& f) const {
  if (f.is_zero()) throw std::invalid_argument("eps of the zero element");
  int k = 0;
  MultiPoly g = e_right(i, f);
  while (!g.is_zero()) {
    ++k;
    g = e_right(i, g);
  }
  return k;
}

Rat CoordRing::pairing(const Word& seq, const MultiPoly& f) const {
  MultiPoly g = f;
  for (int i : seq) {
    if (g.is_zero()) return Rat(0);
    g = e_left(i, g);
  }
  return g.coefficient(MultiPoly::Exponents(nvars_, 0));
}

std::vector<MultiPoly::Exponents> CoordRing::weight_monomials(const RootVector& nu) const {
  std::vector<MultiPoly::Exponents> out;
  MultiPoly::Exponents cur(nvars_, 0);
  RootVector rest = nu;
  auto rec = [&](auto&& self, int k) -> void {
    if (k == nvars_) {
      if (height(rest) == 0) out.push_back(cur);
      return;
    }
    int e = 0;
    while (true) {
      cur[k] = e;
      self(self, k + 1);
      // one more copy of variable k if its weight still fits
      bool fits = true;
      for (int l = 0; l < cd_.rank; ++l)
        if (rest[l] < var_weights_[k][l]) fits = false;
      if (!fits) break;
      for (int l = 0; l < cd_.rank; ++l) rest[l] -= var_weights_[k][l];
      ++e;
    }
    for (int l = 0; l < cd_.rank; ++l) rest[l] += e * var_weights_[k][l];
    cur[k] = 0;
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end(), MultiPoly::grlex_less);
  return out;
}

MultiPoly CoordRing::star(const MultiPoly& f) const {
  return f.substitute(inverse_entries_);
}

int BasisFamily::index_of(const MultiPoly& f) const {
  for (std::size_t k = 0; k < elems.size(); ++k)
    if (elems[k].f == f) return (int)k;
  return -1;
}

namespace {

struct Piece {
  std::vector<MultiPoly::Exponents> monos;
  std::map<MultiPoly::Exponents, int> pos;
};

Piece build_piece(const CoordRing& ring, const RootVector& nu) {
  Piece p;
  p.monos = ring.weight_monomials(nu);
  for (std::size_t k = 0; k < p.monos.size(); ++k) p.pos[p.monos[k]] = (int)k;
  return p;
}

std::optional<std::vector<Rat>> coords_in(const Piece& p, const MultiPoly& f) {
  std::vector<Rat> c(p.monos.size(), Rat(0));
  for (const auto& [e, v] : f.terms()) {
    auto it = p.pos.find(e);
    if (it == p.pos.end()) return std::nullopt;
    c[it->second] = v;
  }
  return c;
}

MultiPoly from_coords(const CoordRing& ring, const Piece& p, const std::vector<Rat>& c) {
  MultiPoly f(ring.nvars());
  for (std::size_t k = 0; k < c.size(); ++k)
    if (c[k] != 0) f += MultiPoly::monomial(ring.nvars(), p.monos[k], c[k]);
  return f;
}

MultiPoly apply_op(const CoordRing& ring, char side, int i, const MultiPoly& f) {
  return side == 'L' ? ring.e_left(i, f) : ring.e_right(i, f);
}

// matrix of e_i (one side) from the nu-piece to the (nu - alpha_i)-piece
MatQ op_matrix(const CoordRing& ring, char side, int i, const Piece& from, const Piece& to) {
  MatQ m(to.monos.size(), from.monos.size());
  for (std::size_t k = 0; k < from.monos.size(); ++k) {
    MultiPoly g = apply_op(ring, side, i,
                           MultiPoly::monomial(ring.nvars(), from.monos[k], Rat(1)));
    if (g.is_zero()) continue;
    auto c = coords_in(to, g);
    if (!c) throw std::logic_error("operator image escapes its weight piece");
    for (std::size_t r = 0; r < c->size(); ++r) m(r, k) = (*c)[r];
  }
  return m;
}

// rank of e_i^m on the nu-piece; zero map when a step leaves the cone
std::size_t power_rank(const CoordRing& ring, char side, int i, const RootVector& nu, int m) {
  RootVector cur = nu;
  Piece from = build_piece(ring, cur);
  MatQ acc = MatQ::identity(from.monos.size());
  for (int step = 0; step < m; ++step) {
    RootVector next = cur;
    next[i - 1] -= 1;
    if (!is_nonneg(next)) return 0;
    Piece to = build_piece(ring, next);
    acc = op_matrix(ring, side, i, from, to) * acc;
    cur = next;
    from = to;
  }
  return acc.rank();
}

std::vector<RootVector> weights_of_height(int rank, int h) {
  std::vector<RootVector> out;
  RootVector cur(rank, 0);
  auto rec = [&](auto&& self, int k, int rest) -> void {
    if (k == rank - 1) {
      cur[k] = rest;
      out.push_back(cur);
      return;
    }
    for (int v = rest; v >= 0; --v) {
      cur[k] = v;
      self(self, k + 1, rest - v);
    }
  };
  rec(rec, 0, h);
  std::sort(out.begin(), out.end());
  return out;
}

int eps_of(const BasisElement& el, char side, int i) {
  return side == 'L' ? el.eps[i - 1] : el.eps_star[i - 1];
}

}  // namespace

BasisFamily make_family(const CoordRing& ring, const std::vector<MultiPoly>& polys) {
  BasisFamily fam;
  fam.ring = ring;
  const int rank = ring.cartan().rank;
  for (const auto& p : polys) {
    if (p.is_zero()) throw std::invalid_argument("family element is zero");
    BasisElement el;
    el.f = p;
    el.nu = ring.weight(p);
    for (int i = 1; i <= rank; ++i) {
      el.eps.push_back(ring.eps_left(i, p));
      el.eps_star.push_back(ring.eps_right(i, p));
    }
    el.e_link.assign(rank, -1);
    el.e_star_link.assign(rank, -1);
    fam.elems.push_back(std::move(el));
  }
  std::sort(fam.elems.begin(), fam.elems.end(),
            [](const BasisElement& a, const BasisElement& b) {
              long ha = height(a.nu), hb = height(b.nu);
              if (ha != hb) return ha < hb;
              if (a.nu != b.nu) return a.nu < b.nu;
              return MultiPoly::compare(a.f, b.f) < 0;
            });
  for (std::size_t k = 0; k < fam.elems.size(); ++k) {
    fam.by_weight[fam.elems[k].nu].push_back((int)k);
    fam.max_height = std::max(fam.max_height, (int)height(fam.elems[k].nu));
  }
  // best-effort crystal links by leading-term extraction; verify_biperfect
  // re-derives these with full error reporting
  for (auto& el : fam.elems) {
    for (char side : {'L', 'R'}) {
      for (int i = 1; i <= rank; ++i) {
        int ep = eps_of(el, side, i);
        if (ep == 0) continue;
        RootVector tau = el.nu;
        tau[i - 1] -= 1;
        auto it = fam.by_weight.find(tau);
        if (it == fam.by_weight.end()) continue;
        Piece piece = build_piece(ring, tau);
        const auto& members = it->second;
        if (members.size() != piece.monos.size()) continue;
        MatQ m(piece.monos.size(), members.size());
        bool okcols = true;
        for (std::size_t c = 0; c < members.size(); ++c) {
          auto col = coords_in(piece, fam.elems[members[c]].f);
          if (!col) {
            okcols = false;
            break;
          }
          for (std::size_t r = 0; r < col->size(); ++r) m(r, c) = (*col)[r];
        }
        if (!okcols) continue;
        auto rhs = coords_in(piece, apply_op(ring, side, i, el.f));
        if (!rhs) continue;
        auto sol = m.solve(*rhs);
        if (!sol) continue;
        int found = -1;
        bool unique = true;
        for (std::size_t c = 0; c < members.size(); ++c) {
          if ((*sol)[c] == 0) continue;
          if (eps_of(fam.elems[members[c]], side, i) != ep - 1) continue;
          if (found >= 0) unique = false;
          found = members[c];
        }
        if (found >= 0 && unique)
          (side == 'L' ? el.e_link : el.e_star_link)[i - 1] = found;
      }
    }
  }
  return fam;
}

BasisFamily sl2_family(int max_height) {
  CoordRing ring = CoordRing::make(2);
  std::vector<MultiPoly> polys;
  MultiPoly x = ring.coordinate(1, 2);
  for (int a = 0; a <= max_height; ++a) polys.push_back(x.pow(a));
  return make_family(ring, polys);
}

BasisFamily sl3_family(int max_height) {
  CoordRing ring = CoordRing::make(3);
  MultiPoly x = ring.coordinate(1, 2), y = ring.coordinate(2, 3), z = ring.coordinate(1, 3);
  MultiPoly w = x * y - z;
  std::vector<MultiPoly> polys;
  for (int a = 0; a <= max_height; ++a)
    for (int b = 0; a + 2 * b <= max_height; ++b)
      for (int c = 0; a + 2 * b + 2 * c <= max_height; ++c) {
        polys.push_back(x.pow(a) * z.pow(b) * w.pow(c));
        if (a > 0) polys.push_back(y.pow(a) * z.pow(b) * w.pow(c));
      }
  return make_family(ring, polys);
}

BiperfectReport verify_biperfect(const BasisFamily& fam, int max_height) {
  if (fam.max_height < max_height)
    throw std::invalid_argument("family is truncated below the requested height");
  const CoordRing& ring = fam.ring;
  const int rank = ring.cartan().rank;
  BiperfectReport rep;
  auto fail = [&](int elem, char side, int i, const RootVector& nu, std::string why) {
    rep.pass = false;
    rep.failures.push_back({elem, side, i, nu, std::move(why)});
  };

  for (int h = 0; h <= max_height; ++h) {
    for (const RootVector& nu : weights_of_height(rank, h)) {
      Piece piece = build_piece(ring, nu);
      const std::size_t d = piece.monos.size();
      auto it = fam.by_weight.find(nu);
      std::vector<int> members = (it == fam.by_weight.end()) ? std::vector<int>{} : it->second;
      if (members.size() != d) {
        fail(-1, '-', 0, nu, "piece has " + std::to_string(members.size()) +
                                 " elements, expected " + std::to_string(d));
        continue;
      }
      MatQ m(d, d);
      bool cols_ok = true;
      for (std::size_t c = 0; c < d; ++c) {
        auto col = coords_in(piece, fam.elems[members[c]].f);
        if (!col) {
          fail(members[c], '-', 0, nu, "element has terms outside its weight piece");
          cols_ok = false;
          break;
        }
        for (std::size_t r = 0; r < d; ++r) m(r, c) = (*col)[r];
      }
      if (!cols_ok) continue;
      if (m.rank() != d) {
        fail(-1, '-', 0, nu, "piece elements are linearly dependent");
        continue;
      }
      if (h == 0 && fam.elems[members[0]].f != ring.one())
        fail(members[0], '-', 0, nu, "constant piece is not the unit");

      for (char side : {'L', 'R'}) {
        for (int i = 1; i <= rank; ++i) {
          // kernel filtration: #members below each nilpotence level must
          // match the kernel dimension of the matching power
          int maxeps = 0;
          for (int mb : members) maxeps = std::max(maxeps, eps_of(fam.elems[mb], side, i));
          for (int pw = 1; pw <= maxeps + 1; ++pw) {
            std::size_t kdim = d - power_rank(ring, side, i, nu, pw);
            std::size_t cnt = 0;
            for (int mb : members)
              if (eps_of(fam.elems[mb], side, i) < pw) ++cnt;
            if (cnt != kdim) {
              fail(-1, side, i, nu,
                   "kernel filtration mismatch at power " + std::to_string(pw));
              break;
            }
          }
          // expansion axiom
          for (int mb : members) {
            const BasisElement& el = fam.elems[mb];
            int ep = eps_of(el, side, i);
            if (ep == 0) continue;
            RootVector tau = nu;
            tau[i - 1] -= 1;
            Piece tp = build_piece(ring, tau);
            auto tit = fam.by_weight.find(tau);
            if (tit == fam.by_weight.end() || tit->second.size() != tp.monos.size()) {
              fail(mb, side, i, nu, "target piece unavailable for expansion");
              continue;
            }
            const auto& tmem = tit->second;
            MatQ tm(tp.monos.size(), tmem.size());
            for (std::size_t c = 0; c < tmem.size(); ++c) {
              auto col = coords_in(tp, fam.elems[tmem[c]].f);
              if (!col) {
                fail(tmem[c], '-', 0, tau, "element has terms outside its weight piece");
                continue;
              }
              for (std::size_t r = 0; r < col->size(); ++r) tm(r, c) = (*col)[r];
            }
            MultiPoly image = apply_op(ring, side, i, el.f);
            auto rhs = coords_in(tp, image);
            std::optional<std::vector<Rat>> sol;
            if (rhs) sol = tm.solve(*rhs);
            if (!sol) {
              fail(mb, side, i, nu, "image does not expand in the target piece");
              continue;
            }
            int partner = -1;
            bool unique = true;
            for (std::size_t c = 0; c < tmem.size(); ++c) {
              if ((*sol)[c] == 0) continue;
              if (eps_of(fam.elems[tmem[c]], side, i) != ep - 1) continue;
              if (partner >= 0) unique = false;
              partner = tmem[c];
            }
            if (partner < 0) {
              fail(mb, side, i, nu, "no leading partner at nilpotence level " +
                                        std::to_string(ep - 1));
              continue;
            }
            if (!unique) {
              fail(mb, side, i, nu, "ambiguous leading partner");
              continue;
            }
            // residual with the prescribed scalar must die under e^(ep-1)
            MultiPoly residual = image - fam.elems[partner].f.scaled(Rat(ep));
            for (int k = 0; k < ep - 1 && !residual.is_zero(); ++k)
              residual = apply_op(ring, side, i, residual);
            if (!residual.is_zero())
              fail(mb, side, i, nu,
                   "residual escapes the kernel of e^" + std::to_string(ep - 1));
          }
        }
      }
    }
  }
  return rep;
}

ExtractedCrystal extract_crystal(const BasisFamily& fam, int height) {
  ExtractedCrystal x;
  for (const auto& el : fam.elems) {
    if (bibasis::height(el.nu) > height) break;
    x.nu.push_back(el.nu);
    x.eps.push_back(el.eps);
    x.eps_star.push_back(el.eps_star);
    x.e_link.push_back(el.e_link);
    x.e_star_link.push_back(el.e_star_link);
  }
  return x;
}

BinfMatch match_binf(const BasisFamily& fam, int height) {
  const CartanData& cd = fam.ring.cartan();
  CrystalGraph g = enumerate_binf(cd, height);
  using Sig = std::pair<RootVector, std::pair<std::vector<int>, std::vector<int>>>;
  std::map<Sig, std::vector<int>> nodes_by_sig;
  for (std::size_t k = 0; k < g.nodes.size(); ++k) {
    std::vector<int> e, es;
    for (int i = 1; i <= cd.rank; ++i) {
      e.push_back((int)binf_epsilon(cd, g.nodes[k], i));
      es.push_back((int)binf_epsilon_star(cd, g.nodes[k], i));
    }
    nodes_by_sig[{binf_nu(cd, g.nodes[k]), {e, es}}].push_back((int)k);
  }
  std::map<Sig, std::vector<int>> elems_by_sig;
  std::size_t nelems = 0;
  for (std::size_t k = 0; k < fam.elems.size(); ++k) {
    const auto& el = fam.elems[k];
    if (bibasis::height(el.nu) > height) break;
    elems_by_sig[{el.nu, {el.eps, el.eps_star}}].push_back((int)k);
    ++nelems;
  }
  BinfMatch out;
  out.image.assign(nelems, BinfElement{});
  out.ok = true;
  out.unique = true;
  for (const auto& [sig, es] : elems_by_sig) {
    auto it = nodes_by_sig.find(sig);
    std::size_t have = (it == nodes_by_sig.end()) ? 0 : it->second.size();
    if (have != es.size()) {
      out.ok = false;
      out.reason = "signature count mismatch at weight " + format_root(sig.first);
      break;
    }
    if (es.size() > 1) out.unique = false;
    for (std::size_t k = 0; k < es.size(); ++k)
      out.image[es[k]] = g.nodes[it->second[k]];
  }
  if (out.ok) {
    std::size_t total = 0;
    for (const auto& [sig, ns] : nodes_by_sig) total += ns.size();
    if (total != nelems) {
      out.ok = false;
      out.reason = "element counts differ";
    }
  }
  if (!out.ok) {
    out.unique = false;
    out.image.clear();
  }
  return out;
}

namespace {

struct SolvedElem {
  MultiPoly f;
  std::vector<int> epsL, epsR;
};

using LowerMap = std::map<RootVector, std::vector<SolvedElem>>;

struct PieceOutcome {
  bool infinite = false;
  std::vector<std::vector<SolvedElem>> families;
  UniquenessPiece report;
};

struct ActiveOp {
  char side;
  int i;
};

// all distinct orderings of a value multiset
std::vector<std::vector<int>> distinct_perms(std::vector<int> vals) {
  std::sort(vals.begin(), vals.end());
  std::vector<std::vector<int>> out;
  do {
    out.push_back(vals);
  } while (std::next_permutation(vals.begin(), vals.end()));
  return out;
}

int true_eps(const CoordRing& ring, char side, int i, const MultiPoly& f) {
  return side == 'L' ? ring.eps_left(i, f) : ring.eps_right(i, f);
}

PieceOutcome solve_piece(const CoordRing& ring, const LowerMap& lower, const RootVector& nu,
                         const std::vector<ActiveOp>& active) {
  const int rank = ring.cartan().rank;
  PieceOutcome out;
  out.report.nu = nu;
  Piece piece = build_piece(ring, nu);
  const std::size_t d = piece.monos.size();

  // forced nilpotence-level multiset per operator, from kernel dimensions
  std::vector<std::vector<int>> level_multiset(active.size());
  for (std::size_t a = 0; a < active.size(); ++a) {
    std::vector<std::size_t> kdim{0};
    while (kdim.back() < d)
      kdim.push_back(d - power_rank(ring, active[a].side, active[a].i, nu, (int)kdim.size()));
    for (std::size_t v = 0; v + 1 < kdim.size(); ++v)
      for (std::size_t c = 0; c < kdim[v + 1] - kdim[v]; ++c)
        level_multiset[a].push_back((int)v);
  }

  std::vector<std::vector<std::vector<int>>> perms;
  for (const auto& ms : level_multiset) perms.push_back(distinct_perms(ms));

  // cached operator matrices and target data
  struct Target {
    RootVector tau;
    bool in_cone = false;
    Piece piece;
    MatQ op;                       // nu-piece -> tau-piece
    std::vector<const SolvedElem*> members;
    std::vector<std::vector<Rat>> member_coords;
  };
  std::vector<Target> targets(active.size());
  for (std::size_t a = 0; a < active.size(); ++a) {
    Target& t = targets[a];
    t.tau = nu;
    t.tau[active[a].i - 1] -= 1;
    t.in_cone = is_nonneg(t.tau);
    if (!t.in_cone) continue;
    t.piece = build_piece(ring, t.tau);
    t.op = op_matrix(ring, active[a].side, active[a].i, piece, t.piece);
    auto it = lower.find(t.tau);
    if (it != lower.end())
      for (const auto& se : it->second) {
        t.members.push_back(&se);
        auto c = coords_in(t.piece, se.f);
        if (!c) throw std::logic_error("lower element escapes its piece");
        t.member_coords.push_back(*c);
      }
  }

  auto eps_of_solved = [&](const SolvedElem& se, char side, int i) {
    return side == 'L' ? se.epsL[i - 1] : se.epsR[i - 1];
  };

  std::set<std::vector<std::vector<int>>> seen_assignments;
  std::set<std::vector<std::string>> family_keys;
  bool report_filled = false;

  std::vector<std::size_t> op_idx(active.size(), 0);
  while (true) {
    // slot tuples for this combination of orderings
    std::vector<std::vector<int>> slots(d, std::vector<int>(active.size()));
    for (std::size_t a = 0; a < active.size(); ++a)
      for (std::size_t t = 0; t < d; ++t) slots[t][a] = perms[a][op_idx[a]][t];
    std::vector<std::vector<int>> canon = slots;
    std::sort(canon.begin(), canon.end());
    if (seen_assignments.insert(canon).second) {
      // solve each slot of the (deduped) assignment
      struct SlotOut {
        std::vector<std::vector<Rat>> points;
        bool infinite = false;
        int dim = 0;
        MultiPoly witness;
      };
      std::vector<SlotOut> solved(d);
      bool feasible = true;
      for (std::size_t t = 0; t < d && feasible; ++t) {
        const std::vector<int>& pre = canon[t];
        SlotOut& so = solved[t];
        so.witness = MultiPoly(ring.nvars());
        // partner choices per operator with positive prescribed level
        std::vector<std::vector<int>> choices(active.size());
        bool slot_ok = true;
        for (std::size_t a = 0; a < active.size(); ++a) {
          if (pre[a] == 0) {
            choices[a] = {-1};
            continue;
          }
          if (!targets[a].in_cone) {
            slot_ok = false;
            break;
          }
          for (std::size_t c = 0; c < targets[a].members.size(); ++c)
            if (eps_of_solved(*targets[a].members[c], active[a].side, active[a].i) ==
                pre[a] - 1)
              choices[a].push_back((int)c);
          if (choices[a].empty()) {
            slot_ok = false;
            break;
          }
        }
        if (!slot_ok) {
          feasible = false;
          break;
        }
        std::vector<std::size_t> ch(active.size(), 0);
        while (true) {
          // assemble the affine system for this partner choice
          std::vector<std::vector<Rat>> rows;
          std::vector<Rat> rhs;
          for (std::size_t a = 0; a < active.size(); ++a) {
            // closed part of the level prescription: e^(v+1) u = 0
            {
              RootVector cur = nu;
              Piece from = piece;
              MatQ acc = MatQ::identity(d);
              bool zero_map = false;
              for (int step = 0; step <= pre[a]; ++step) {
                RootVector next = cur;
                next[active[a].i - 1] -= 1;
                if (!is_nonneg(next)) {
                  zero_map = true;
                  break;
                }
                Piece to = build_piece(ring, next);
                acc = op_matrix(ring, active[a].side, active[a].i, from, to) * acc;
                cur = next;
                from = to;
              }
              if (!zero_map)
                for (std::size_t r = 0; r < acc.rows(); ++r) {
                  std::vector<Rat> row(d);
                  for (std::size_t j = 0; j < d; ++j) row[j] = acc(r, j);
                  rows.push_back(std::move(row));
                  rhs.push_back(Rat(0));
                }
            }
            if (pre[a] == 0) continue;
            const Target& tg = targets[a];
            // leading-term prescription modulo the span of lower levels
            std::vector<std::vector<Rat>> resid;
            for (std::size_t c = 0; c < tg.members.size(); ++c)
              if (eps_of_solved(*tg.members[c], active[a].side, active[a].i) <= pre[a] - 2)
                resid.push_back(tg.member_coords[c]);
            std::size_t dt = tg.piece.monos.size();
            std::vector<std::vector<Rat>> cmpl;
            if (resid.empty()) {
              for (std::size_t r = 0; r < dt; ++r) {
                std::vector<Rat> unit(dt, Rat(0));
                unit[r] = 1;
                cmpl.push_back(std::move(unit));
              }
            } else {
              MatQ wt(dt, resid.size());
              for (std::size_t c = 0; c < resid.size(); ++c)
                for (std::size_t r = 0; r < dt; ++r) wt(r, c) = resid[c][r];
              cmpl = wt.transpose().kernel_basis();
            }
            const auto& pc = tg.member_coords[choices[a][ch[a]]];
            for (const auto& ell : cmpl) {
              std::vector<Rat> row(d, Rat(0));
              Rat b(0);
              for (std::size_t r = 0; r < dt; ++r) {
                if (ell[r] == 0) continue;
                for (std::size_t j = 0; j < d; ++j) row[j] += ell[r] * tg.op(r, j);
                b += ell[r] * pc[r];
              }
              rows.push_back(std::move(row));
              rhs.push_back(b * Rat(pre[a]));
            }
          }
          MatQ sys(rows.size(), d);
          for (std::size_t r = 0; r < rows.size(); ++r)
            for (std::size_t j = 0; j < d; ++j) sys(r, j) = rows[r][j];
          auto part = sys.solve(rhs);
          if (part) {
            auto null = sys.kernel_basis();
            auto valid = [&](const std::vector<Rat>& u) {
              MultiPoly f = from_coords(ring, piece, u);
              if (f.is_zero()) return false;
              for (std::size_t a = 0; a < active.size(); ++a)
                if (true_eps(ring, active[a].side, active[a].i, f) != pre[a]) return false;
              return true;
            };
            if (null.empty()) {
              if (valid(*part)) so.points.push_back(*part);
            } else {
              // the invalid locus is a finite union of proper affine
              // subspaces, so a modest grid over the kernel coordinates
              // finds a witness whenever one exists
              int g = (int)(2 * active.size() + 3);
              std::vector<int> coef(null.size(), 0);
              while (true) {
                std::vector<Rat> u = *part;
                for (std::size_t k = 0; k < null.size(); ++k)
                  if (coef[k])
                    for (std::size_t j = 0; j < d; ++j)
                      u[j] += null[k][j] * Rat(coef[k]);
                if (valid(u)) {
                  so.infinite = true;
                  so.dim = (int)null.size();
                  so.witness = from_coords(ring, piece, u);
                  break;
                }
                std::size_t k = 0;
                while (k < null.size() && ++coef[k] > g) coef[k++] = 0;
                if (k == null.size()) break;
              }
            }
          }
          // next partner choice
          std::size_t a = 0;
          while (a < active.size() && ++ch[a] == choices[a].size()) ch[a++] = 0;
          if (a == active.size()) break;
        }
        if (so.points.empty() && !so.infinite) feasible = false;
      }

      if (feasible) {
        bool any_inf = false;
        for (const auto& so : solved)
          if (so.infinite) any_inf = true;
        if (any_inf) {
          out.infinite = true;
          if (!report_filled) {
            for (std::size_t t = 0; t < d; ++t) {
              SlotSolution ss;
              for (std::size_t a = 0; a < active.size(); ++a)
                (active[a].side == 'L' ? ss.eps : ss.eps_star).push_back(canon[t][a]);
              while ((int)ss.eps.size() < rank) ss.eps.push_back(-1);
              while ((int)ss.eps_star.size() < rank) ss.eps_star.push_back(-1);
              ss.dim = solved[t].infinite ? solved[t].dim : 0;
              ss.witness = solved[t].infinite
                               ? solved[t].witness
                               : from_coords(ring, piece, solved[t].points[0]);
              out.report.slots.push_back(std::move(ss));
            }
            report_filled = true;
          }
        } else {
          // every combination of slot points, kept when jointly independent
          std::vector<std::size_t> pick(d, 0);
          while (true) {
            std::vector<std::vector<Rat>> vecs;
            for (std::size_t t = 0; t < d; ++t) vecs.push_back(solved[t].points[pick[t]]);
            if (span_rank(vecs) == d) {
              std::vector<SolvedElem> fammembers;
              std::vector<std::string> key;
              for (std::size_t t = 0; t < d; ++t) {
                SolvedElem se;
                se.f = from_coords(ring, piece, vecs[t]);
                for (int i = 1; i <= rank; ++i) {
                  se.epsL.push_back(ring.eps_left(i, se.f));
                  se.epsR.push_back(ring.eps_right(i, se.f));
                }
                fammembers.push_back(std::move(se));
              }
              std::sort(fammembers.begin(), fammembers.end(),
                        [](const SolvedElem& a, const SolvedElem& b) {
                          return MultiPoly::compare(a.f, b.f) < 0;
                        });
              for (const auto& se : fammembers)
                key.push_back(se.f.to_string(ring.names()));
              if (family_keys.insert(key).second) {
                out.families.push_back(fammembers);
                if (!report_filled) {
                  for (std::size_t t = 0; t < d; ++t) {
                    SlotSolution ss;
                    ss.eps = fammembers[t].epsL;
                    ss.eps_star = fammembers[t].epsR;
                    ss.dim = 0;
                    ss.witness = fammembers[t].f;
                    out.report.slots.push_back(std::move(ss));
                  }
                  report_filled = true;
                }
              }
            }
            std::size_t t = 0;
            while (t < d && ++pick[t] == solved[t].points.size()) pick[t++] = 0;
            if (t == d) break;
          }
        }
      }
    }
    // next combination of orderings
    std::size_t a = 0;
    while (a < active.size() && ++op_idx[a] == perms[a].size()) op_idx[a++] = 0;
    if (a == active.size()) break;
  }

  out.report.families = out.infinite ? -1 : (long)out.families.size();
  return out;
}

}  // namespace

UniquenessResult uniqueness_search(int max_height, bool require_right) {
  CoordRing ring = CoordRing::make(3);
  const int rank = ring.cartan().rank;
  std::vector<ActiveOp> active;
  for (int i = 1; i <= rank; ++i) active.push_back({'L', i});
  if (require_right)
    for (int i = 1; i <= rank; ++i) active.push_back({'R', i});

  std::vector<RootVector> order;
  for (int h = 1; h <= max_height; ++h)
    for (const auto& nu : weights_of_height(rank, h)) order.push_back(nu);

  UniquenessResult res;
  bool infinite = false;
  std::vector<LowerMap> complete;

  LowerMap base;
  SolvedElem unit;
  unit.f = ring.one();
  unit.epsL.assign(rank, 0);
  unit.epsR.assign(rank, 0);
  base[ring.cartan().zero_root()] = {unit};

  auto dfs = [&](auto&& self, const LowerMap& lower, std::size_t idx) -> void {
    if (idx == order.size()) {
      complete.push_back(lower);
      return;
    }
    PieceOutcome oc = solve_piece(ring, lower, order[idx], active);
    if (idx == res.pieces.size()) res.pieces.push_back(oc.report);
    if (oc.infinite) {
      infinite = true;
      return;
    }
    for (const auto& fampiece : oc.families) {
      LowerMap next = lower;
      next[order[idx]] = fampiece;
      self(self, next, idx + 1);
    }
  };
  dfs(dfs, base, 0);

  res.family_count = infinite ? -1 : (long)complete.size();
  if (res.family_count == 1) {
    std::vector<MultiPoly> polys;
    for (const auto& [nu, elems] : complete[0])
      for (const auto& se : elems) polys.push_back(se.f);
    res.family = make_family(ring, polys);
  }
  return res;
}

PsiImage psi_image_basis(const BasisFamily& fam, const Weight& lambda, int max_height) {
  const CoordRing& ring = fam.ring;
  const CartanData& cd = ring.cartan();
  if ((int)lambda.size() != cd.rank) throw std::invalid_argument("lambda has wrong rank");
  if (!cd.dominant(lambda)) throw std::invalid_argument("lambda must be dominant");
  PsiImage out;
  out.dims_ok = true;
  for (std::size_t k = 0; k < fam.elems.size(); ++k) {
    const auto& el = fam.elems[k];
    if (height(el.nu) > max_height) break;
    bool in = true;
    for (int i = 1; i <= cd.rank; ++i)
      if (el.eps_star[i - 1] > lambda[i - 1]) in = false;
    if (in) out.elems.push_back((int)k);
  }
  // per piece, the selected elements must exactly span the joint kernel of
  // the (lambda_i + 1)-st powers of the right operators
  for (int h = 0; h <= max_height; ++h) {
    for (const RootVector& nu : weights_of_height(cd.rank, h)) {
      Piece piece = build_piece(ring, nu);
      std::size_t d = piece.monos.size();
      std::vector<std::vector<Rat>> rows;
      for (int i = 1; i <= cd.rank; ++i) {
        int pw = (int)lambda[i - 1] + 1;
        RootVector cur = nu;
        Piece from = piece;
        MatQ acc = MatQ::identity(d);
        bool zero_map = false;
        for (int step = 0; step < pw; ++step) {
          RootVector next = cur;
          next[i - 1] -= 1;
          if (!is_nonneg(next)) {
            zero_map = true;
            break;
          }
          Piece to = build_piece(ring, next);
          acc = op_matrix(ring, 'R', i, from, to) * acc;
          cur = next;
          from = to;
        }
        if (zero_map) continue;
        for (std::size_t r = 0; r < acc.rows(); ++r) {
          std::vector<Rat> row(d);
          for (std::size_t j = 0; j < d; ++j) row[j] = acc(r, j);
          rows.push_back(std::move(row));
        }
      }
      std::size_t kdim = d - span_rank(rows);
      std::size_t cnt = 0;
      for (int k : out.elems)
        if (fam.elems[k].nu == nu) ++cnt;
      if (cnt != kdim) out.dims_ok = false;
    }
  }
  return out;
}

std::string family_to_json(const BasisFamily& fam) {
  std::ostringstream os;
  os << "{\"schema\":\"basis-family/1\",\"n\":" << fam.ring.n()
     << ",\"max_height\":" << fam.max_height << ",\"elements\":[";
  for (std::size_t k = 0; k < fam.elems.size(); ++k) {
    const auto& el = fam.elems[k];
    if (k) os << ",";
    os << "{\"weight\":[";
    for (int l = 0; l < (int)el.nu.size(); ++l) os << (l ? "," : "") << el.nu[l];
    os << "],\"poly\":\"" << el.f.to_string(fam.ring.names()) << "\",\"eps\":[";
    for (std::size_t l = 0; l < el.eps.size(); ++l) os << (l ? "," : "") << el.eps[l];
    os << "],\"eps_star\":[";
    for (std::size_t l = 0; l < el.eps_star.size(); ++l)
      os << (l ? "," : "") << el.eps_star[l];
    os << "]}";
  }
  os << "]}";
  return os.str();
}

}  // namespace bibasis
