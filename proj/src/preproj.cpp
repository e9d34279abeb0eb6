#include "bibasis/preproj.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "bibasis/measures.hpp"

namespace bibasis {

namespace {

// ---------------------------------------------------------------- F_p bits

long mod_inv(long a, long p) {
  long t = 0, nt = 1, r = p, nr = ((a % p) + p) % p;
  while (nr != 0) {
    long q = r / nr;
    long tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = r - q * nr;
    r = nr;
    nr = tmp;
  }
  return ((t % p) + p) % p;
}

long rat_mod(const Rat& x, long p) {
  mpz_class den = x.get_den() % p;
  long d = den.get_si();
  if (d == 0) throw std::logic_error("prime divides a denominator");
  mpz_class num = x.get_num() % p;
  long n = ((num.get_si() % p) + p) % p;
  return (n * mod_inv(d, p)) % p;
}

using FRow = std::vector<long>;

// Reduced-row-echelon basis of a subspace of F_p^dim.  Canonical: rows are
// sorted by pivot column and fully reduced, so equal subspaces compare equal.
struct FpSpace {
  long p = 2;
  int dim = 0;
  std::vector<FRow> rows;
  std::vector<int> pivots;

  int size() const { return static_cast<int>(rows.size()); }

  void reduce(FRow& v) const {
    for (std::size_t r = 0; r < rows.size(); ++r) {
      long c = v[pivots[r]];
      if (c == 0) continue;
      const FRow& row = rows[r];
      for (int j = 0; j < dim; ++j) v[j] = ((v[j] - c * row[j]) % p + p) % p;
    }
  }

  bool contains(FRow v) const {
    reduce(v);
    for (long a : v)
      if (a != 0) return false;
    return true;
  }

  bool insert(FRow v) {
    reduce(v);
    int piv = -1;
    for (int j = 0; j < dim; ++j)
      if (v[j] != 0) {
        piv = j;
        break;
      }
    if (piv < 0) return false;
    long inv = mod_inv(v[piv], p);
    for (int j = 0; j < dim; ++j) v[j] = (v[j] * inv) % p;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      long c = rows[r][piv];
      if (c == 0) continue;
      for (int j = 0; j < dim; ++j)
        rows[r][j] = ((rows[r][j] - c * v[j]) % p + p) % p;
    }
    std::size_t pos = 0;
    while (pos < pivots.size() && pivots[pos] < piv) ++pos;
    rows.insert(rows.begin() + pos, v);
    pivots.insert(pivots.begin() + pos, piv);
    return true;
  }

  bool operator==(const FpSpace& o) const { return rows == o.rows; }
  bool operator<(const FpSpace& o) const { return rows < o.rows; }
};

FpSpace fp_empty(long p, int dim) {
  FpSpace s;
  s.p = p;
  s.dim = dim;
  return s;
}

FRow mat_vec(const std::vector<FRow>& mat, const FRow& v, long p) {
  FRow out(mat.size(), 0);
  for (std::size_t i = 0; i < mat.size(); ++i) {
    long acc = 0;
    for (std::size_t j = 0; j < v.size(); ++j) acc += mat[i][j] * v[j];
    out[i] = ((acc % p) + p) % p;
  }
  return out;
}

std::vector<FRow> fp_kernel(std::vector<FRow> rows, int d, long p) {
  std::vector<int> pivots;
  std::size_t r = 0;
  for (int c = 0; c < d && r < rows.size(); ++c) {
    std::size_t pr = r;
    while (pr < rows.size() && rows[pr][c] == 0) ++pr;
    if (pr == rows.size()) continue;
    std::swap(rows[r], rows[pr]);
    long inv = mod_inv(rows[r][c], p);
    for (int j = 0; j < d; ++j) rows[r][j] = (rows[r][j] * inv) % p;
    for (std::size_t k = 0; k < rows.size(); ++k) {
      if (k == r) continue;
      long f = rows[k][c];
      if (f == 0) continue;
      for (int j = 0; j < d; ++j)
        rows[k][j] = ((rows[k][j] - f * rows[r][j]) % p + p) % p;
    }
    pivots.push_back(c);
    ++r;
  }
  std::vector<FRow> ker;
  std::vector<bool> is_pivot(d, false);
  for (int c : pivots) is_pivot[c] = true;
  for (int c = 0; c < d; ++c) {
    if (is_pivot[c]) continue;
    FRow v(d, 0);
    v[c] = 1;
    for (std::size_t k = 0; k < pivots.size(); ++k)
      v[pivots[k]] = (p - rows[k][c]) % p;
    ker.push_back(v);
  }
  return ker;
}

int fp_rank(const std::vector<FRow>& rows, int d, long p) {
  FpSpace s = fp_empty(p, d);
  for (const FRow& r : rows) s.insert(r);
  return s.size();
}

std::vector<FRow> reduce_mat(const MatQ& m, long p) {
  std::vector<FRow> out(m.rows(), FRow(m.cols(), 0));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = rat_mod(m(i, j), p);
  return out;
}

// all subspaces of F_p^d, one canonical echelon basis each
std::vector<FpSpace> enumerate_subspaces(long p, int d) {
  std::vector<FpSpace> out;
  for (int k = 0; k <= d; ++k) {
    std::vector<int> sel(k);
    std::vector<bool> mask(d, false);
    std::function<void(int, int)> choose = [&](int start, int got) {
      if (got == k) {
        std::vector<std::pair<int, int>> free_pos;  // (row, col)
        for (int r = 0; r < k; ++r)
          for (int j = sel[r] + 1; j < d; ++j)
            if (!mask[j]) free_pos.emplace_back(r, j);
        std::vector<long> odo(free_pos.size(), 0);
        while (true) {
          FpSpace s = fp_empty(p, d);
          s.rows.assign(k, FRow(d, 0));
          s.pivots.assign(sel.begin(), sel.end());
          for (int r = 0; r < k; ++r) s.rows[r][sel[r]] = 1;
          for (std::size_t t = 0; t < free_pos.size(); ++t)
            s.rows[free_pos[t].first][free_pos[t].second] = odo[t];
          out.push_back(std::move(s));
          std::size_t t = 0;
          while (t < odo.size() && odo[t] == p - 1) odo[t++] = 0;
          if (t == odo.size()) break;
          ++odo[t];
        }
        return;
      }
      for (int c = start; c <= d - (k - got); ++c) {
        sel[got] = c;
        mask[c] = true;
        choose(c + 1, got + 1);
        mask[c] = false;
      }
    };
    choose(0, 0);
  }
  return out;
}

// normalized representatives of the lines in span(reps) taken modulo the
// space the reps extend: first nonzero coefficient is 1
template <typename F>
void for_each_line(const std::vector<FRow>& reps, long p, int dim, F&& fn) {
  int c = static_cast<int>(reps.size());
  for (int lead = 0; lead < c; ++lead) {
    int tail = c - lead - 1;
    std::vector<long> odo(tail, 0);
    while (true) {
      FRow v = reps[lead];
      for (int t = 0; t < tail; ++t) {
        if (odo[t] != 0)
          for (int j = 0; j < dim; ++j)
            v[j] = (v[j] + odo[t] * reps[lead + 1 + t][j]) % p;
      }
      fn(v);
      int t = 0;
      while (t < tail && odo[t] == p - 1) odo[t++] = 0;
      if (t == tail) break;
      ++odo[t];
    }
  }
}

// ------------------------------------------------------------ prime plumbing

bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Primes at which the module reduces faithfully.  avoid_numerators also
// skips primes killing a nonzero entry: point counts follow one polynomial
// only while the reduction keeps the generic shape of the maps.
std::vector<long> module_primes(const PPModule& m, std::size_t count,
                                bool avoid_numerators) {
  std::vector<long> out;
  for (long p = 2; out.size() < count; ++p) {
    if (!is_prime(p)) continue;
    bool ok = true;
    for (const MatQ& mat : m.mats) {
      for (std::size_t i = 0; i < mat.rows() && ok; ++i)
        for (std::size_t j = 0; j < mat.cols() && ok; ++j) {
          const Rat& x = mat(i, j);
          if (x == 0) continue;
          if (mpz_class(x.get_den() % p) == 0) ok = false;
          else if (avoid_numerators && mpz_class(x.get_num() % p) == 0) ok = false;
        }
      if (!ok) break;
    }
    if (ok) out.push_back(p);
  }
  return out;
}

Rat lagrange_eval(const std::vector<long>& xs, const std::vector<Rat>& ys,
                  std::size_t npts, const Rat& at) {
  Rat acc(0);
  for (std::size_t k = 0; k < npts; ++k) {
    Rat term = ys[k];
    for (std::size_t j = 0; j < npts; ++j) {
      if (j == k) continue;
      term *= at - Rat(xs[j]);
      term /= Rat(xs[k] - xs[j]);
    }
    acc += term;
  }
  return acc;
}

long rat_to_long(const Rat& x, const char* what) {
  if (x.get_den() != 1)
    throw std::runtime_error(std::string(what) + ": value at q = 1 is not an integer");
  return static_cast<long>(x.get_num().get_si());
}

// fit a polynomial of degree <= deg through the first deg+1 points, insist
// the remaining sampled primes lie on it, and evaluate at q = 1
Rat interpolate_at_one(const std::vector<long>& primes, const std::vector<Rat>& counts,
                       long deg, const char* what) {
  std::size_t npts = static_cast<std::size_t>(deg) + 1;
  for (std::size_t k = npts; k < primes.size(); ++k) {
    Rat predicted = lagrange_eval(primes, counts, npts, Rat(primes[k]));
    if (predicted != counts[k])
      throw std::runtime_error(
          std::string(what) +
          ": point counts do not follow one polynomial across the sampled primes");
  }
  return lagrange_eval(primes, counts, npts, Rat(1));
}

mpz_class mpz_pow(long base, unsigned long e) {
  mpz_class r;
  mpz_class b(base);
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

// ------------------------------------------------------------- flag counting

// representatives of a complement of `inside` within inside + span(extra)
std::vector<FRow> complement_reps(const FpSpace& inside, const std::vector<FRow>& extra) {
  FpSpace tmp = inside;
  std::vector<FRow> reps;
  for (const FRow& w : extra)
    if (tmp.insert(w)) reps.push_back(w);
  return reps;
}

struct FlagCounter {
  long p;
  const QuiverData& quiver;
  const RootVector& dims;
  const Word& seq;
  std::vector<std::vector<FRow>> mats;  // arrow matrices mod p
  std::vector<FpSpace> sub;             // current submodule

  // admissible vectors at vertex v (0-based): arrows out of v map them into
  // the current submodule at the target
  std::vector<FRow> admissible(int v) const {
    int d = static_cast<int>(dims[v]);
    std::vector<FRow> cond;
    for (int h : quiver.arrows_from(v + 1)) {
      int tgt = quiver.arrows[h].to - 1;
      int dt = static_cast<int>(dims[tgt]);
      std::vector<FRow> block(dt, FRow(d, 0));
      for (int j = 0; j < d; ++j) {
        FRow e(d, 0);
        e[j] = 1;
        FRow img = mat_vec(mats[h], e, p);
        sub[tgt].reduce(img);
        for (int r = 0; r < dt; ++r) block[r][j] = img[r];
      }
      for (auto& row : block) cond.push_back(std::move(row));
    }
    if (cond.empty()) {
      std::vector<FRow> full;
      for (int j = 0; j < d; ++j) {
        FRow e(d, 0);
        e[j] = 1;
        full.push_back(std::move(e));
      }
      return full;
    }
    return fp_kernel(std::move(cond), d, p);
  }

  long long run(std::size_t k) {
    if (k == seq.size()) return 1;
    int v = seq[k] - 1;
    int d = static_cast<int>(dims[v]);
    // representatives of the admissible space modulo the current piece at v
    std::vector<FRow> reps = complement_reps(sub[v], admissible(v));
    int c = static_cast<int>(reps.size());
    if (c == 0) return 0;
    if (k + 1 == seq.size()) {
      // no deeper branching: count the lines in one stroke
      long long lines = 0, pw = 1;
      for (int t = 0; t < c; ++t) {
        lines += pw;
        pw *= p;
      }
      return lines;
    }
    long long total = 0;
    for_each_line(reps, p, d, [&](const FRow& vec) {
      FpSpace saved = sub[v];
      sub[v].insert(vec);
      total += run(k + 1);
      sub[v] = std::move(saved);
    });
    return total;
  }
};

long flag_degree_bound(const RootVector& dims, const Word& seq) {
  std::vector<long> prev(dims.size(), 0);
  long deg = 0;
  for (int letter : seq) {
    long d = dims[letter - 1] - prev[letter - 1] - 1;
    if (d > 0) deg += d;
    ++prev[letter - 1];
  }
  return deg;
}

mpz_class arrowless_flag_count(const RootVector& dims, const Word& seq, long p) {
  std::vector<long> prev(dims.size(), 0);
  mpz_class res = 1;
  for (int letter : seq) {
    long d = dims[letter - 1] - prev[letter - 1];
    mpz_class lines = (mpz_pow(p, static_cast<unsigned long>(d)) - 1) / (p - 1);
    res *= lines;
    ++prev[letter - 1];
  }
  return res;
}

void validate_seq(const PPModule& m, const Word& seq) {
  RootVector w(m.dims.size(), 0);
  for (int letter : seq) {
    if (letter < 1 || letter > static_cast<int>(m.dims.size()))
      throw std::invalid_argument("flag type: vertex out of range");
    ++w[letter - 1];
  }
  if (w != m.dims)
    throw std::invalid_argument("flag type does not spell the dimension vector");
}

// ------------------------------------------------------- stable subspaces

// dimension vectors of arrow-stable subspace tuples over F_p
std::set<RootVector> stable_dimvectors_fp(const PPModule& m, long p) {
  int r = static_cast<int>(m.dims.size());
  std::vector<std::vector<FpSpace>> choices(r);
  for (int v = 0; v < r; ++v)
    choices[v] = enumerate_subspaces(p, static_cast<int>(m.dims[v]));
  std::vector<std::vector<FRow>> mats(m.mats.size());
  for (std::size_t h = 0; h < m.mats.size(); ++h) mats[h] = reduce_mat(m.mats[h], p);

  // arrows checkable once all vertices up to v are assigned
  std::vector<std::vector<int>> check_at(r);
  for (std::size_t h = 0; h < m.quiver.arrows.size(); ++h) {
    int last = std::max(m.quiver.arrows[h].from, m.quiver.arrows[h].to) - 1;
    check_at[last].push_back(static_cast<int>(h));
  }

  std::set<RootVector> out;
  std::vector<const FpSpace*> cur(r, nullptr);
  std::function<void(int)> rec = [&](int v) {
    if (v == r) {
      RootVector dv(r);
      for (int i = 0; i < r; ++i) dv[i] = cur[i]->size();
      out.insert(dv);
      return;
    }
    for (const FpSpace& s : choices[v]) {
      cur[v] = &s;
      bool ok = true;
      for (int h : check_at[v]) {
        const Arrow& a = m.quiver.arrows[h];
        const FpSpace& src = *cur[a.from - 1];
        const FpSpace& tgt = *cur[a.to - 1];
        for (const FRow& b : src.rows) {
          if (!tgt.contains(mat_vec(mats[h], b, p))) {
            ok = false;
            break;
          }
        }
        if (!ok) break;
      }
      if (ok) rec(v + 1);
    }
    cur[v] = nullptr;
  };
  rec(0);
  return out;
}

// ------------------------------------------------- torsion module counting

void partitions_into(int total, int max_part, int slots, std::vector<int>& cur,
                     std::vector<std::vector<int>>& out) {
  if (total == 0) {
    out.push_back(cur);
    return;
  }
  if (slots == 0) return;
  int hi = std::min(total, max_part);
  for (int part = hi; part >= 1; --part) {
    cur.push_back(part);
    partitions_into(total - part, part, slots - 1, cur, out);
    cur.pop_back();
  }
}

mpz_class gauss_binom(int a, int b, long q) {
  if (b < 0 || b > a) return 0;
  mpz_class num = 1, den = 1;
  for (int k = 1; k <= b; ++k) {
    num *= mpz_pow(q, static_cast<unsigned long>(a - b + k)) - 1;
    den *= mpz_pow(q, static_cast<unsigned long>(k)) - 1;
  }
  mpz_class res;
  mpz_divexact(res.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return res;
}

// number of t-stable subspaces of (k[t]/t^n)^m of total dimension mu over
// F_q: classical count of submodules of a torsion module, summed over the
// submodule types (partitions of mu inside the n x m box)
mpz_class torsion_grassmannian_count(int n, int m, int mu, long q) {
  if (mu < 0 || mu > n * m) return 0;
  std::vector<std::vector<int>> types;
  std::vector<int> cur;
  partitions_into(mu, n, m, cur, types);
  mpz_class total = 0;
  for (const std::vector<int>& nu : types) {
    auto conj = [&](int i) {  // nu'_i = #parts >= i
      int c = 0;
      for (int part : nu)
        if (part >= i) ++c;
      return c;
    };
    mpz_class term = 1;
    for (int i = 1; i <= n; ++i) {
      int ni = conj(i), ni1 = conj(i + 1);
      term *= mpz_pow(q, static_cast<unsigned long>(ni1) * (m - ni));
      term *= gauss_binom(m - ni1, ni - ni1, q);
    }
    total += term;
  }
  return total;
}

}  // namespace

// ---------------------------------------------------------------- QuiverData

QuiverData QuiverData::doubled(const CartanData& cd) {
  QuiverData q;
  q.cd = cd;
  for (int i = 1; i <= cd.rank; ++i)
    for (int j = i + 1; j <= cd.rank; ++j) {
      if (cd.a(i, j) == 0) continue;
      if (cd.a(i, j) != -1 || cd.a(j, i) != -1)
        throw std::invalid_argument("doubled quiver needs a simply laced diagram");
      int fwd = static_cast<int>(q.arrows.size());
      q.arrows.push_back({i, j, +1, fwd + 1});
      q.arrows.push_back({j, i, -1, fwd});
    }
  return q;
}

std::vector<int> QuiverData::arrows_from(int v) const {
  std::vector<int> out;
  for (std::size_t h = 0; h < arrows.size(); ++h)
    if (arrows[h].from == v) out.push_back(static_cast<int>(h));
  return out;
}

std::vector<int> QuiverData::arrows_into(int v) const {
  std::vector<int> out;
  for (std::size_t h = 0; h < arrows.size(); ++h)
    if (arrows[h].to == v) out.push_back(static_cast<int>(h));
  return out;
}

// ----------------------------------------------------------------- PPModule

long PPModule::total_dim() const {
  long t = 0;
  for (long d : dims) t += d;
  return t;
}

long PPModule::field_char() const {
  if (field == "Q") return 0;
  if (field.size() >= 2 && field[0] == 'F') {
    long p = std::stol(field.substr(1));
    return p;
  }
  throw std::invalid_argument("unknown field tag: " + field);
}

PPModule make_ppmodule(const CartanData& cd, const RootVector& dims,
                       const std::map<std::pair<int, int>, MatQ>& arrow_mats,
                       const std::string& field) {
  if (static_cast<int>(dims.size()) != cd.rank)
    throw std::invalid_argument("dimension vector length must equal the rank");
  for (long d : dims)
    if (d < 0) throw std::invalid_argument("dimension vector must be nonnegative");

  PPModule m;
  m.quiver = QuiverData::doubled(cd);
  m.dims = dims;
  m.field = field;
  long p = 0;
  if (field != "Q") {
    p = m.field_char();
    if (!is_prime(p)) throw std::invalid_argument("field characteristic must be prime");
  }

  m.mats.resize(m.quiver.arrows.size());
  for (std::size_t h = 0; h < m.quiver.arrows.size(); ++h) {
    const Arrow& a = m.quiver.arrows[h];
    m.mats[h] = MatQ(static_cast<std::size_t>(dims[a.to - 1]),
                     static_cast<std::size_t>(dims[a.from - 1]));
  }
  for (const auto& [key, mat] : arrow_mats) {
    int idx = -1;
    for (std::size_t h = 0; h < m.quiver.arrows.size(); ++h)
      if (m.quiver.arrows[h].from == key.first && m.quiver.arrows[h].to == key.second)
        idx = static_cast<int>(h);
    if (idx < 0)
      throw std::invalid_argument("no quiver arrow between the given vertices");
    if (mat.rows() != static_cast<std::size_t>(dims[key.second - 1]) ||
        mat.cols() != static_cast<std::size_t>(dims[key.first - 1]))
      throw std::invalid_argument("arrow matrix shape mismatch");
    m.mats[idx] = mat;
    if (p > 0) {
      MatQ& stored = m.mats[idx];
      for (std::size_t i = 0; i < stored.rows(); ++i)
        for (std::size_t j = 0; j < stored.cols(); ++j)
          stored(i, j) = Rat(rat_mod(stored(i, j), p));
    }
  }
  return m;
}

// --------------------------------------------------------------------- JSON

PPModule ppmodule_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("ppmodule json: ") + e.what());
  }
  try {
    CartanData cd = CartanData::parse(j.at("cartan").get<std::string>());
    RootVector dims;
    for (const auto& d : j.at("dims")) dims.push_back(d.get<long>());
    std::string field = j.value("field", std::string("Q"));
    std::map<std::pair<int, int>, MatQ> mats;
    if (j.contains("arrows")) {
      for (const auto& arr : j.at("arrows")) {
        int from = arr.at("from").get<int>();
        int to = arr.at("to").get<int>();
        if (from < 1 || from > cd.rank || to < 1 || to > cd.rank)
          throw std::invalid_argument("ppmodule json: vertex out of range");
        std::size_t rows = static_cast<std::size_t>(dims[to - 1]);
        std::size_t cols = static_cast<std::size_t>(dims[from - 1]);
        const auto& entries = arr.at("entries");
        if (entries.size() != rows * cols)
          throw std::invalid_argument("ppmodule json: entry count does not match shape");
        MatQ mat(rows, cols);
        std::size_t k = 0;
        for (const auto& e : entries) {
          Rat val;
          if (e.is_string())
            val = rat_from_string(e.get<std::string>());
          else if (e.is_number_integer())
            val = rat(e.get<long>());
          else
            throw std::invalid_argument(
                "ppmodule json: entries must be integers or rational strings");
          mat(k / cols, k % cols) = val;
          ++k;
        }
        mats[{from, to}] = mat;
      }
    }
    return make_ppmodule(cd, dims, mats, field);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("ppmodule json: ") + e.what());
  }
}

std::string ppmodule_to_json(const PPModule& m) {
  std::string out = "{\"schema\":\"ppmodule/1\",\"cartan\":\"" + m.quiver.cd.name +
                    "\",\"dims\":[";
  for (std::size_t i = 0; i < m.dims.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(m.dims[i]);
  }
  out += "],\"field\":\"" + m.field + "\",\"arrows\":[";
  // deterministic order: by (from, to)
  std::vector<int> order;
  for (std::size_t h = 0; h < m.quiver.arrows.size(); ++h) {
    bool nonzero = false;
    for (std::size_t i = 0; i < m.mats[h].rows() && !nonzero; ++i)
      for (std::size_t j = 0; j < m.mats[h].cols() && !nonzero; ++j)
        if (m.mats[h](i, j) != 0) nonzero = true;
    if (nonzero) order.push_back(static_cast<int>(h));
  }
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const Arrow& x = m.quiver.arrows[a];
    const Arrow& y = m.quiver.arrows[b];
    return std::make_pair(x.from, x.to) < std::make_pair(y.from, y.to);
  });
  for (std::size_t t = 0; t < order.size(); ++t) {
    if (t) out += ",";
    const Arrow& a = m.quiver.arrows[order[t]];
    const MatQ& mat = m.mats[order[t]];
    out += "{\"from\":" + std::to_string(a.from) + ",\"to\":" + std::to_string(a.to) +
           ",\"entries\":[";
    bool first = true;
    for (std::size_t i = 0; i < mat.rows(); ++i)
      for (std::size_t j = 0; j < mat.cols(); ++j) {
        if (!first) out += ",";
        first = false;
        out += "\"" + mat(i, j).get_str() + "\"";
      }
    out += "]}";
  }
  out += "]}";
  return out;
}

// ------------------------------------------------------------ the relation

bool check_relation(const PPModule& m) {
  long p = m.field_char();
  for (int v = 1; v <= m.quiver.cd.rank; ++v) {
    std::size_t d = static_cast<std::size_t>(m.dims[v - 1]);
    MatQ acc(d, d);
    for (int h : m.quiver.arrows_into(v)) {
      const Arrow& a = m.quiver.arrows[h];
      MatQ prod = m.mats[h] * m.mats[a.rev];
      acc = (a.sign > 0) ? acc + prod : acc - prod;
    }
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        if (p == 0) {
          if (acc(i, j) != 0) return false;
        } else if (rat_mod(acc(i, j), p) != 0) {
          return false;
        }
      }
  }
  return true;
}

// ------------------------------------------------------------ Euler counts

long chi_flag(const PPModule& m, const Word& seq) {
  if (m.field != "Q")
    throw std::invalid_argument("flag counting interpolates over many primes; "
                                "it needs a rational module");
  if (m.total_dim() > 5)
    throw std::invalid_argument("flag counting is limited to total dimension 5");
  validate_seq(m, seq);

  long deg = flag_degree_bound(m.dims, seq);
  std::vector<long> primes = module_primes(m, static_cast<std::size_t>(deg) + 3, true);

  // zero maps impose no admissibility condition, so the count splits into a
  // product of line counts and no recursion is needed
  bool arrowless = true;
  for (const MatQ& mat : m.mats)
    for (std::size_t i = 0; i < mat.rows() && arrowless; ++i)
      for (std::size_t j = 0; j < mat.cols() && arrowless; ++j)
        if (mat(i, j) != 0) arrowless = false;

  std::vector<Rat> counts;
  for (long p : primes) {
    if (arrowless) {
      counts.emplace_back(arrowless_flag_count(m.dims, seq, p));
    } else {
      FlagCounter fc{p, m.quiver, m.dims, seq, {}, {}};
      for (const MatQ& mat : m.mats) fc.mats.push_back(reduce_mat(mat, p));
      for (long d : m.dims) fc.sub.push_back(fp_empty(p, static_cast<int>(d)));
      counts.emplace_back(mpz_class(static_cast<long>(fc.run(0))));
    }
  }

  Rat at_one = interpolate_at_one(primes, counts, deg, "chi_flag");
  long chi = rat_to_long(at_one, "chi_flag");

  // constant counts mean the flag set itself is finite; cross-check it by
  // brute enumeration, which shares no code with the counter above
  bool constant = true;
  for (const Rat& c : counts)
    if (c != counts[0]) constant = false;
  if (constant) {
    long long direct = chi_flag_direct(m, seq, primes[0]);
    if (Rat(mpz_class(static_cast<long>(direct))) != counts[0])
      throw std::runtime_error("chi_flag: direct enumeration disagrees with the count");
  }
  return chi;
}

long long chi_flag_direct(const PPModule& m, const Word& seq, long p) {
  if (m.field != "Q" && m.field_char() != p)
    throw std::invalid_argument("direct flag enumeration: wrong characteristic");
  validate_seq(m, seq);

  std::vector<std::vector<FRow>> mats;
  for (const MatQ& mat : m.mats) mats.push_back(reduce_mat(mat, p));
  std::vector<FpSpace> sub;
  for (long d : m.dims) sub.push_back(fp_empty(p, static_cast<int>(d)));

  auto stable = [&]() {
    for (std::size_t h = 0; h < m.quiver.arrows.size(); ++h) {
      const Arrow& a = m.quiver.arrows[h];
      for (const FRow& b : sub[a.from - 1].rows)
        if (!sub[a.to - 1].contains(mat_vec(mats[h], b, p))) return false;
    }
    return true;
  };

  std::function<long long(std::size_t)> rec = [&](std::size_t k) -> long long {
    if (k == seq.size()) return 1;
    int v = seq[k] - 1;
    int d = static_cast<int>(m.dims[v]);
    // every line of the ambient quotient is a candidate; stability of the
    // grown tuple is tested from scratch
    std::vector<FRow> ambient;
    for (int j = 0; j < d; ++j) {
      FRow e(d, 0);
      e[j] = 1;
      ambient.push_back(std::move(e));
    }
    std::vector<FRow> reps = complement_reps(sub[v], ambient);
    long long total = 0;
    for_each_line(reps, p, d, [&](const FRow& vec) {
      FpSpace saved = sub[v];
      sub[v].insert(vec);
      if (stable()) total += rec(k + 1);
      sub[v] = std::move(saved);
    });
    return total;
  };
  return rec(0);
}

// -------------------------------------------------------------------- xi

MultiPoly xi(const CoordRing& ring, const PPModule& m) {
  if (ring.n() - 1 != m.quiver.cd.rank)
    throw std::invalid_argument("coordinate ring rank does not match the quiver");
  if (height(m.dims) > 5)
    throw std::invalid_argument("xi reconstruction is limited to height 5");

  const CartanData& cd = m.quiver.cd;
  std::vector<Word> words = words_spelling(cd, m.dims);
  std::vector<MultiPoly::Exponents> monos = ring.weight_monomials(m.dims);

  MatQ a(words.size(), monos.size());
  std::vector<MultiPoly> mono_polys;
  for (const auto& e : monos)
    mono_polys.push_back(MultiPoly::monomial(static_cast<int>(e.size()), e, Rat(1)));
  for (std::size_t r = 0; r < words.size(); ++r)
    for (std::size_t c = 0; c < monos.size(); ++c)
      a(r, c) = ring.pairing(words[r], mono_polys[c]);
  if (a.rank() != monos.size())
    throw std::logic_error("xi: pairing matrix is singular on the graded piece");

  std::vector<Rat> rhs;
  for (const Word& w : words) rhs.emplace_back(chi_flag(m, w));
  auto sol = a.solve(rhs);
  if (!sol)
    throw std::runtime_error("xi: flag counts are not the pairings of any function");

  MultiPoly f = ring.zero();
  for (std::size_t c = 0; c < monos.size(); ++c)
    if ((*sol)[c] != 0) f = f + mono_polys[c].scaled((*sol)[c]);
  return f;
}

// ------------------------------------------------------ submodules and HN

std::vector<RootVector> submodule_dimvectors(const PPModule& m) {
  if (m.total_dim() > 5)
    throw std::invalid_argument("submodule enumeration is limited to total dimension 5");

  std::set<RootVector> agreed;
  if (m.field == "Q") {
    std::vector<long> primes = module_primes(m, 2, true);
    std::set<RootVector> s1 = stable_dimvectors_fp(m, primes[0]);
    std::set<RootVector> s2 = stable_dimvectors_fp(m, primes[1]);
    if (s1 != s2) throw std::runtime_error("submodule set not field-stable");
    agreed = std::move(s1);
  } else {
    agreed = stable_dimvectors_fp(m, m.field_char());
  }
  return std::vector<RootVector>(agreed.begin(), agreed.end());
}

LatticePolytope hn_polytope(const PPModule& m) {
  return LatticePolytope::hull(submodule_dimvectors(m));
}

ModuleStats epsilons(const PPModule& m) {
  int r = m.quiver.cd.rank;
  ModuleStats st;
  st.eps.resize(r);
  st.eps_star.resize(r);
  long p = m.field_char();
  for (int v = 1; v <= r; ++v) {
    int d = static_cast<int>(m.dims[v - 1]);
    // socle: joint kernel of the arrows leaving v
    std::size_t total_rows = 0;
    for (int h : m.quiver.arrows_from(v)) total_rows += m.mats[h].rows();
    MatQ stacked(total_rows, static_cast<std::size_t>(d));
    std::size_t at = 0;
    for (int h : m.quiver.arrows_from(v)) {
      const MatQ& mat = m.mats[h];
      for (std::size_t i = 0; i < mat.rows(); ++i, ++at)
        for (std::size_t j = 0; j < mat.cols(); ++j) stacked(at, j) = mat(i, j);
    }
    long rank_out;
    if (p == 0) {
      rank_out = static_cast<long>(stacked.rank());
    } else {
      rank_out = fp_rank(reduce_mat(stacked, p), d, p);
    }
    st.eps[v - 1] = d - static_cast<int>(rank_out);

    // top: cokernel of the arrows entering v
    std::size_t total_cols = 0;
    for (int h : m.quiver.arrows_into(v)) total_cols += m.mats[h].cols();
    MatQ side(static_cast<std::size_t>(d), total_cols);
    std::size_t atc = 0;
    for (int h : m.quiver.arrows_into(v)) {
      const MatQ& mat = m.mats[h];
      for (std::size_t j = 0; j < mat.cols(); ++j, ++atc)
        for (std::size_t i = 0; i < mat.rows(); ++i) side(i, atc) = mat(i, j);
    }
    long rank_in;
    if (p == 0) {
      rank_in = static_cast<long>(side.rank());
    } else {
      rank_in = fp_rank(reduce_mat(side.transpose(), p), d, p);
    }
    st.eps_star[v - 1] = d - static_cast<int>(rank_in);
  }
  return st;
}

// -------------------------------------------------- torsion lattice dists

LatticeDist grassmannian_lattice_dist(const PPModule& m, int n) {
  if (m.field != "Q")
    throw std::invalid_argument("lattice distributions need a rational module");
  if (n < 1) throw std::invalid_argument("torsion order must be positive");

  bool arrowless = true;
  for (const MatQ& mat : m.mats)
    for (std::size_t i = 0; i < mat.rows() && arrowless; ++i)
      for (std::size_t j = 0; j < mat.cols() && arrowless; ++j)
        if (mat(i, j) != 0) arrowless = false;
  if (!arrowless && m.total_dim() * n > 6)
    throw std::invalid_argument("torsion subspace enumeration is limited to total dimension 6");
  if (arrowless && m.total_dim() * n > 24)
    throw std::invalid_argument("torsion order too large");

  int r = static_cast<int>(m.dims.size());
  long deg = 0;
  for (int v = 0; v < r; ++v) {
    long dv = m.dims[v] * n;
    deg += (dv * dv) / 4;
  }
  std::vector<long> primes = module_primes(m, static_cast<std::size_t>(deg) + 3, true);

  std::vector<std::map<RootVector, Rat>> per_prime;
  for (long p : primes) {
    std::map<RootVector, Rat> counts;
    if (arrowless) {
      // per-vertex counts convolve: no arrow couples the vertices
      std::vector<std::vector<mpz_class>> vertex_counts(r);
      for (int v = 0; v < r; ++v) {
        int dv = static_cast<int>(m.dims[v]);
        for (int mu = 0; mu <= dv * n; ++mu)
          vertex_counts[v].push_back(torsion_grassmannian_count(n, dv, mu, p));
      }
      RootVector mu(r, 0);
      std::function<void(int, mpz_class)> walk = [&](int v, mpz_class acc) {
        if (v == r) {
          counts[mu] = Rat(acc);
          return;
        }
        for (int k = 0; k < static_cast<int>(vertex_counts[v].size()); ++k) {
          mu[v] = k;
          walk(v + 1, acc * vertex_counts[v][k]);
        }
        mu[v] = 0;
      };
      walk(0, mpz_class(1));
    } else {
      // lift to M[t]/t^n: arrows act blockwise, t is the shift
      std::vector<int> lifted_dims(r);
      for (int v = 0; v < r; ++v) lifted_dims[v] = static_cast<int>(m.dims[v]) * n;
      std::vector<std::vector<FRow>> arrow_mats(m.mats.size());
      for (std::size_t h = 0; h < m.mats.size(); ++h) {
        const Arrow& a = m.quiver.arrows[h];
        int dt = static_cast<int>(m.dims[a.to - 1]);
        int df = static_cast<int>(m.dims[a.from - 1]);
        std::vector<FRow> small = reduce_mat(m.mats[h], p);
        std::vector<FRow> big(dt * n, FRow(df * n, 0));
        for (int blk = 0; blk < n; ++blk)
          for (int i = 0; i < dt; ++i)
            for (int j = 0; j < df; ++j) big[blk * dt + i][blk * df + j] = small[i][j];
        arrow_mats[h] = std::move(big);
      }
      std::vector<std::vector<FRow>> tmats(r);
      for (int v = 0; v < r; ++v) {
        int dv = static_cast<int>(m.dims[v]);
        std::vector<FRow> t(dv * n, FRow(dv * n, 0));
        for (int blk = 0; blk + 1 < n; ++blk)
          for (int i = 0; i < dv; ++i) t[(blk + 1) * dv + i][blk * dv + i] = 1;
        tmats[v] = std::move(t);
      }
      std::vector<std::vector<FpSpace>> choices(r);
      for (int v = 0; v < r; ++v) {
        for (FpSpace& s : enumerate_subspaces(p, lifted_dims[v])) {
          bool tstable = true;
          for (const FRow& b : s.rows)
            if (!s.contains(mat_vec(tmats[v], b, p))) {
              tstable = false;
              break;
            }
          if (tstable) choices[v].push_back(std::move(s));
        }
      }
      std::vector<std::vector<int>> check_at(r);
      for (std::size_t h = 0; h < m.quiver.arrows.size(); ++h) {
        int last = std::max(m.quiver.arrows[h].from, m.quiver.arrows[h].to) - 1;
        check_at[last].push_back(static_cast<int>(h));
      }
      std::vector<const FpSpace*> cur(r, nullptr);
      std::function<void(int)> rec = [&](int v) {
        if (v == r) {
          RootVector mu(r);
          for (int i = 0; i < r; ++i) mu[i] = cur[i]->size();
          counts[mu] += 1;
          return;
        }
        for (const FpSpace& s : choices[v]) {
          cur[v] = &s;
          bool ok = true;
          for (int h : check_at[v]) {
            const Arrow& a = m.quiver.arrows[h];
            for (const FRow& b : cur[a.from - 1]->rows)
              if (!cur[a.to - 1]->contains(mat_vec(arrow_mats[h], b, p))) {
                ok = false;
                break;
              }
            if (!ok) break;
          }
          if (ok) rec(v + 1);
        }
        cur[v] = nullptr;
      };
      rec(0);
    }
    per_prime.push_back(std::move(counts));
  }

  std::set<RootVector> keys;
  for (const auto& mp : per_prime)
    for (const auto& [k, v] : mp) keys.insert(k);

  LatticeDist dist;
  for (const RootVector& key : keys) {
    std::vector<Rat> counts;
    for (const auto& mp : per_prime) {
      auto it = mp.find(key);
      counts.push_back(it == mp.end() ? Rat(0) : it->second);
    }
    Rat at_one = interpolate_at_one(primes, counts, deg, "grassmannian_lattice_dist");
    dist[key] = rat_to_long(at_one, "grassmannian_lattice_dist");
  }
  return dist;
}

}  // namespace bibasis
