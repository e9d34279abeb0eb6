#include "bibasis/root_data.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>
#include <stdexcept>

namespace bibasis {

namespace {

// Cartan matrix of a single irreducible factor, Bourbaki numbering.
std::vector<std::vector<int>> cartan_block(char letter, int n) {
  auto chain = [](int n) {
    std::vector<std::vector<int>> a(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i) {
      a[i][i] = 2;
      if (i + 1 < n) a[i][i + 1] = a[i + 1][i] = -1;
    }
    return a;
  };
  switch (letter) {
    case 'A':
      if (n < 1) throw std::invalid_argument("type A needs rank >= 1");
      return chain(n);
    case 'B': {
      if (n < 2) throw std::invalid_argument("type B needs rank >= 2");
      auto a = chain(n);
      a[n - 2][n - 1] = -2;  // alpha_n short
      return a;
    }
    case 'C': {
      if (n < 2) throw std::invalid_argument("type C needs rank >= 2");
      auto a = chain(n);
      a[n - 1][n - 2] = -2;  // alpha_n long
      return a;
    }
    case 'D': {
      if (n < 3) throw std::invalid_argument("type D needs rank >= 3");
      auto a = chain(n);
      a[n - 2][n - 1] = a[n - 1][n - 2] = 0;
      a[n - 3][n - 1] = a[n - 1][n - 3] = -1;
      return a;
    }
    case 'E': {
      if (n < 6 || n > 8) throw std::invalid_argument("type E needs rank 6..8");
      // chain 1-3-4-5-...-n, with node 2 hanging off node 4
      std::vector<std::vector<int>> a(n, std::vector<int>(n, 0));
      for (int i = 0; i < n; ++i) a[i][i] = 2;
      auto join = [&](int i, int j) { a[i - 1][j - 1] = a[j - 1][i - 1] = -1; };
      join(1, 3);
      join(3, 4);
      join(2, 4);
      for (int k = 4; k < n; ++k) join(k, k + 1);
      return a;
    }
    case 'F': {
      if (n != 4) throw std::invalid_argument("type F needs rank 4");
      auto a = chain(4);
      a[1][2] = -1;
      a[2][1] = -2;
      return a;
    }
    case 'G': {
      if (n != 2) throw std::invalid_argument("type G needs rank 2");
      return {{2, -1}, {-3, 2}};
    }
    default:
      throw std::invalid_argument(std::string("unknown type letter '") + letter + "'");
  }
}

}  // namespace

CartanData CartanData::parse(const std::string& type) {
  CartanData cd;
  cd.name = type;
  std::vector<std::pair<char, int>> factors;
  std::size_t pos = 0;
  while (pos < type.size()) {
    char letter = type[pos];
    if (letter < 'A' || letter > 'G')
      throw std::invalid_argument("bad Cartan type '" + type + "'");
    ++pos;
    std::size_t start = pos;
    while (pos < type.size() && std::isdigit(static_cast<unsigned char>(type[pos]))) ++pos;
    if (start == pos) throw std::invalid_argument("bad Cartan type '" + type + "'");
    factors.emplace_back(letter, std::stoi(type.substr(start, pos - start)));
    if (pos < type.size()) {
      if (type[pos] != 'x')
        throw std::invalid_argument("bad Cartan type '" + type + "'");
      ++pos;
      if (pos == type.size())
        throw std::invalid_argument("bad Cartan type '" + type + "'");
    }
  }
  if (factors.empty()) throw std::invalid_argument("empty Cartan type");
  int total = 0;
  for (auto& [l, n] : factors) total += n;
  if (total > 8) throw std::invalid_argument("rank > 8 not supported");
  cd.rank = total;
  cd.cartan.assign(total, std::vector<int>(total, 0));
  int off = 0;
  for (auto& [l, n] : factors) {
    auto block = cartan_block(l, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) cd.cartan[off + i][off + j] = block[i][j];
    off += n;
  }
  return cd;
}

int CartanData::a(int i, int j) const {
  if (i < 1 || i > rank || j < 1 || j > rank)
    throw std::out_of_range("Cartan index out of range");
  return cartan[i - 1][j - 1];
}

long CartanData::pairing(int i, const Weight& lam) const {
  if (i < 1 || i > rank) throw std::out_of_range("root index out of range");
  if ((int)lam.size() != rank) throw std::invalid_argument("weight has wrong rank");
  return lam[i - 1];
}

long CartanData::pairing_root(int i, const RootVector& nu) const {
  if (i < 1 || i > rank) throw std::out_of_range("root index out of range");
  long s = 0;
  for (int j = 0; j < rank; ++j) s += cartan[i - 1][j] * nu[j];
  return s;
}

Weight CartanData::root_to_weight(const RootVector& nu) const {
  Weight w(rank, 0);
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j) w[i] += cartan[i][j] * nu[j];
  return w;
}

Weight CartanData::fundamental_weight(int i) const {
  if (i < 1 || i > rank) throw std::out_of_range("root index out of range");
  Weight w(rank, 0);
  w[i - 1] = 1;
  return w;
}

Weight CartanData::rho() const { return Weight(rank, 1); }

RootVector CartanData::simple_root(int i) const {
  if (i < 1 || i > rank) throw std::out_of_range("root index out of range");
  RootVector v(rank, 0);
  v[i - 1] = 1;
  return v;
}

bool CartanData::dominant(const Weight& lam) const {
  for (long x : lam)
    if (x < 0) return false;
  return true;
}

Weight CartanData::reflect(int i, const Weight& lam) const {
  long c = pairing(i, lam);
  Weight r = lam;
  for (int k = 0; k < rank; ++k) r[k] -= c * cartan[k][i - 1];
  return r;
}

RootVector CartanData::reflect_root(int i, const RootVector& beta) const {
  long c = pairing_root(i, beta);
  RootVector r = beta;
  r[i - 1] -= c;
  return r;
}

int CartanData::braid_order(int i, int j) const {
  int p = a(i, j) * a(j, i);
  switch (p) {
    case 0: return 2;
    case 1: return 3;
    case 2: return 4;
    case 3: return 6;
    default: throw std::logic_error("not a finite-type Cartan matrix");
  }
}

std::vector<RootVector> CartanData::positive_roots() const {
  std::set<RootVector> pos;
  for (int i = 1; i <= rank; ++i) pos.insert(simple_root(i));
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<RootVector> snapshot(pos.begin(), pos.end());
    for (const auto& beta : snapshot)
      for (int i = 1; i <= rank; ++i) {
        RootVector img = reflect_root(i, beta);
        if (is_nonneg(img) && pos.insert(img).second) grew = true;
      }
  }
  std::vector<RootVector> out(pos.begin(), pos.end());
  std::sort(out.begin(), out.end(), [](const RootVector& a, const RootVector& b) {
    long ha = height(a), hb = height(b);
    if (ha != hb) return ha < hb;
    return a < b;
  });
  return out;
}

Word CartanData::some_w0_word() const {
  Weight mu = rho();
  Word w;
  bool moved = true;
  while (moved) {
    moved = false;
    for (int i = 1; i <= rank; ++i)
      if (pairing(i, mu) > 0) {
        mu = reflect(i, mu);
        w.push_back(i);
        moved = true;
        break;
      }
  }
  return w;
}

int CartanData::star_index(int i) const {
  RootVector img = simple_root(i);
  Word w0 = some_w0_word();
  // left-to-right word means acting by the leftmost reflection last
  for (auto it = w0.rbegin(); it != w0.rend(); ++it) img = reflect_root(*it, img);
  for (int j = 1; j <= rank; ++j) {
    RootVector neg = simple_root(j);
    for (auto& x : neg) x = -x;
    if (img == neg) return j;
  }
  throw std::logic_error("w0 did not send a simple root to minus a simple root");
}

Weight CartanData::w0_weight(const Weight& lam) const {
  Weight mu = lam;
  Word w0 = some_w0_word();
  for (auto it = w0.rbegin(); it != w0.rend(); ++it) mu = reflect(*it, mu);
  return mu;
}

long height(const RootVector& nu) {
  long s = 0;
  for (long x : nu) s += x;
  return s;
}

bool is_nonneg(const RootVector& nu) {
  for (long x : nu)
    if (x < 0) return false;
  return true;
}

RootVector add(const RootVector& a, const RootVector& b) {
  RootVector r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

RootVector sub(const RootVector& a, const RootVector& b) {
  RootVector r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

Weight add_w(const Weight& a, const Weight& b) { return add(a, b); }
Weight sub_w(const Weight& a, const Weight& b) { return sub(a, b); }

Weight neg_w(const Weight& a) {
  Weight r = a;
  for (auto& x : r) x = -x;
  return r;
}

namespace {
std::string format_vec(const std::vector<long>& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ',';
    os << v[i];
  }
  os << ')';
  return os.str();
}
}  // namespace

std::string format_root(const RootVector& nu) { return format_vec(nu); }
std::string format_weight(const Weight& lam) { return format_vec(lam); }

std::string format_word(const Word& w) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) os << ',';
    os << w[i];
  }
  os << ')';
  return os.str();
}

std::vector<RootVector> word_roots(const CartanData& cd, const Word& w) {
  std::vector<RootVector> beta;
  beta.reserve(w.size());
  for (std::size_t k = 0; k < w.size(); ++k) {
    RootVector b = cd.simple_root(w[k]);
    for (std::size_t l = k; l-- > 0;) b = cd.reflect_root(w[l], b);
    if (!is_nonneg(b))
      throw std::invalid_argument("word " + format_word(w) + " is not reduced");
    beta.push_back(std::move(b));
  }
  return beta;
}

bool is_reduced(const CartanData& cd, const Word& w) {
  try {
    word_roots(cd, w);
    return true;
  } catch (const std::invalid_argument&) {
    return false;
  }
}

ReducedWordEnumerator::ReducedWordEnumerator(const CartanData& cd) : cd_(cd) {
  target_len_ = cd.positive_roots().size();
  Frame root;
  for (int j = 1; j <= cd.rank; ++j) root.images.push_back(cd.simple_root(j));
  root.next_letter = 1;
  stack_.push_back(std::move(root));
}

std::optional<Word> ReducedWordEnumerator::next() {
  while (!done_) {
    if (word_.size() == target_len_) {
      Word out = word_;
      // backtrack one level so the search continues
      stack_.pop_back();
      word_.pop_back();
      return out;
    }
    Frame& top = stack_.back();
    int i = top.next_letter;
    if (i > cd_.rank) {
      stack_.pop_back();
      if (word_.empty()) {
        done_ = true;
        break;
      }
      word_.pop_back();
      continue;
    }
    ++top.next_letter;
    if (!is_nonneg(top.images[i - 1])) continue;  // w(alpha_i) < 0: not extendable
    Frame child;
    child.images.reserve(cd_.rank);
    // (w s_i)(alpha_j) = w(s_i alpha_j) = w(alpha_j) - a(i,j) w(alpha_i)
    for (int j = 1; j <= cd_.rank; ++j) {
      RootVector img = top.images[j - 1];
      int c = cd_.a(i, j);
      if (c != 0)
        for (int k = 0; k < cd_.rank; ++k) img[k] -= c * top.images[i - 1][k];
      child.images.push_back(std::move(img));
    }
    child.next_letter = 1;
    stack_.push_back(std::move(child));
    word_.push_back(i);
  }
  return std::nullopt;
}

std::vector<Word> reduced_words_w0(const CartanData& cd) {
  if (cd.rank > 4)
    throw std::invalid_argument("exhaustive word enumeration guarded to rank <= 4");
  std::vector<Word> words;
  ReducedWordEnumerator en(cd);
  while (auto w = en.next()) words.push_back(*w);
  return words;
}

std::vector<Word> braid_neighbors(const CartanData& cd, const Word& w) {
  std::vector<Word> out;
  std::set<Word> seen;
  for (std::size_t p = 0; p < w.size(); ++p) {
    int i = w[p];
    for (int j = 1; j <= cd.rank; ++j) {
      if (j == i) continue;
      int m = cd.braid_order(i, j);
      if (p + m > w.size()) continue;
      bool ok = true;
      for (int k = 0; k < m; ++k)
        if (w[p + k] != ((k % 2 == 0) ? i : j)) {
          ok = false;
          break;
        }
      if (!ok) continue;
      Word nb = w;
      for (int k = 0; k < m; ++k) nb[p + k] = (k % 2 == 0) ? j : i;
      if (seen.insert(nb).second) out.push_back(std::move(nb));
    }
  }
  return out;
}

namespace {

long long kostant_rec(const std::vector<RootVector>& roots, std::size_t idx,
                      const RootVector& nu,
                      std::map<std::pair<std::size_t, RootVector>, long long>& memo) {
  if (height(nu) == 0) return 1;
  if (idx == roots.size()) return 0;
  auto key = std::make_pair(idx, nu);
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;
  long long total = 0;
  RootVector rem = nu;
  while (true) {
    total += kostant_rec(roots, idx + 1, rem, memo);
    bool fits = true;
    for (std::size_t k = 0; k < rem.size(); ++k)
      if (rem[k] < roots[idx][k]) {
        fits = false;
        break;
      }
    if (!fits) break;
    rem = sub(rem, roots[idx]);
  }
  memo[key] = total;
  return total;
}

}  // namespace

long long kostant_partition(const CartanData& cd, const RootVector& nu) {
  if (!is_nonneg(nu)) throw std::invalid_argument("kostant_partition: nu not in Q_+");
  if (height(nu) > 12)
    throw std::invalid_argument("kostant_partition guarded to height <= 12");
  auto roots = cd.positive_roots();
  std::map<std::pair<std::size_t, RootVector>, long long> memo;
  return kostant_rec(roots, 0, nu, memo);
}

}  // namespace bibasis
