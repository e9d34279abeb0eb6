#include "bibasis/crystal.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "bibasis/matq.hpp"

namespace bibasis {

bool simply_laced(const CartanData& cd) {
  for (int i = 0; i < cd.rank; ++i)
    for (int j = 0; j < cd.rank; ++j)
      if (i != j && cd.cartan[i][j] < -1) return false;
  return true;
}

namespace {

struct MoveEdge {
  int pos;     // start of the braid window
  int m;       // 2 or 3
  int target;  // word index after the move
};

// Per-type word combinatorics, built once: the braid-move graph on all
// reduced words for w0, a BFS tree rooted at the reference word, cached
// word_roots, and handy special words.
struct WordTables {
  std::vector<Word> words;  // sorted; words[0] is the reference word
  std::map<Word, int> index;
  std::vector<std::vector<MoveEdge>> edges;
  std::vector<int> parent;            // BFS tree from word 0
  std::vector<MoveEdge> parent_move;  // move applied at the parent to get here
  std::vector<std::vector<RootVector>> roots;  // word_roots per word
  std::vector<int> initial;                    // initial[i-1]: a word starting with i
  int star_word = -1;                          // (i_m*, ..., i_1*) of the reference
};

void require_simply_laced(const CartanData& cd) {
  if (!simply_laced(cd))
    throw std::invalid_argument(
        "crystal operations support simply-laced types only (A/D/E); type " +
        cd.name + " has a multiple bond");
}

const WordTables& get_tables(const CartanData& cd) {
  static std::mutex mu;
  static std::map<std::string, WordTables> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(cd.name);
  if (it != cache.end()) return it->second;

  require_simply_laced(cd);
  WordTables t;
  t.words = reduced_words_w0(cd);  // guards rank <= 4
  std::sort(t.words.begin(), t.words.end());
  for (std::size_t k = 0; k < t.words.size(); ++k) t.index[t.words[k]] = (int)k;

  t.edges.resize(t.words.size());
  for (std::size_t k = 0; k < t.words.size(); ++k) {
    const Word& w = t.words[k];
    for (std::size_t p = 0; p < w.size(); ++p) {
      int i = w[p];
      for (int j = 1; j <= cd.rank; ++j) {
        if (j == i) continue;
        int m = cd.braid_order(i, j);
        if (p + m > w.size()) continue;
        bool ok = true;
        for (int q = 0; q < m; ++q)
          if (w[p + q] != ((q % 2 == 0) ? i : j)) {
            ok = false;
            break;
          }
        if (!ok) continue;
        Word nb = w;
        for (int q = 0; q < m; ++q) nb[p + q] = (q % 2 == 0) ? j : i;
        t.edges[k].push_back({(int)p, m, t.index.at(nb)});
      }
    }
  }

  // BFS tree rooted at the reference word
  t.parent.assign(t.words.size(), -2);
  t.parent_move.resize(t.words.size());
  std::vector<int> queue{0};
  t.parent[0] = -1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    int u = queue[head];
    for (const auto& e : t.edges[u]) {
      if (t.parent[e.target] != -2) continue;
      t.parent[e.target] = u;
      t.parent_move[e.target] = e;
      queue.push_back(e.target);
    }
  }
  for (int p : t.parent)
    if (p == -2) throw std::logic_error("braid-move graph is not connected");

  t.roots.resize(t.words.size());
  for (std::size_t k = 0; k < t.words.size(); ++k)
    t.roots[k] = word_roots(cd, t.words[k]);

  t.initial.assign(cd.rank, -1);
  for (std::size_t k = 0; k < t.words.size(); ++k) {
    int i = t.words[k][0];
    if (t.initial[i - 1] < 0) t.initial[i - 1] = (int)k;
  }
  for (int i = 0; i < cd.rank; ++i)
    if (t.initial[i] < 0) throw std::logic_error("no reduced word starts with a letter");

  Word sw;
  for (auto it2 = t.words[0].rbegin(); it2 != t.words[0].rend(); ++it2)
    sw.push_back(cd.star_index(*it2));
  auto swit = t.index.find(sw);
  if (swit == t.index.end())
    throw std::logic_error("star-reversed reference word is not a w0 word");
  t.star_word = swit->second;

  return cache.emplace(cd.name, std::move(t)).first->second;
}

// The rank-2 braid move acting on the datum window.  The same map is applied
// in both directions (it is an involution on the window).
void apply_move(std::vector<long>& data, int pos, int m) {
  if (m == 2) {
    std::swap(data[pos], data[pos + 1]);
    return;
  }
  if (m == 3) {
    long a = data[pos], b = data[pos + 1], c = data[pos + 2];
    long mm = std::min(a, c);
    data[pos] = b + c - mm;
    data[pos + 1] = mm;
    data[pos + 2] = a + b - mm;
    return;
  }
  throw std::invalid_argument("braid move of order > 3: not simply-laced");
}

// moves along the BFS-tree path from word `from` up to the root (reference)
void walk_to_reference(const WordTables& t, int from, std::vector<long>& data) {
  int u = from;
  while (t.parent[u] >= 0) {
    apply_move(data, t.parent_move[u].pos, t.parent_move[u].m);
    u = t.parent[u];
  }
}

void walk_from_reference(const WordTables& t, int to, std::vector<long>& data) {
  std::vector<const MoveEdge*> chain;
  int u = to;
  while (t.parent[u] >= 0) {
    chain.push_back(&t.parent_move[u]);
    u = t.parent[u];
  }
  for (auto it = chain.rbegin(); it != chain.rend(); ++it)
    apply_move(data, (*it)->pos, (*it)->m);
}

void validate_datum(const WordTables& t, const LusztigDatum& d) {
  if (t.index.find(d.word) == t.index.end())
    throw std::invalid_argument("word " + format_word(d.word) +
                                " is not a reduced word for w0");
  if (d.data.size() != d.word.size())
    throw std::invalid_argument("datum length does not match word length");
  for (long c : d.data)
    if (c < 0) throw std::invalid_argument("Lusztig datum entries must be >= 0");
}

}  // namespace

const Word& reference_word(const CartanData& cd) { return get_tables(cd).words[0]; }

LusztigDatum transition(const CartanData& cd, const LusztigDatum& d, const Word& target) {
  const WordTables& t = get_tables(cd);
  validate_datum(t, d);
  auto tgt = t.index.find(target);
  if (tgt == t.index.end())
    throw std::invalid_argument("word " + format_word(target) +
                                " is not a reduced word for w0");
  std::vector<long> data = d.data;
  walk_to_reference(t, t.index.at(d.word), data);
  walk_from_reference(t, tgt->second, data);
  return {target, data};
}

BinfElement binf_zero(const CartanData& cd) {
  const WordTables& t = get_tables(cd);
  return {std::vector<long>(t.words[0].size(), 0)};
}

BinfElement binf_from_datum(const CartanData& cd, const LusztigDatum& d) {
  const WordTables& t = get_tables(cd);
  validate_datum(t, d);
  std::vector<long> data = d.data;
  walk_to_reference(t, t.index.at(d.word), data);
  return {data};
}

LusztigDatum binf_datum(const CartanData& cd, const BinfElement& b, const Word& w) {
  const WordTables& t = get_tables(cd);
  return transition(cd, {t.words[0], b.data}, w);
}

RootVector binf_nu(const CartanData& cd, const BinfElement& b) {
  const WordTables& t = get_tables(cd);
  RootVector nu = cd.zero_root();
  for (std::size_t k = 0; k < b.data.size(); ++k)
    for (int i = 0; i < cd.rank; ++i) nu[i] += b.data[k] * t.roots[0][k][i];
  return nu;
}

Weight binf_wt(const CartanData& cd, const BinfElement& b) {
  return neg_w(cd.root_to_weight(binf_nu(cd, b)));
}

long binf_epsilon(const CartanData& cd, const BinfElement& b, int i) {
  if (i < 1 || i > cd.rank) throw std::out_of_range("root index out of range");
  const WordTables& t = get_tables(cd);
  std::vector<long> data = b.data;
  walk_from_reference(t, t.initial[i - 1], data);
  return data[0];
}

long binf_epsilon_star(const CartanData& cd, const BinfElement& b, int i) {
  return binf_epsilon(cd, binf_star(cd, b), i);
}

BinfElement binf_f(const CartanData& cd, const BinfElement& b, int i) {
  const WordTables& t = get_tables(cd);
  std::vector<long> data = b.data;
  walk_from_reference(t, t.initial[i - 1], data);
  ++data[0];
  walk_to_reference(t, t.initial[i - 1], data);
  return {data};
}

std::optional<BinfElement> binf_e(const CartanData& cd, const BinfElement& b, int i) {
  const WordTables& t = get_tables(cd);
  std::vector<long> data = b.data;
  walk_from_reference(t, t.initial[i - 1], data);
  if (data[0] == 0) return std::nullopt;
  --data[0];
  walk_to_reference(t, t.initial[i - 1], data);
  return BinfElement{data};
}

BinfElement binf_star(const CartanData& cd, const BinfElement& b) {
  const WordTables& t = get_tables(cd);
  std::vector<long> data = b.data;
  walk_from_reference(t, t.star_word, data);
  std::reverse(data.begin(), data.end());
  return {data};
}

std::vector<RootVector> mv_path_points(const CartanData& cd, const BinfElement& b,
                                       const Word& w) {
  const WordTables& t = get_tables(cd);
  LusztigDatum d = binf_datum(cd, b, w);
  const auto& roots = t.roots[t.index.at(w)];
  std::vector<RootVector> pts;
  RootVector acc = cd.zero_root();
  pts.push_back(acc);
  for (std::size_t k = 0; k < d.data.size(); ++k) {
    for (int i = 0; i < cd.rank; ++i) acc[i] += d.data[k] * roots[k][i];
    pts.push_back(acc);
  }
  return pts;
}

MVPolytope mv_polytope(const CartanData& cd, const BinfElement& b) {
  const WordTables& t = get_tables(cd);
  // propagate the datum across the BFS tree once, collecting path corners
  std::vector<std::vector<long>> data_at(t.words.size());
  data_at[0] = b.data;
  std::vector<int> order{0};
  std::vector<bool> seen(t.words.size(), false);
  seen[0] = true;
  std::vector<RootVector> pts;
  for (std::size_t head = 0; head < order.size(); ++head) {
    int u = order[head];
    const auto& data = data_at[u];
    RootVector acc = cd.zero_root();
    pts.push_back(acc);
    for (std::size_t k = 0; k < data.size(); ++k) {
      for (int i = 0; i < cd.rank; ++i) acc[i] += data[k] * t.roots[u][k][i];
      pts.push_back(acc);
    }
    for (const auto& e : t.edges[u]) {
      if (seen[e.target]) continue;
      seen[e.target] = true;
      auto child = data;
      apply_move(child, e.pos, e.m);
      data_at[e.target] = std::move(child);
      order.push_back(e.target);
    }
  }
  MVPolytope P;
  P.nu = binf_nu(cd, b);
  P.poly = LatticePolytope::hull(pts);
  return P;
}

CrystalGraph enumerate_binf(const CartanData& cd, long depth) {
  if (depth < 0) throw std::invalid_argument("depth must be >= 0");
  CrystalGraph g;
  g.depth = depth;
  std::map<std::vector<long>, long> hts;  // datum -> height
  std::vector<BinfElement> frontier{binf_zero(cd)};
  hts[frontier[0].data] = 0;
  for (long h = 0; h < depth; ++h) {
    std::vector<BinfElement> next;
    for (const auto& b : frontier)
      for (int i = 1; i <= cd.rank; ++i) {
        BinfElement c = binf_f(cd, b, i);
        if (hts.emplace(c.data, h + 1).second) next.push_back(c);
      }
    frontier = std::move(next);
  }
  for (const auto& [data, h] : hts) g.nodes.push_back({data});
  std::sort(g.nodes.begin(), g.nodes.end(),
            [&](const BinfElement& a, const BinfElement& b) {
              long ha = hts.at(a.data), hb = hts.at(b.data);
              if (ha != hb) return ha < hb;
              return a.data < b.data;
            });
  for (std::size_t k = 0; k < g.nodes.size(); ++k) g.index[g.nodes[k].data] = (int)k;
  g.level_sizes.assign(depth + 1, 0);
  for (const auto& [data, h] : hts) ++g.level_sizes[h];
  g.e_target.assign(g.nodes.size(), std::vector<int>(cd.rank, -1));
  g.f_target.assign(g.nodes.size(), std::vector<int>(cd.rank, -1));
  for (std::size_t k = 0; k < g.nodes.size(); ++k)
    for (int i = 1; i <= cd.rank; ++i) {
      if (auto e = binf_e(cd, g.nodes[k], i)) {
        auto it = g.index.find(e->data);
        if (it != g.index.end()) g.e_target[k][i - 1] = it->second;
      }
      BinfElement f = binf_f(cd, g.nodes[k], i);
      auto it = g.index.find(f.data);
      if (it != g.index.end()) g.f_target[k][i - 1] = it->second;
    }
  return g;
}

std::vector<int> b_lambda_nodes(const CartanData& cd, const CrystalGraph& g,
                                const Weight& lambda) {
  if (!cd.dominant(lambda))
    throw std::invalid_argument("b_lambda requires a dominant weight");
  std::vector<int> out;
  for (std::size_t k = 0; k < g.nodes.size(); ++k) {
    bool ok = true;
    for (int i = 1; i <= cd.rank && ok; ++i)
      if (binf_epsilon_star(cd, g.nodes[k], i) > cd.pairing(i, lambda)) ok = false;
    if (ok) out.push_back((int)k);
  }
  return out;
}

std::string crystal_to_dot(const CartanData& cd, const CrystalGraph& g) {
  std::ostringstream os;
  os << "digraph binf {\n  rankdir=BT;\n";
  for (std::size_t k = 0; k < g.nodes.size(); ++k) {
    os << "  n" << k << " [label=\"";
    const auto& d = g.nodes[k].data;
    for (std::size_t j = 0; j < d.size(); ++j) {
      if (j) os << ",";
      os << d[j];
    }
    os << "\"];\n";
  }
  for (std::size_t k = 0; k < g.nodes.size(); ++k)
    for (int i = 1; i <= cd.rank; ++i)
      if (g.e_target[k][i - 1] >= 0)
        os << "  n" << k << " -> n" << g.e_target[k][i - 1] << " [label=\"e" << i
           << "\"];\n";
  os << "}\n";
  return os.str();
}

std::string crystal_to_json(const CartanData& cd, const CrystalGraph& g) {
  std::ostringstream os;
  os << "{\"schema\":\"binf-graph/1\",\"cartan\":\"" << cd.name
     << "\",\"depth\":" << g.depth << ",\"levels\":[";
  for (std::size_t h = 0; h < g.level_sizes.size(); ++h) {
    if (h) os << ",";
    os << g.level_sizes[h];
  }
  os << "],\"nodes\":[";
  auto vec = [&os](const std::vector<long>& v) {
    os << "[";
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (j) os << ",";
      os << v[j];
    }
    os << "]";
  };
  for (std::size_t k = 0; k < g.nodes.size(); ++k) {
    if (k) os << ",";
    os << "{\"id\":" << k << ",\"datum\":";
    vec(g.nodes[k].data);
    os << ",\"wt\":";
    vec(binf_wt(cd, g.nodes[k]));
    std::vector<long> eps, eps_star;
    for (int i = 1; i <= cd.rank; ++i) {
      eps.push_back(binf_epsilon(cd, g.nodes[k], i));
      eps_star.push_back(binf_epsilon_star(cd, g.nodes[k], i));
    }
    os << ",\"eps\":";
    vec(eps);
    os << ",\"eps_star\":";
    vec(eps_star);
    os << "}";
  }
  os << "],\"edges\":[";
  bool first = true;
  for (std::size_t k = 0; k < g.nodes.size(); ++k)
    for (int i = 1; i <= cd.rank; ++i)
      if (g.e_target[k][i - 1] >= 0) {
        if (!first) os << ",";
        first = false;
        os << "{\"from\":" << k << ",\"to\":" << g.e_target[k][i - 1]
           << ",\"op\":\"e" << i << "\"}";
      }
  os << "]}";
  return os.str();
}

// lambda + mu - nu as a nonnegative integral root vector, or nullopt
static std::optional<RootVector> root_coords_of_gap(const CartanData& cd,
                                                    const Weight& lambda, const Weight& mu,
                                                    const Weight& nu) {
  MatQ a(cd.rank, cd.rank);
  for (int j = 0; j < cd.rank; ++j) {
    RootVector unit(cd.rank, 0);
    unit[j] = 1;
    Weight col = cd.root_to_weight(unit);
    for (int r = 0; r < cd.rank; ++r) a(r, j) = Rat(col[r]);
  }
  std::vector<Rat> rhs(cd.rank);
  for (int r = 0; r < cd.rank; ++r) rhs[r] = Rat(lambda[r] + mu[r] - nu[r]);
  auto sol = a.solve(rhs);
  if (!sol) return std::nullopt;
  RootVector kappa(cd.rank, 0);
  for (int r = 0; r < cd.rank; ++r) {
    if ((*sol)[r].get_den() != 1 || (*sol)[r] < 0) return std::nullopt;
    kappa[r] = (long)(*sol)[r].get_num().get_si();
  }
  return kappa;
}

long lr_multiplicity(const CartanData& cd, const CrystalGraph& g, const Weight& lambda,
                     const Weight& mu, const Weight& nu) {
  if ((int)lambda.size() != cd.rank || (int)mu.size() != cd.rank ||
      (int)nu.size() != cd.rank)
    throw std::invalid_argument("lr_multiplicity: weight has wrong rank");
  if (!cd.dominant(lambda) || !cd.dominant(mu) || !cd.dominant(nu))
    throw std::invalid_argument("lr_multiplicity: weights must be dominant");
  auto kappa = root_coords_of_gap(cd, lambda, mu, nu);
  if (!kappa) return 0;
  if (height(*kappa) > g.depth)
    throw std::invalid_argument("lr_multiplicity: graph is too shallow");
  long count = 0;
  for (const auto& b : g.nodes) {
    if (binf_nu(cd, b) != *kappa) continue;
    bool ok = true;
    for (int i = 1; i <= cd.rank && ok; ++i) {
      if (binf_epsilon(cd, b, i) > cd.pairing(i, mu)) ok = false;
      if (binf_epsilon_star(cd, b, i) > cd.pairing(i, lambda)) ok = false;
    }
    if (ok) ++count;
  }
  return count;
}

long lr_multiplicity(const CartanData& cd, const Weight& lambda, const Weight& mu,
                     const Weight& nu) {
  if ((int)lambda.size() != cd.rank || (int)mu.size() != cd.rank ||
      (int)nu.size() != cd.rank)
    throw std::invalid_argument("lr_multiplicity: weight has wrong rank");
  auto kappa = root_coords_of_gap(cd, lambda, mu, nu);
  if (!kappa) return 0;
  CrystalGraph g = enumerate_binf(cd, height(*kappa));
  return lr_multiplicity(cd, g, lambda, mu, nu);
}

}  // namespace bibasis
