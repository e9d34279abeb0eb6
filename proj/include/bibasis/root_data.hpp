#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bibasis/rational.hpp"

namespace bibasis {

// Weights live in fundamental-weight coordinates, root vectors in
// simple-root coordinates. Cartan matrix converts between the two
// (omega-coords of a root vector nu are A*nu), so all pairings stay integral.
using Weight = std::vector<long>;      // omega-basis
using RootVector = std::vector<long>;  // alpha-basis
using Word = std::vector<int>;         // 1-based simple-root indices

struct CartanData {
  std::string name;
  int rank = 0;
  std::vector<std::vector<int>> cartan;  // cartan[i][j] = <alpha_i^vee, alpha_j>, 0-based storage

  // Accepts "A2".."G2" and products joined with 'x', e.g. "A1xA1".
  // Finite type only, total rank <= 8.
  static CartanData parse(const std::string& type);

  int a(int i, int j) const;  // Cartan entry, 1-based indices

  long pairing(int i, const Weight& lam) const;         // <alpha_i^vee, lam>
  long pairing_root(int i, const RootVector& nu) const;  // same, nu in alpha-coords

  Weight root_to_weight(const RootVector& nu) const;
  Weight fundamental_weight(int i) const;
  Weight rho() const;
  RootVector simple_root(int i) const;
  RootVector zero_root() const { return RootVector(rank, 0); }

  bool dominant(const Weight& lam) const;

  // s_i on the two coordinate systems
  Weight reflect(int i, const Weight& lam) const;
  RootVector reflect_root(int i, const RootVector& beta) const;

  // Order of the braid relation between s_i and s_j (2, 3, 4 or 6).
  int braid_order(int i, int j) const;

  // All positive roots, sorted by (height, lex). Orbit closure of the
  // simple roots under simple reflections.
  std::vector<RootVector> positive_roots() const;

  // Some reduced word for w0 (greedy descent from rho).
  Word some_w0_word() const;

  // Diagram involution i -> i* defined by w0(alpha_i) = -alpha_{i*}.
  int star_index(int i) const;

  Weight w0_weight(const Weight& lam) const;
};

long height(const RootVector& nu);
bool is_nonneg(const RootVector& nu);
RootVector add(const RootVector& a, const RootVector& b);
RootVector sub(const RootVector& a, const RootVector& b);
Weight add_w(const Weight& a, const Weight& b);
Weight sub_w(const Weight& a, const Weight& b);
Weight neg_w(const Weight& a);

std::string format_root(const RootVector& nu);
std::string format_weight(const Weight& lam);
std::string format_word(const Word& w);

// beta_k = s_{i_1}...s_{i_{k-1}}(alpha_{i_k}).  Throws if w is not reduced
// (detected by a beta_k going negative).
std::vector<RootVector> word_roots(const CartanData& cd, const Word& w);

bool is_reduced(const CartanData& cd, const Word& w);

// Lazy DFS over all reduced words for w0.  States are Weyl elements tracked
// by their action on the simple roots; a letter i may extend the word while
// w(alpha_i) stays positive.
class ReducedWordEnumerator {
 public:
  explicit ReducedWordEnumerator(const CartanData& cd);
  std::optional<Word> next();

 private:
  struct Frame {
    std::vector<RootVector> images;  // w(alpha_j) for each j
    int next_letter;
  };
  const CartanData& cd_;
  std::size_t target_len_;
  std::vector<Frame> stack_;
  Word word_;
  bool done_ = false;
};

// Exhaustive list; guarded to rank <= 4.
std::vector<Word> reduced_words_w0(const CartanData& cd);

// All words one rank-2 braid relation away, in scan order, deduplicated.
std::vector<Word> braid_neighbors(const CartanData& cd, const Word& w);

// Number of multisets of positive roots summing to nu (height <= 12).
long long kostant_partition(const CartanData& cd, const RootVector& nu);

}  // namespace bibasis
