#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bibasis/rational.hpp"

namespace bibasis {

// Sparse multivariate polynomial over Q with a fixed variable count.
// Canonical form: no zero coefficients stored, so equality is map equality.
// Term order used for leading terms and printing is graded lex.
class MultiPoly {
 public:
  using Exponents = std::vector<int>;

  explicit MultiPoly(int nvars = 0) : nvars_(nvars) {}

  static MultiPoly constant(int nvars, const Rat& c);
  static MultiPoly variable(int nvars, int idx);  // 0-based
  static MultiPoly monomial(int nvars, const Exponents& e, const Rat& c);

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rat constant_value() const;  // throws if not constant
  int total_degree() const;    // -1 for the zero polynomial

  const std::map<Exponents, Rat>& terms() const { return terms_; }
  Rat coefficient(const Exponents& e) const;
  void set_coefficient(const Exponents& e, const Rat& c);

  MultiPoly operator+(const MultiPoly& o) const;
  MultiPoly operator-(const MultiPoly& o) const;
  MultiPoly operator*(const MultiPoly& o) const;
  MultiPoly operator-() const;
  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  MultiPoly scaled(const Rat& c) const;
  MultiPoly pow(int k) const;
  MultiPoly derivative(int idx) const;

  bool operator==(const MultiPoly& o) const {
    return nvars_ == o.nvars_ && terms_ == o.terms_;
  }
  bool operator!=(const MultiPoly& o) const { return !(*this == o); }

  // graded lex on exponent vectors
  static bool grlex_less(const Exponents& a, const Exponents& b);

  // leading term under graded lex; polynomial must be nonzero
  std::pair<Exponents, Rat> leading_term() const;

  // exact division; nullopt if not divisible
  std::optional<MultiPoly> divide_exact(const MultiPoly& g) const;

  // (scalar, primitive): poly = scalar * primitive, primitive has coprime
  // integer coefficients and positive leading coefficient
  std::pair<Rat, MultiPoly> primitive_part() const;

  Rat evaluate(const std::vector<Rat>& point) const;

  // restriction to the line x = s*dir: coefficients of s^0..s^deg
  std::vector<Rat> restrict_line(const std::vector<Rat>& dir) const;

  // evaluate in an arbitrary commutative ring; Ring needs *, +=, and
  // scaled(Rat)
  template <class Ring>
  Ring eval_with(const std::vector<Ring>& vals, const Ring& zero,
                 const Ring& one) const {
    Ring acc = zero;
    for (const auto& [e, c] : terms_) {
      Ring t = one;
      for (int i = 0; i < nvars_; ++i)
        for (int k = 0; k < e[i]; ++k) t = t * vals[i];
      acc += t.scaled(c);
    }
    return acc;
  }

  MultiPoly substitute(const std::vector<MultiPoly>& vals) const;

  // canonical ordering between polynomials (for sorting factor lists)
  static int compare(const MultiPoly& a, const MultiPoly& b);

  std::string to_string(const std::vector<std::string>& names) const;

 private:
  int nvars_;
  std::map<Exponents, Rat> terms_;
};

std::vector<std::string> default_var_names(int nvars, const std::string& stem);

}  // namespace bibasis
