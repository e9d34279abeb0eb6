#pragma once

#include <map>
#include <string>

#include "bibasis/rational_fn.hpp"
#include "bibasis/root_data.hpp"

namespace bibasis {

// Finite sum  Σ_β  c_β(t) e^β  with rational-function coefficients on t.
// Commutative ring under e^β e^γ = e^{β+γ}.  Weights are stored in
// omega-coordinates; entries with zero coefficient are never kept.
class ExpSum {
 public:
  ExpSum() : nvars_(0) {}
  explicit ExpSum(int nvars) : nvars_(nvars) {}

  static ExpSum zero(int nvars) { return ExpSum(nvars); }
  static ExpSum one(int nvars);
  static ExpSum exponential(int nvars, const Weight& beta);
  static ExpSum term(const Weight& beta, const RationalFn& c);

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const std::map<Weight, RationalFn>& terms() const { return terms_; }
  RationalFn coefficient(const Weight& beta) const;

  void add_term(const Weight& beta, const RationalFn& c);

  ExpSum operator+(const ExpSum& o) const;
  ExpSum operator-(const ExpSum& o) const;
  ExpSum operator*(const ExpSum& o) const;
  ExpSum& operator+=(const ExpSum& o);
  ExpSum scaled(const Rat& c) const;
  ExpSum scaled_fn(const RationalFn& c) const;
  ExpSum divided_by(const MultiPoly& g) const;

  bool operator==(const ExpSum& o) const;
  bool operator!=(const ExpSum& o) const { return !(*this == o); }

  // evaluate all coefficients at a rational point of t
  std::map<Weight, Rat> evaluate(const std::vector<Rat>& point) const;

  std::string to_string(const std::vector<std::string>& names) const;

 private:
  int nvars_;
  std::map<Weight, RationalFn> terms_;
};

}  // namespace bibasis
