#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "bibasis/multi_poly.hpp"

namespace bibasis {

struct PoleError : std::runtime_error {
  explicit PoleError(const std::string& factor)
      : std::runtime_error("evaluation point lies on the zero set of " + factor),
        vanishing_factor(factor) {}
  std::string vanishing_factor;
};

// num / prod(factors).  Denominator kept factored: in this code base every
// denominator arises as a product of (mostly linear) root forms, so greedy
// exact division by the stored factors is a complete reduction.  Factors are
// primitive with positive leading coefficient; scalar slack lives in num.
// Equality is decided by cross-multiplication, so it is exact regardless of
// how far reduction got.
class RationalFn {
 public:
  RationalFn() : num_(0) {}
  explicit RationalFn(MultiPoly num) : num_(std::move(num)) {}
  RationalFn(MultiPoly num, std::vector<MultiPoly> den_factors);

  static RationalFn constant(int nvars, const Rat& c) {
    return RationalFn(MultiPoly::constant(nvars, c));
  }

  int nvars() const { return num_.nvars(); }
  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.is_constant() && den_.empty(); }
  Rat constant_value() const;

  const MultiPoly& num() const { return num_; }
  const std::vector<MultiPoly>& den_factors() const { return den_; }
  MultiPoly den_product() const;

  RationalFn operator+(const RationalFn& o) const;
  RationalFn operator-(const RationalFn& o) const;
  RationalFn operator*(const RationalFn& o) const;
  RationalFn operator-() const;
  RationalFn& operator+=(const RationalFn& o);
  RationalFn scaled(const Rat& c) const;

  // divide by a polynomial (appends a denominator factor, then reduces)
  RationalFn divided_by(const MultiPoly& g) const;

  bool operator==(const RationalFn& o) const;
  bool operator!=(const RationalFn& o) const { return !(*this == o); }

  Rat evaluate(const std::vector<Rat>& point) const;  // throws PoleError

  // numerator/denominator coefficient lists of the restriction to x = s*dir
  std::pair<std::vector<Rat>, std::vector<Rat>> restrict_line(
      const std::vector<Rat>& dir) const;

  std::string to_string(const std::vector<std::string>& names) const;

  static int compare(const RationalFn& a, const RationalFn& b);

 private:
  void reduce();
  MultiPoly num_;
  std::vector<MultiPoly> den_;
};

}  // namespace bibasis
