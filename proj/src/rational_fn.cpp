#include "bibasis/rational_fn.hpp"

#include <algorithm>
#include <sstream>

namespace bibasis {

RationalFn::RationalFn(MultiPoly num, std::vector<MultiPoly> den_factors)
    : num_(std::move(num)), den_(std::move(den_factors)) {
  for (const auto& f : den_)
    if (f.is_zero()) throw std::invalid_argument("zero denominator factor");
  reduce();
}

void RationalFn::reduce() {
  if (num_.is_zero()) {
    den_.clear();
    return;
  }
  Rat scalar = 1;
  std::vector<MultiPoly> kept;
  for (auto& f : den_) {
    auto [s, prim] = f.primitive_part();
    if (prim.is_constant()) {
      scalar /= s * prim.constant_value();
      continue;
    }
    scalar /= s;
    // cancel against the numerator where possible
    if (auto q = num_.divide_exact(prim)) {
      num_ = std::move(*q);
    } else {
      kept.push_back(std::move(prim));
    }
  }
  num_ = num_.scaled(scalar);
  std::sort(kept.begin(), kept.end(),
            [](const MultiPoly& a, const MultiPoly& b) {
              return MultiPoly::compare(a, b) < 0;
            });
  den_ = std::move(kept);
}

Rat RationalFn::constant_value() const {
  if (!is_constant()) throw std::logic_error("rational function is not constant");
  return num_.constant_value();
}

MultiPoly RationalFn::den_product() const {
  MultiPoly p = MultiPoly::constant(nvars(), 1);
  for (const auto& f : den_) p = p * f;
  return p;
}

RationalFn RationalFn::operator+(const RationalFn& o) const {
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  RationalFn r;
  r.num_ = num_ * o.den_product() + o.num_ * den_product();
  r.den_ = den_;
  r.den_.insert(r.den_.end(), o.den_.begin(), o.den_.end());
  r.reduce();
  return r;
}

RationalFn RationalFn::operator-(const RationalFn& o) const {
  return *this + o.scaled(Rat(-1));
}

RationalFn RationalFn::operator*(const RationalFn& o) const {
  RationalFn r;
  r.num_ = num_ * o.num_;
  r.den_ = den_;
  r.den_.insert(r.den_.end(), o.den_.begin(), o.den_.end());
  r.reduce();
  return r;
}

RationalFn RationalFn::operator-() const { return scaled(Rat(-1)); }

RationalFn& RationalFn::operator+=(const RationalFn& o) {
  *this = *this + o;
  return *this;
}

RationalFn RationalFn::scaled(const Rat& c) const {
  RationalFn r = *this;
  r.num_ = r.num_.scaled(c);
  if (c == 0) r.den_.clear();
  return r;
}

RationalFn RationalFn::divided_by(const MultiPoly& g) const {
  RationalFn r = *this;
  r.den_.push_back(g);
  r.reduce();
  return r;
}

bool RationalFn::operator==(const RationalFn& o) const {
  if (num_.nvars() != o.num_.nvars()) return false;
  return num_ * o.den_product() == o.num_ * den_product();
}

Rat RationalFn::evaluate(const std::vector<Rat>& point) const {
  Rat d = 1;
  for (const auto& f : den_) {
    Rat v = f.evaluate(point);
    if (v == 0) throw PoleError(f.to_string(default_var_names(nvars(), "t")));
    d *= v;
  }
  return num_.evaluate(point) / d;
}

std::pair<std::vector<Rat>, std::vector<Rat>> RationalFn::restrict_line(
    const std::vector<Rat>& dir) const {
  std::vector<Rat> n = num_.restrict_line(dir);
  std::vector<Rat> d{Rat(1)};
  for (const auto& f : den_) {
    std::vector<Rat> fd = f.restrict_line(dir);
    std::vector<Rat> prod(d.size() + fd.size() - 1, Rat(0));
    for (std::size_t i = 0; i < d.size(); ++i)
      for (std::size_t j = 0; j < fd.size(); ++j) prod[i + j] += d[i] * fd[j];
    d = std::move(prod);
  }
  return {n, d};
}

std::string RationalFn::to_string(const std::vector<std::string>& names) const {
  if (den_.empty()) return num_.to_string(names);
  std::ostringstream os;
  os << "(" << num_.to_string(names) << ")/(";
  for (std::size_t i = 0; i < den_.size(); ++i) {
    if (i) os << "*";
    os << "(" << den_[i].to_string(names) << ")";
  }
  os << ")";
  return os.str();
}

int RationalFn::compare(const RationalFn& a, const RationalFn& b) {
  int c = MultiPoly::compare(a.num_, b.num_);
  if (c != 0) return c;
  if (a.den_.size() != b.den_.size()) return a.den_.size() < b.den_.size() ? -1 : 1;
  for (std::size_t i = 0; i < a.den_.size(); ++i) {
    c = MultiPoly::compare(a.den_[i], b.den_[i]);
    if (c != 0) return c;
  }
  return 0;
}

}  // namespace bibasis
