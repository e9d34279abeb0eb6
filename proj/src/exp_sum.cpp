#include "bibasis/exp_sum.hpp"

#include <sstream>

namespace bibasis {

ExpSum ExpSum::one(int nvars) {
  ExpSum s(nvars);
  // the zero weight needs a rank; coefficient maps are keyed by
  // omega-coordinates whose length equals nvars (rank of the root datum)
  s.terms_[Weight(nvars, 0)] = RationalFn::constant(nvars, 1);
  return s;
}

ExpSum ExpSum::exponential(int nvars, const Weight& beta) {
  ExpSum s(nvars);
  s.terms_[beta] = RationalFn::constant(nvars, 1);
  return s;
}

ExpSum ExpSum::term(const Weight& beta, const RationalFn& c) {
  ExpSum s(c.nvars());
  if (!c.is_zero()) s.terms_[beta] = c;
  return s;
}

RationalFn ExpSum::coefficient(const Weight& beta) const {
  auto it = terms_.find(beta);
  return it == terms_.end() ? RationalFn::constant(nvars_, 0) : it->second;
}

void ExpSum::add_term(const Weight& beta, const RationalFn& c) {
  auto it = terms_.find(beta);
  if (it == terms_.end()) {
    if (!c.is_zero()) terms_[beta] = c;
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

ExpSum ExpSum::operator+(const ExpSum& o) const {
  ExpSum r = *this;
  r += o;
  return r;
}

ExpSum& ExpSum::operator+=(const ExpSum& o) {
  for (const auto& [b, c] : o.terms_) add_term(b, c);
  return *this;
}

ExpSum ExpSum::operator-(const ExpSum& o) const { return *this + o.scaled(Rat(-1)); }

ExpSum ExpSum::operator*(const ExpSum& o) const {
  ExpSum r(nvars_);
  for (const auto& [a, ca] : terms_)
    for (const auto& [b, cb] : o.terms_) r.add_term(add_w(a, b), ca * cb);
  return r;
}

ExpSum ExpSum::scaled(const Rat& c) const {
  ExpSum r(nvars_);
  if (c == 0) return r;
  for (const auto& [b, f] : terms_) r.terms_[b] = f.scaled(c);
  return r;
}

ExpSum ExpSum::scaled_fn(const RationalFn& c) const {
  ExpSum r(nvars_);
  if (c.is_zero()) return r;
  for (const auto& [b, f] : terms_) r.add_term(b, f * c);
  return r;
}

ExpSum ExpSum::divided_by(const MultiPoly& g) const {
  ExpSum r(nvars_);
  for (const auto& [b, f] : terms_) r.terms_[b] = f.divided_by(g);
  return r;
}

bool ExpSum::operator==(const ExpSum& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  auto it = terms_.begin();
  auto jt = o.terms_.begin();
  for (; it != terms_.end(); ++it, ++jt) {
    if (it->first != jt->first) return false;
    if (!(it->second == jt->second)) return false;
  }
  return true;
}

std::map<Weight, Rat> ExpSum::evaluate(const std::vector<Rat>& point) const {
  std::map<Weight, Rat> out;
  for (const auto& [b, f] : terms_) out[b] = f.evaluate(point);
  return out;
}

std::string ExpSum::to_string(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [b, f] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "e" << format_weight(b) << "*[" << f.to_string(names) << "]";
  }
  return os.str();
}

}  // namespace bibasis
