#include "bibasis/multi_poly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace bibasis {

MultiPoly MultiPoly::constant(int nvars, const Rat& c) {
  MultiPoly p(nvars);
  if (c != 0) p.terms_[Exponents(nvars, 0)] = c;
  return p;
}

MultiPoly MultiPoly::variable(int nvars, int idx) {
  if (idx < 0 || idx >= nvars) throw std::out_of_range("variable index");
  MultiPoly p(nvars);
  Exponents e(nvars, 0);
  e[idx] = 1;
  p.terms_[e] = 1;
  return p;
}

MultiPoly MultiPoly::monomial(int nvars, const Exponents& e, const Rat& c) {
  if ((int)e.size() != nvars) throw std::invalid_argument("bad exponent vector");
  MultiPoly p(nvars);
  if (c != 0) p.terms_[e] = c;
  return p;
}

bool MultiPoly::is_constant() const {
  if (terms_.empty()) return true;
  return terms_.size() == 1 && terms_.begin()->first == Exponents(nvars_, 0);
}

Rat MultiPoly::constant_value() const {
  if (terms_.empty()) return 0;
  if (!is_constant()) throw std::logic_error("polynomial is not constant");
  return terms_.begin()->second;
}

int MultiPoly::total_degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_)
    d = std::max(d, std::accumulate(e.begin(), e.end(), 0));
  return d;
}

Rat MultiPoly::coefficient(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rat(0) : it->second;
}

void MultiPoly::set_coefficient(const Exponents& e, const Rat& c) {
  if (c == 0)
    terms_.erase(e);
  else
    terms_[e] = c;
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
  MultiPoly r = *this;
  r += o;
  return r;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  if (nvars_ != o.nvars_) throw std::invalid_argument("variable count mismatch");
  for (const auto& [e, c] : o.terms_) {
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      terms_[e] = c;
    } else {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }
  return *this;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const {
  MultiPoly r = *this;
  r -= o;
  return r;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  if (nvars_ != o.nvars_) throw std::invalid_argument("variable count mismatch");
  for (const auto& [e, c] : o.terms_) {
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      terms_[e] = -c;
    } else {
      it->second -= c;
      if (it->second == 0) terms_.erase(it);
    }
  }
  return *this;
}

MultiPoly MultiPoly::operator-() const { return scaled(Rat(-1)); }

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
  if (nvars_ != o.nvars_) throw std::invalid_argument("variable count mismatch");
  MultiPoly r(nvars_);
  for (const auto& [ea, ca] : terms_)
    for (const auto& [eb, cb] : o.terms_) {
      Exponents e(nvars_);
      for (int i = 0; i < nvars_; ++i) e[i] = ea[i] + eb[i];
      auto it = r.terms_.find(e);
      if (it == r.terms_.end()) {
        Rat c = ca * cb;
        if (c != 0) r.terms_[e] = c;
      } else {
        it->second += ca * cb;
        if (it->second == 0) r.terms_.erase(it);
      }
    }
  return r;
}

MultiPoly MultiPoly::scaled(const Rat& c) const {
  MultiPoly r(nvars_);
  if (c == 0) return r;
  for (const auto& [e, v] : terms_) r.terms_[e] = v * c;
  return r;
}

MultiPoly MultiPoly::pow(int k) const {
  if (k < 0) throw std::invalid_argument("negative power");
  MultiPoly r = constant(nvars_, 1);
  for (int i = 0; i < k; ++i) r = r * (*this);
  return r;
}

MultiPoly MultiPoly::derivative(int idx) const {
  if (idx < 0 || idx >= nvars_) throw std::out_of_range("variable index");
  MultiPoly r(nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[idx] == 0) continue;
    Exponents d = e;
    --d[idx];
    r.terms_[d] = c * e[idx];
  }
  return r;
}

bool MultiPoly::grlex_less(const Exponents& a, const Exponents& b) {
  int da = std::accumulate(a.begin(), a.end(), 0);
  int db = std::accumulate(b.begin(), b.end(), 0);
  if (da != db) return da < db;
  return a < b;
}

std::pair<MultiPoly::Exponents, Rat> MultiPoly::leading_term() const {
  if (terms_.empty()) throw std::logic_error("leading term of zero polynomial");
  auto best = terms_.begin();
  for (auto it = std::next(terms_.begin()); it != terms_.end(); ++it)
    if (grlex_less(best->first, it->first)) best = it;
  return {best->first, best->second};
}

std::optional<MultiPoly> MultiPoly::divide_exact(const MultiPoly& g) const {
  if (g.is_zero()) throw std::invalid_argument("division by zero polynomial");
  MultiPoly rem = *this;
  MultiPoly quot(nvars_);
  auto [ge, gc] = g.leading_term();
  while (!rem.is_zero()) {
    auto [re, rc] = rem.leading_term();
    Exponents q(nvars_);
    for (int i = 0; i < nvars_; ++i) {
      q[i] = re[i] - ge[i];
      if (q[i] < 0) return std::nullopt;
    }
    MultiPoly t = monomial(nvars_, q, rc / gc);
    quot += t;
    rem -= t * g;
  }
  return quot;
}

std::pair<Rat, MultiPoly> MultiPoly::primitive_part() const {
  if (terms_.empty()) return {Rat(0), MultiPoly(nvars_)};
  // gcd of numerators over lcm of denominators
  Int num_gcd = 0, den_lcm = 1;
  for (const auto& [e, c] : terms_) {
    Int n = c.get_num(), d = c.get_den();
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), n.get_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), d.get_mpz_t());
  }
  Rat scale(num_gcd, den_lcm);
  scale.canonicalize();
  if (leading_term().second < 0) scale = -scale;
  MultiPoly prim = scaled(Rat(1) / scale);
  return {scale, prim};
}

Rat MultiPoly::evaluate(const std::vector<Rat>& point) const {
  if ((int)point.size() != nvars_) throw std::invalid_argument("bad point dimension");
  Rat acc = 0;
  for (const auto& [e, c] : terms_) {
    Rat t = c;
    for (int i = 0; i < nvars_; ++i)
      for (int k = 0; k < e[i]; ++k) t *= point[i];
    acc += t;
  }
  return acc;
}

std::vector<Rat> MultiPoly::restrict_line(const std::vector<Rat>& dir) const {
  if ((int)dir.size() != nvars_) throw std::invalid_argument("bad direction dimension");
  int deg = std::max(total_degree(), 0);
  std::vector<Rat> out(deg + 1, Rat(0));
  for (const auto& [e, c] : terms_) {
    Rat t = c;
    int d = 0;
    for (int i = 0; i < nvars_; ++i) {
      d += e[i];
      for (int k = 0; k < e[i]; ++k) t *= dir[i];
    }
    out[d] += t;
  }
  while (out.size() > 1 && out.back() == 0) out.pop_back();
  return out;
}

MultiPoly MultiPoly::substitute(const std::vector<MultiPoly>& vals) const {
  if ((int)vals.size() != nvars_) throw std::invalid_argument("bad substitution arity");
  int target_vars = vals.empty() ? 0 : vals[0].nvars();
  return eval_with<MultiPoly>(vals, MultiPoly(target_vars),
                              constant(target_vars, 1));
}

int MultiPoly::compare(const MultiPoly& a, const MultiPoly& b) {
  if (a.nvars_ != b.nvars_) return a.nvars_ < b.nvars_ ? -1 : 1;
  if (a.terms_ == b.terms_) return 0;
  return a.terms_ < b.terms_ ? -1 : 1;
}

std::string MultiPoly::to_string(const std::vector<std::string>& names) const {
  if ((int)names.size() != nvars_) throw std::invalid_argument("bad name list");
  if (terms_.empty()) return "0";
  std::vector<const std::pair<const Exponents, Rat>*> order;
  for (const auto& t : terms_) order.push_back(&t);
  std::sort(order.begin(), order.end(),
            [](auto* a, auto* b) { return grlex_less(b->first, a->first); });
  std::ostringstream os;
  bool first = true;
  for (auto* t : order) {
    const auto& [e, c] = *t;
    Rat mag = c < 0 ? Rat(-c) : c;
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool has_vars = std::accumulate(e.begin(), e.end(), 0) > 0;
    if (!has_vars || mag != 1) {
      os << mag.get_str();
      if (has_vars) os << "*";
    }
    bool first_var = true;
    for (int i = 0; i < nvars_; ++i) {
      if (e[i] == 0) continue;
      if (!first_var) os << "*";
      first_var = false;
      os << names[i];
      if (e[i] > 1) os << "^" << e[i];
    }
  }
  return os.str();
}

std::vector<std::string> default_var_names(int nvars, const std::string& stem) {
  std::vector<std::string> names;
  for (int i = 1; i <= nvars; ++i) names.push_back(stem + std::to_string(i));
  return names;
}

}  // namespace bibasis
