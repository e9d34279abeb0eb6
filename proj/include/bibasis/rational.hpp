#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace bibasis {

// Exact rational scalar used everywhere. mpq_class keeps values canonical
// (reduced, positive denominator) as long as construction goes through the
// helpers below.
using Rat = mpq_class;
using Int = mpz_class;

inline Rat rat(long num, long den = 1) {
  if (den == 0) throw std::invalid_argument("rat: zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

inline Rat rat_from_string(const std::string& s) {
  Rat q;
  if (q.set_str(s, 10) != 0)
    throw std::invalid_argument("rat_from_string: bad literal '" + s + "'");
  q.canonicalize();
  return q;
}

inline std::string to_string(const Rat& q) { return q.get_str(); }

inline Int factorial(unsigned n) {
  Int f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return f;
}

inline Rat binomial(long n, long k) {
  if (k < 0) return 0;
  Rat r = 1;
  for (long j = 0; j < k; ++j) r *= Rat(n - j, k - j);
  r.canonicalize();
  return r;
}

// Sign-stable double conversion for report output only; all math stays exact.
inline double to_double(const Rat& q) { return q.get_d(); }

}  // namespace bibasis
