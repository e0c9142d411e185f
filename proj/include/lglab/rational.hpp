#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace lglab {

using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

// Accepts "p" or "p/q" with optional sign.
inline Rational rational_from_string(const std::string& text) {
  Rational q(text, 10);
  q.canonicalize();
  return q;
}

}  // namespace lglab
