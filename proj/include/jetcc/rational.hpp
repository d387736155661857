#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace jetcc {

// Exact rational scalar type. mpq_class is always kept canonical
// (reduced, positive denominator) by GMP itself.
using Rational = mpq_class;

inline Rational rat(long v) { return Rational(v); }

inline Rational rat(long num, long den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

// Parses "a" or "a/b" with optional sign. Throws on malformed input.
inline Rational rat_from_string(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  Rational r;
  if (r.set_str(s, 10) != 0)
    throw std::invalid_argument("bad rational literal: " + s);
  if (r.get_den() == 0)
    throw std::invalid_argument("zero denominator in literal: " + s);
  r.canonicalize();
  return r;
}

inline std::string rat_to_string(const Rational& r) { return r.get_str(); }

inline bool rat_is_zero(const Rational& r) { return sgn(r) == 0; }

}  // namespace jetcc
