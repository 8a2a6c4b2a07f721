#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

#include "errors.hpp"

namespace nonfree {

/// Exact rational number. Every measure, weight and character value in the
/// library is carried in this type; nothing is ever rounded.
using Rational = mpq_class;

/// Parses "p/q" or "p" (optional sign). Throws InputError on anything else.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto valid = !s.empty();
  std::size_t i = (valid && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  std::size_t digits = 0, slashes = 0, den_digits = 0;
  for (; valid && i < s.size(); ++i) {
    if (s[i] == '/') {
      ++slashes;
      continue;
    }
    if (s[i] < '0' || s[i] > '9') {
      valid = false;
      break;
    }
    (slashes ? den_digits : digits) += 1;
  }
  if (!valid || digits == 0 || slashes > 1 || (slashes == 1 && den_digits == 0))
    throw InputError("malformed rational: '" + s + "'");
  if (s[0] == '+')
    s.erase(0, 1);
  Rational r;
  if (r.set_str(s, 10) != 0)
    throw InputError("malformed rational: '" + s + "'");
  if (r.get_den() == 0)
    throw InputError("zero denominator: '" + s + "'");
  r.canonicalize();
  return r;
}

inline std::string to_string(const Rational &r) { return r.get_str(); }

inline Rational pow(const Rational &base, unsigned long exponent) {
  Rational out = 1;
  for (unsigned long i = 0; i < exponent; ++i)
    out *= base;
  return out;
}

} // namespace nonfree
