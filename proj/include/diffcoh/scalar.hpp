#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace diffcoh {

using Integer = mpz_class;
using Rational = mpq_class;

inline bool is_integral(const Rational& q) { return q.get_den() == 1; }

inline Rational make_rational(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

/// Parses "3", "-7/2" into a canonical rational.
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

using RatVector = std::vector<Rational>;

}  // namespace diffcoh
