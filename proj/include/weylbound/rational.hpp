#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace weylbound {

// Exact rational scalar. gmpxx keeps results of arithmetic canonical
// (lowest terms, positive denominator); values built from a raw
// numerator/denominator pair go through make_rational.
using Rational = mpq_class;
using Integer = mpz_class;

Rational make_rational(const Integer& num, const Integer& den);
Rational make_rational(std::int64_t num, std::int64_t den = 1);

// Parses "n", "n/d" or a plain decimal such as "440.87" exactly.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& x);
std::string to_string(const Integer& x);

Integer floor(const Rational& x);
Integer ceil(const Rational& x);

// Smallest multiple of 2^-bits that is >= x.
Rational round_up_to_grid(const Rational& x, unsigned bits);

enum class Rounding { Nearest, Up, Down };

// Fixed-point decimal rendering with `places` digits after the point.
std::string to_decimal(const Rational& x, int places, Rounding mode = Rounding::Nearest);

inline double to_double(const Rational& x) { return x.get_d(); }

inline Rational rational_min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline Rational rational_max(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace weylbound
