#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace pgn {

using Rational = mpq_class;

// p/q in lowest terms; q != 0.
Rational frac(long p, long q);

// Accepts "p/q", integers, decimals and scientific notation ("1.5e-3");
// decimals are converted exactly (0.1 -> 1/10).
Rational parse_rational(std::string_view text);

// "p" or "p/q" in lowest terms.
std::string to_string(const Rational& r);

// Exact binary value of a finite double.
Rational from_double(double x);
double to_double(const Rational& r);

// True when r is exactly representable as a double.
bool is_double_exact(const Rational& r);

Rational floor_rational(const Rational& r);
Rational ceil_rational(const Rational& r);
Rational abs_rational(const Rational& r);

}  // namespace pgn
