#pragma once

// Exact rationals (GMP) and directed-rounding helpers.

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace l2h {

using Rational = mpq_class;
using Integer = mpz_class;

/// Smallest y = k / 2^bits with y^m >= x (x >= 0, m >= 1).
Rational root_up(const Rational& x, unsigned m, unsigned bits = 40);
/// Largest y = k / 2^bits with y^m <= x (x >= 0, m >= 1).
Rational root_down(const Rational& x, unsigned m, unsigned bits = 40);

inline Rational sqrt_up(const Rational& x, unsigned bits = 40) { return root_up(x, 2, bits); }
inline Rational sqrt_down(const Rational& x, unsigned bits = 40) { return root_down(x, 2, bits); }

/// Rounds x up (down) to a multiple of 2^-bits.
Rational round_up(const Rational& x, unsigned bits = 40);
Rational round_down(const Rational& x, unsigned bits = 40);

/// Nearest rational with denominator 2^bits above (below) a double.
Rational rational_above(double x, unsigned bits = 52);
Rational rational_below(double x, unsigned bits = 52);

/// Natural logarithm of a positive rational, accurate to double precision.
double log_rational(const Rational& x);

inline double to_double(const Rational& x) { return x.get_d(); }

Rational pow(const Rational& x, unsigned e);

std::string to_string(const Rational& x);

}  // namespace l2h
