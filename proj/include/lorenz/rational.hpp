#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace lorenz {

using Rational = mpq_class;
using BigInt = mpz_class;

enum class NumericMode { Exact, Float };

// Parses "3/5", "-0.9", "1.1", "1e-7" or "2.5E+3" exactly. Throws ParseError.
Rational parse_rational(std::string_view text);

// Exact conversion of a finite double (every binary64 value is a dyadic rational).
Rational rational_from_double(double value);

double to_double(const Rational& value);

// Natural log of a positive rational; safe for magnitudes beyond the double range.
double log_rational(const Rational& value);
double log_bigint(const BigInt& value);

std::string to_string(const Rational& value);

// GMP arithmetic expects canonical operands; values built from (num, den) may not be.
inline Rational canonical(Rational value) {
    value.canonicalize();
    return value;
}

// Lets templated code convert either numeric mode to double.
inline double as_double(double value) { return value; }
inline double as_double(const Rational& value) { return to_double(value); }

template <class T>
T from_rational(const Rational& value);

template <>
inline Rational from_rational<Rational>(const Rational& value) {
    return value;
}

template <>
inline double from_rational<double>(const Rational& value) {
    return to_double(value);
}

}  // namespace lorenz
