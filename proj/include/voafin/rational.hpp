#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace voafin {

using Integer = mpz_class;
using Rational = mpq_class;

/// Parses "num/den", "num", or "-num/den". Throws std::invalid_argument on
/// malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical "num/den" form; the denominator is always printed ("3/1").
std::string to_string(const Rational& value);

/// Shortest form: "3" for integers, "1/2" otherwise. Used for labels only.
std::string to_short_string(const Rational& value);

bool is_integer(const Rational& value);

/// Floor of a rational as an exact integer.
Integer floor(const Rational& value);

/// Ceiling of a rational as an exact integer.
Integer ceil(const Rational& value);

/// Converts an integral rational to long; throws if out of range or fractional.
long to_long(const Rational& value);

/// Generalized binomial coefficient C(top, k) = top (top-1) ... (top-k+1) / k!
/// for any integer top (negative allowed) and k >= 0.
Integer binomial(long top, long k);

/// Same, with a rational top.
Rational binomial(const Rational& top, long k);

/// Exact power with integer exponent; base must be nonzero for negative exponents.
Rational pow(const Rational& base, long exponent);

}  // namespace voafin
