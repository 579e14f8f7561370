#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <string_view>

namespace substoch {

/// Arbitrary-precision fraction, always kept in lowest terms with a positive
/// denominator.
using Rational = mpq_class;

/// num/den in canonical form. Throws std::domain_error when den is 0.
Rational make_rational(long num, long den);

/// Parses `[-]digits[.digits]` or `[-]digits/digits`. Decimals are read as
/// exact base-10 fractions. Throws ParseError on malformed text or a zero
/// denominator.
Rational rational_from_text(std::string_view text);

/// "p/q", or "p" when the denominator is 1. Inverse of rational_from_text.
std::string to_string(const Rational& value);

/// Smallest integer >= value.
mpz_class ceil(const Rational& value);

}  // namespace substoch
