#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace isoclass {

// Exact rational scalar used for bit-exact risks and max-flow capacities.
using Rational = mpq_class;

// num / den in canonical form (mpq_class(num, den) is not reduced).
Rational ratio(long num, long den);

// Exact conversion: every finite binary64 value is a dyadic rational.
Rational to_rational(double value);

// Parses an integer, decimal ("-0.25", "1.5e-3") or fraction ("3/4")
// literal without rounding. Throws std::invalid_argument on bad input.
Rational parse_rational(std::string_view text);

double to_double(const Rational& value);

std::string to_string(const Rational& value);

// "16/30" style rendering over a fixed denominator when it divides evenly,
// otherwise the canonical reduced form.
std::string to_string_over(const Rational& value, long denominator);

int sign(const Rational& value);

}  // namespace isoclass
