#pragma once

#include <gmpxx.h>

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cptp {

/// Exact rational scalar used by every construction routine.
using Rational = mpq_class;
using RationalVector = std::vector<Rational>;

/// Accepts "p" or "p/q" with an optional leading sign. Throws ParseError.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" text; the denominator is always written, even when it is 1.
std::string format_rational(const Rational& value);

double to_double(const Rational& value);
std::vector<double> to_double(std::span<const Rational> values);

/// Exact conversion of a finite double (every finite double is a dyadic rational).
Rational from_double(double value);

Rational dot(std::span<const Rational> lhs, std::span<const Rational> rhs);

Rational factorial(unsigned n);

}  // namespace cptp
