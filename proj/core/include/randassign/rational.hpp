#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

namespace randassign {

/// Exact rational backed by GMP's mpq_t. Always canonical (lowest terms,
/// positive denominator); there is no floating point anywhere in the library.
using Rational = boost::multiprecision::mpq_rational;

/// Parses "p/q", "-p/q", integers, and finite decimals ("0.9", ".25", "-1.5")
/// into an exact value. Throws ArgumentError on anything else.
Rational parse_rational(std::string_view text);

/// Renders as "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& value);

}  // namespace randassign
