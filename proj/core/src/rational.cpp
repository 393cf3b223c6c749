#include "randassign/rational.hpp"

#include <cctype>

#include "randassign/errors.hpp"

namespace randassign {
namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

// Leading zeros would otherwise select octal in GMP's base detection.
boost::multiprecision::mpz_int decimal_integer(std::string_view digits) {
  while (digits.size() > 1 && digits.front() == '0') digits.remove_prefix(1);
  return boost::multiprecision::mpz_int(std::string(digits));
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string original(text);
  if (text.empty()) throw ArgumentError("empty rational literal");

  bool negative = false;
  if (text.front() == '-' || text.front() == '+') {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }

  Rational value;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto num = text.substr(0, slash);
    auto den = text.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) {
      throw ArgumentError("malformed rational literal '" + original + "'");
    }
    boost::multiprecision::mpz_int d = decimal_integer(den);
    if (d == 0) throw ArgumentError("zero denominator in '" + original + "'");
    value = Rational(decimal_integer(num), d);
  } else if (auto dot = text.find('.'); dot != std::string_view::npos) {
    auto whole = text.substr(0, dot);
    auto frac = text.substr(dot + 1);
    if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) ||
        (!frac.empty() && !all_digits(frac))) {
      throw ArgumentError("malformed decimal literal '" + original + "'");
    }
    boost::multiprecision::mpz_int scale = 1;
    for (std::size_t k = 0; k < frac.size(); ++k) scale *= 10;
    const std::string joined = std::string(whole) + std::string(frac);
    boost::multiprecision::mpz_int digits = decimal_integer(joined);
    value = Rational(digits, scale);
  } else {
    if (!all_digits(text)) {
      throw ArgumentError("malformed rational literal '" + original + "'");
    }
    value = Rational(decimal_integer(text));
  }
  return negative ? Rational(-value) : value;
}

std::string to_string(const Rational& value) { return value.str(); }

}  // namespace randassign
