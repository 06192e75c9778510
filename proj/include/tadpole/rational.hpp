#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cctype>
#include <string>
#include <string_view>

#include "tadpole/errors.hpp"

namespace tadpole {

// Exact lengths, times and ratios. cpp_rational keeps values in lowest terms
// with a positive denominator.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline std::string to_string(const Rational& value) {
  const BigInt num = boost::multiprecision::numerator(value);
  const BigInt den = boost::multiprecision::denominator(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

namespace detail {

inline bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

// cpp_int reads a leading 0 as octal
inline BigInt from_digits(std::string_view s) {
  s.remove_prefix(std::min(s.find_first_not_of('0'), s.size()));
  return s.empty() ? BigInt(0) : BigInt(std::string(s));
}

}  // namespace detail

// Accepts "7", "-3", "5/4", "0.125" and "-.5". Anything else is a ParseError.
inline Rational parse_rational(std::string_view text) {
  const std::string original(text);
  auto fail = [&]() -> Rational { throw ParseError("not an exact number: '" + original + "'"); };

  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  if (text.empty()) return fail();

  Rational value;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto num = text.substr(0, slash);
    auto den = text.substr(slash + 1);
    if (!detail::all_digits(num) || !detail::all_digits(den)) return fail();
    BigInt d = detail::from_digits(den);
    if (d == 0) throw ParseError("zero denominator in '" + original + "'");
    value = Rational(detail::from_digits(num), d);
  } else if (auto dot = text.find('.'); dot != std::string_view::npos) {
    auto whole = text.substr(0, dot);
    auto frac = text.substr(dot + 1);
    if (whole.empty() && frac.empty()) return fail();
    if ((!whole.empty() && !detail::all_digits(whole)) || (!frac.empty() && !detail::all_digits(frac)))
      return fail();
    BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(frac.size()));
    BigInt digits = detail::from_digits(std::string(whole) + std::string(frac));
    value = Rational(digits, scale);
  } else {
    if (!detail::all_digits(text)) return fail();
    value = Rational(detail::from_digits(text));
  }
  return negative ? Rational(-value) : value;
}

}  // namespace tadpole
