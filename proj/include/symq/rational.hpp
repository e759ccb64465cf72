#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <string>

#include "symq/errors.hpp"

namespace symq {

using Rational = boost::rational<std::int64_t>;

inline std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

inline double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

// "p/q" or a bare integer.
inline Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(std::stoll(text));
    const std::int64_t num = std::stoll(text.substr(0, slash));
    const std::int64_t den = std::stoll(text.substr(slash + 1));
    if (den == 0) throw ParseError("rational with zero denominator: " + text);
    return Rational(num, den);
  } catch (const std::invalid_argument&) {
    throw ParseError("malformed rational: " + text);
  } catch (const std::out_of_range&) {
    throw ParseError("rational out of range: " + text);
  }
}

}  // namespace symq
