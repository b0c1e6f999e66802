#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace tetraqg {

/// Exact arbitrary-precision rational, always canonical: reduced, positive
/// denominator. Closed under +,-,*,/.
using Rational = boost::multiprecision::cpp_rational;

/// Renders "p" for integers, "p/q" otherwise.
inline std::string to_string(const Rational& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

/// Parses "p" or "p/q" with optional sign. Throws std::invalid_argument on
/// malformed input or zero denominator.
inline Rational parse_rational(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  try {
    Rational r{std::string(text)};
    return r;
  } catch (const std::exception&) {
    throw std::invalid_argument("malformed rational literal: " + std::string(text));
  }
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace tetraqg
