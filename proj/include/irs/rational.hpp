#pragma once

#include <cstdint>
#include <iomanip>
#include <sstream>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "irs/error.hpp"

namespace irs {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational make_rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw InvalidArgument("zero denominator");
  return Rational(BigInt(num), BigInt(den));
}

/// Exactly 1 / base^exponent.
inline Rational reciprocal_power(unsigned base, unsigned exponent) {
  BigInt den = boost::multiprecision::pow(BigInt(base), exponent);
  return Rational(BigInt(1), den);
}

/// "p/q", or "p" when the denominator is one.
inline std::string to_string(const Rational& r) {
  std::ostringstream out;
  out << boost::multiprecision::numerator(r);
  if (boost::multiprecision::denominator(r) != 1) {
    out << '/' << boost::multiprecision::denominator(r);
  }
  return out.str();
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline std::string to_decimal(const Rational& r, int digits = 12) {
  std::ostringstream out;
  out << std::setprecision(digits) << to_double(r);
  return out.str();
}

/// Parses "p/q", "p" or a terminating decimal such as "0.25".
inline Rational parse_rational(const std::string& text) {
  try {
    auto slash = text.find('/');
    if (slash != std::string::npos) {
      BigInt num(text.substr(0, slash));
      BigInt den(text.substr(slash + 1));
      if (den == 0) throw ParseError("zero denominator in '" + text + "'");
      return Rational(num, den);
    }
    auto dot = text.find('.');
    if (dot != std::string::npos) {
      std::string whole = text.substr(0, dot);
      std::string frac = text.substr(dot + 1);
      bool negative = !whole.empty() && whole[0] == '-';
      BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(frac.size()));
      BigInt w = (whole.empty() || whole == "-") ? BigInt(0) : BigInt(whole);
      BigInt f = frac.empty() ? BigInt(0) : BigInt(frac);
      if (negative) f = -f;
      return Rational(w * scale + f, scale);
    }
    return Rational(BigInt(text));
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception&) {
    throw ParseError("not a rational number: '" + text + "'");
  }
}

}  // namespace irs
