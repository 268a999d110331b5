#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

#include "centra/errors.hpp"

namespace centra {

using Integer = boost::multiprecision::cpp_int;

/// Exact scalar of the ground field. Values are always kept in canonical
/// form: reduced fraction with denominator > 0.
using Rational = boost::multiprecision::cpp_rational;

/// Parses "p", "-p" or "p/q" with q a positive integer literal. Anything
/// else (floating point syntax in particular) is a ParseError: the engine
/// admits no inexact input.
inline Rational parse_rational(const std::string& text) {
  const auto bad = [&]() -> Rational {
    throw ParseError("not a rational literal: \"" + text + "\"");
  };
  std::size_t i = 0;
  const std::size_t n = text.size();
  bool negative = false;
  if (i < n && (text[i] == '+' || text[i] == '-')) {
    negative = text[i] == '-';
    ++i;
  }
  const std::size_t num_begin = i;
  while (i < n && text[i] >= '0' && text[i] <= '9') ++i;
  if (i == num_begin) return bad();
  Integer num(text.substr(num_begin, i - num_begin));
  if (negative) num = -num;
  if (i == n) return Rational(num);
  if (text[i] != '/') return bad();
  ++i;
  const std::size_t den_begin = i;
  while (i < n && text[i] >= '0' && text[i] <= '9') ++i;
  if (i != n || i == den_begin) return bad();
  Integer den(text.substr(den_begin));
  if (den == 0) throw ParseError("zero denominator: \"" + text + "\"");
  return Rational(num, den);
}

/// "p/q", or plain "p" when the denominator is 1.
inline std::string rational_str(const Rational& r) { return r.str(); }

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline Integer rational_floor(const Rational& r) {
  Integer q = numerator(r) / denominator(r);  // truncates toward zero
  if (r < 0 && q * denominator(r) != numerator(r)) --q;
  return q;
}

inline Rational rat_pow(const Rational& base, int exp) {
  Rational acc(1);
  for (int i = 0; i < exp; ++i) acc *= base;
  return acc;
}

}  // namespace centra
