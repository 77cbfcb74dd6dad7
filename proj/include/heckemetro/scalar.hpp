#pragma once

// Scalar types used throughout the library.
//
// Exact mode uses GMP rationals; float mode uses double and is only reached
// from bound evaluation and the cosine-valued dihedral formulas.

#include <gmpxx.h>

#include <cctype>
#include <cmath>
#include <concepts>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>

namespace heckemetro {

using Rational = mpq_class;
using Integer = mpz_class;

template <class S>
concept Scalar = std::same_as<S, Rational> || std::floating_point<S>;

template <class S>
inline constexpr bool is_exact_v = std::same_as<S, Rational>;

/// Integer power; negative exponents invert the base.
template <Scalar S>
S ipow(const S& base, long exponent) {
  if constexpr (is_exact_v<S>) {
    if (exponent < 0) {
      if (base == 0) throw std::domain_error("ipow: zero to a negative power");
      return ipow(Rational(Rational(1) / base), -exponent);
    }
    Integer num, den;
    mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(exponent));
    mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(exponent));
    Rational r(num, den);
    r.canonicalize();
    return r;
  } else {
    return std::pow(base, static_cast<S>(exponent));
  }
}

template <Scalar S>
S abs_value(const S& x) {
  if constexpr (is_exact_v<S>) {
    return abs(x);
  } else {
    return std::fabs(x);
  }
}

/// Correctly rounded conversion; mpq get_d truncates toward zero.
inline double nearest_double(const Rational& r) {
  const double d = r.get_d();
  const double away = std::nextafter(d, r < 0 ? -HUGE_VAL : HUGE_VAL);
  if (!std::isfinite(away)) return d;
  const Rational gap_d = abs(Rational(d) - r);
  const Rational gap_away = abs(Rational(away) - r);
  return gap_away < gap_d ? away : d;
}

template <Scalar S>
double to_double(const S& x) {
  if constexpr (is_exact_v<S>) {
    return nearest_double(x);
  } else {
    return static_cast<double>(x);
  }
}

/// Converts a rational to S (identity for Rational, nearest double otherwise).
template <Scalar S>
S from_rational(const Rational& r) {
  if constexpr (is_exact_v<S>) {
    return r;
  } else {
    return static_cast<S>(nearest_double(r));
  }
}

template <Scalar S>
S from_int(long v) {
  if constexpr (is_exact_v<S>) {
    return Rational(v);
  } else {
    return static_cast<S>(v);
  }
}

/// q-integer [k]_q = 1 + q + ... + q^{k-1}, valid at q = 1.
template <Scalar S>
S q_integer(const S& q, int k) {
  S sum = from_int<S>(0);
  S term = from_int<S>(1);
  for (int i = 0; i < k; ++i) {
    sum += term;
    term *= q;
  }
  return sum;
}

/// "p/q" (or "p") for exact values.
inline std::string to_string(const Rational& r) {
  Rational c = r;
  c.canonicalize();
  if (c.get_den() == 1) return c.get_num().get_str();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

/// Parses "p/q", "p", or a finite decimal like "0.9" into an exact rational.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto trim = [](std::string& t) {
    while (!t.empty() && std::isspace(static_cast<unsigned char>(t.front()))) t.erase(t.begin());
    while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) t.pop_back();
  };
  trim(s);
  if (s.empty()) throw std::invalid_argument("empty rational");
  auto slash = s.find('/');
  auto parse_int = [](const std::string& t) {
    if (t.empty()) throw std::invalid_argument("malformed rational");
    std::size_t start = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (start == t.size()) throw std::invalid_argument("malformed rational: " + t);
    for (std::size_t i = start; i < t.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) {
        throw std::invalid_argument("malformed rational: " + t);
      }
    }
    return Integer(t[0] == '+' ? t.substr(1) : t);
  };
  if (slash != std::string::npos) {
    Integer num = parse_int(s.substr(0, slash));
    Integer den = parse_int(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator: " + s);
    Rational r(num, den);
    r.canonicalize();
    return r;
  }
  auto dot = s.find('.');
  if (dot == std::string::npos) return Rational(parse_int(s));
  std::string whole = s.substr(0, dot);
  std::string frac = s.substr(dot + 1);
  bool negative = !whole.empty() && whole[0] == '-';
  if (whole.empty() || whole == "-" || whole == "+") whole += "0";
  if (frac.empty()) frac = "0";
  Integer w = parse_int(whole);
  Integer f = parse_int(frac);
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
  Rational r(abs(w) * scale + f, scale);
  r.canonicalize();
  return negative ? Rational(-r) : r;
}

}  // namespace heckemetro
