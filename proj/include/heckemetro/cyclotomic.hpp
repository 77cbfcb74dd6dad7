#pragma once

// Exact arithmetic in the cyclotomic field Q(zeta_m).
//
// Elements are rational polynomials in zeta reduced modulo the m-th
// cyclotomic polynomial. Used for the generic degrees of the dihedral
// group, which involve cos(2 pi k / n).

#include <memory>
#include <stdexcept>
#include <utility>
#include <vector>

#include "scalar.hpp"

namespace heckemetro {

namespace poly {

using Poly = std::vector<Rational>;  // coefficient i multiplies x^i

inline void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline Poly mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

inline Poly sub(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  trim(r);
  return r;
}

/// Euclidean division; returns {quotient, remainder}.
inline std::pair<Poly, Poly> divmod(Poly a, const Poly& b) {
  if (b.empty()) throw std::domain_error("polynomial division by zero");
  trim(a);
  if (a.size() < b.size()) return {{}, a};
  Poly q(a.size() - b.size() + 1, Rational(0));
  const Rational lead = b.back();
  while (a.size() >= b.size() && !a.empty()) {
    std::size_t shift = a.size() - b.size();
    Rational factor = a.back() / lead;
    q[shift] = factor;
    for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= factor * b[i];
    trim(a);
  }
  trim(q);
  return {q, a};
}

/// Phi_m as a monic integer polynomial, by dividing x^m - 1 by Phi_d for d | m, d < m.
inline Poly cyclotomic_polynomial(int m) {
  if (m < 1) throw std::invalid_argument("cyclotomic order must be positive");
  Poly p(static_cast<std::size_t>(m) + 1, Rational(0));
  p[0] = -1;
  p[static_cast<std::size_t>(m)] = 1;
  for (int d = 1; d < m; ++d) {
    if (m % d == 0) p = divmod(p, cyclotomic_polynomial(d)).first;
  }
  return p;
}

}  // namespace poly

class CyclotomicField {
 public:
  explicit CyclotomicField(int order)
      : order_(order), modulus_(poly::cyclotomic_polynomial(order)) {}

  int order() const { return order_; }
  std::size_t degree() const { return modulus_.size() - 1; }
  const poly::Poly& modulus() const { return modulus_; }

 private:
  int order_;
  poly::Poly modulus_;
};

class Cyclotomic {
 public:
  Cyclotomic(std::shared_ptr<const CyclotomicField> field, const Rational& value)
      : field_(std::move(field)) {
    if (value != 0) coeffs_ = {value};
  }

  /// zeta^k for any integer k.
  static Cyclotomic zeta_power(std::shared_ptr<const CyclotomicField> field, long k) {
    const long m = field->order();
    long e = ((k % m) + m) % m;
    poly::Poly p(static_cast<std::size_t>(e) + 1, Rational(0));
    p[static_cast<std::size_t>(e)] = 1;
    Cyclotomic z(std::move(field), Rational(0));
    z.coeffs_ = std::move(p);
    z.reduce();
    return z;
  }

  const std::shared_ptr<const CyclotomicField>& field() const { return field_; }
  const poly::Poly& coefficients() const { return coeffs_; }

  bool is_zero() const { return coeffs_.empty(); }
  bool is_rational() const { return coeffs_.size() <= 1; }

  Rational rational() const {
    if (!is_rational()) throw std::domain_error("cyclotomic element is not rational");
    return coeffs_.empty() ? Rational(0) : coeffs_[0];
  }

  Cyclotomic& operator+=(const Cyclotomic& o) {
    check(o);
    if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Rational(0));
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    poly::trim(coeffs_);
    return *this;
  }
  Cyclotomic& operator-=(const Cyclotomic& o) {
    check(o);
    coeffs_ = poly::sub(coeffs_, o.coeffs_);
    return *this;
  }
  Cyclotomic& operator*=(const Cyclotomic& o) {
    check(o);
    coeffs_ = poly::mul(coeffs_, o.coeffs_);
    reduce();
    return *this;
  }
  Cyclotomic& operator*=(const Rational& r) {
    if (r == 0) {
      coeffs_.clear();
      return *this;
    }
    for (auto& c : coeffs_) c *= r;
    return *this;
  }
  Cyclotomic& operator/=(const Cyclotomic& o) { return *this *= o.inverse(); }

  friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
  friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
  friend Cyclotomic operator*(Cyclotomic a, const Cyclotomic& b) { return a *= b; }
  friend Cyclotomic operator*(Cyclotomic a, const Rational& r) { return a *= r; }
  friend Cyclotomic operator*(const Rational& r, Cyclotomic a) { return a *= r; }
  friend Cyclotomic operator/(Cyclotomic a, const Cyclotomic& b) { return a /= b; }
  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
    return a.field_->order() == b.field_->order() && a.coeffs_ == b.coeffs_;
  }

  /// Multiplicative inverse via the extended Euclidean algorithm against Phi_m.
  Cyclotomic inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero in cyclotomic field");
    poly::Poly r0 = field_->modulus(), r1 = coeffs_;
    poly::Poly s0, s1 = {Rational(1)};
    while (!r1.empty()) {
      auto [quot, rem] = poly::divmod(r0, r1);
      poly::Poly s2 = poly::sub(s0, poly::mul(quot, s1));
      r0 = std::move(r1);
      r1 = std::move(rem);
      s0 = std::move(s1);
      s1 = std::move(s2);
    }
    // r0 is a nonzero constant since Phi_m is irreducible.
    Cyclotomic out(field_, Rational(0));
    out.coeffs_ = std::move(s0);
    out *= Rational(1) / r0[0];
    out.reduce();
    return out;
  }

  /// Complex embedding zeta -> exp(2 pi i / m), real part.
  double real_part() const {
    const double pi = std::acos(-1.0);
    double sum = 0.0;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      sum += coeffs_[i].get_d() * std::cos(2.0 * pi * static_cast<double>(i) / field_->order());
    }
    return sum;
  }

 private:
  void check(const Cyclotomic& o) const {
    if (field_->order() != o.field_->order()) {
      throw std::invalid_argument("cyclotomic elements from different fields");
    }
  }
  void reduce() {
    if (coeffs_.size() >= field_->modulus().size()) {
      coeffs_ = poly::divmod(coeffs_, field_->modulus()).second;
    }
    poly::trim(coeffs_);
  }

  std::shared_ptr<const CyclotomicField> field_;
  poly::Poly coeffs_;
};

}  // namespace heckemetro
