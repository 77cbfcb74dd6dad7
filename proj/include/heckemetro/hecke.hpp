#pragma once

// Iwahori-Hecke algebra of a finite Coxeter group.
//
// Elements are sparse combinations of T_w (standard basis) or of
// T~_w = q^{-l(w)} T_w (normalised basis, in which left multiplication by
// T~_i is the single-site Metropolis kernel with theta = 1/q).

#include <map>
#include <stdexcept>
#include <vector>

#include "coxeter.hpp"
#include "matrix.hpp"

namespace heckemetro {

enum class Basis { T, tilde };

template <Scalar S>
class HeckeVector {
 public:
  HeckeVector(const GroupFamily& family, const S& q, Basis basis) : family_(family), q_(q), basis_(basis) {
    if (q_ <= 0) throw std::domain_error("Hecke parameter q must be positive");
  }

  static HeckeVector basis_element(const GroupFamily& family, const S& q, Basis basis, const GroupElement& w) {
    HeckeVector h(family, q, basis);
    h.add(w, from_int<S>(1));
    return h;
  }

  /// T_i or T~_i.
  static HeckeVector generator(const GroupFamily& family, const S& q, Basis basis, int i) {
    return basis_element(family, q, basis, heckemetro::generator(family, i));
  }

  static HeckeVector one(const GroupFamily& family, const S& q, Basis basis) {
    return basis_element(family, q, basis, identity(family));
  }

  /// Product of generators along a word, left to right: X_{i_1} X_{i_2} ... X_{i_k}.
  static HeckeVector word(const GroupFamily& family, const S& q, Basis basis, const std::vector<int>& letters);

  const GroupFamily& family() const { return family_; }
  const S& q() const { return q_; }
  S theta() const { return from_int<S>(1) / q_; }
  Basis basis() const { return basis_; }
  const std::map<GroupElement, S>& terms() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }

  S coefficient(const GroupElement& w) const {
    auto it = coeffs_.find(w);
    return it == coeffs_.end() ? from_int<S>(0) : it->second;
  }

  /// Adds c * X_w, dropping the entry if it cancels.
  void add(const GroupElement& w, const S& c) {
    if (w.family != family_) throw std::invalid_argument("element from a different family");
    if (c == 0) return;
    auto [it, inserted] = coeffs_.try_emplace(w, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) coeffs_.erase(it);
    }
  }

  /// Same element expressed in the other basis (T~_w = q^{-l(w)} T_w).
  HeckeVector in_basis(Basis target) const {
    if (target == basis_) return *this;
    HeckeVector out(family_, q_, target);
    for (const auto& [w, c] : coeffs_) {
      const long l = length(w);
      out.add(w, target == Basis::T ? S(c * ipow(q_, -l)) : S(c * ipow(q_, l)));
    }
    return out;
  }

  HeckeVector& operator+=(const HeckeVector& o) {
    check_compatible(o);
    for (const auto& [w, c] : o.coeffs_) add(w, c);
    return *this;
  }
  HeckeVector& operator*=(const S& s) {
    if (s == 0) {
      coeffs_.clear();
      return *this;
    }
    for (auto& [w, c] : coeffs_) c *= s;
    return *this;
  }
  friend HeckeVector operator+(HeckeVector a, const HeckeVector& b) { return a += b; }
  friend HeckeVector operator*(const S& s, HeckeVector a) { return a *= s; }

  friend bool operator==(const HeckeVector& a, const HeckeVector& b) {
    return a.family_ == b.family_ && a.q_ == b.q_ && a.basis_ == b.basis_ && a.coeffs_ == b.coeffs_;
  }

  void check_compatible(const HeckeVector& o) const {
    if (family_ != o.family_) throw std::invalid_argument("Hecke vectors from different families");
    if (q_ != o.q_) throw std::invalid_argument("Hecke vectors with different q");
    if (basis_ != o.basis_) throw std::invalid_argument("Hecke vectors in different bases");
  }

 private:
  GroupFamily family_;
  S q_;
  Basis basis_;
  std::map<GroupElement, S> coeffs_;
};

/// T_i * h in the T basis:
///   T_i T_w = T_{s_i w}                    if l(s_i w) > l(w)
///   T_i T_w = (q - 1) T_w + q T_{s_i w}    otherwise.
template <Scalar S>
HeckeVector<S> generator_times(int i, const HeckeVector<S>& h) {
  if (h.basis() != Basis::T) throw std::invalid_argument("generator_times expects the T basis");
  HeckeVector<S> out(h.family(), h.q(), Basis::T);
  const S& q = h.q();
  for (const auto& [w, c] : h.terms()) {
    GroupElement sw = left_reflect(i, w);
    if (!is_left_descent(i, w)) {
      out.add(sw, c);
    } else {
      out.add(w, S((q - 1) * c));
      out.add(sw, S(q * c));
    }
  }
  return out;
}

/// T~_i * h in the T~ basis:
///   T~_i T~_w = T~_{s_i w}                              if l(s_i w) > l(w)
///   T~_i T~_w = (1 - theta) T~_w + theta T~_{s_i w}     otherwise.
template <Scalar S>
HeckeVector<S> tilde_generator_times(int i, const HeckeVector<S>& h) {
  if (h.basis() != Basis::tilde) throw std::invalid_argument("tilde_generator_times expects the T~ basis");
  HeckeVector<S> out(h.family(), h.q(), Basis::tilde);
  const S theta = h.theta();
  for (const auto& [w, c] : h.terms()) {
    GroupElement sw = left_reflect(i, w);
    if (!is_left_descent(i, w)) {
      out.add(sw, c);
    } else {
      out.add(w, S((1 - theta) * c));
      out.add(sw, S(theta * c));
    }
  }
  return out;
}

namespace detail {

template <Scalar S>
HeckeVector<S> apply_generator(int i, const HeckeVector<S>& h) {
  return h.basis() == Basis::T ? generator_times(i, h) : tilde_generator_times(i, h);
}

}  // namespace detail

template <Scalar S>
HeckeVector<S> HeckeVector<S>::word(const GroupFamily& family, const S& q, Basis basis,
                                    const std::vector<int>& letters) {
  HeckeVector h = one(family, q, basis);
  for (auto it = letters.rbegin(); it != letters.rend(); ++it) h = detail::apply_generator(*it, h);
  return h;
}

/// h1 * h2, expanding each basis term of h1 along a reduced word.
template <Scalar S>
HeckeVector<S> product(const HeckeVector<S>& h1, const HeckeVector<S>& h2) {
  h1.check_compatible(h2);
  HeckeVector<S> out(h1.family(), h1.q(), h1.basis());
  for (const auto& [x, a] : h1.terms()) {
    HeckeVector<S> partial = h2;
    const auto word = reduced_word(x);
    for (auto it = word.rbegin(); it != word.rend(); ++it) partial = detail::apply_generator(*it, partial);
    partial *= a;
    out += partial;
  }
  return out;
}

/// Anti-automorphism T_w -> T_{w^{-1}} (also T~_w -> T~_{w^{-1}}).
template <Scalar S>
HeckeVector<S> star(const HeckeVector<S>& h) {
  HeckeVector<S> out(h.family(), h.q(), h.basis());
  for (const auto& [w, c] : h.terms()) out.add(inverse(w), c);
  return out;
}

/// t(T_w) = P_W(q) if w = 1, else 0.
template <Scalar S>
S trace_t(const HeckeVector<S>& h) {
  return h.coefficient(identity(h.family())) * poincare_polynomial(h.family(), h.q());
}

/// <h1, h2> = t(h1 h2).
template <Scalar S>
S inner_product(const HeckeVector<S>& h1, const HeckeVector<S>& h2) {
  return trace_t(product(h1, h2));
}

/// Matrix M with M[w][w'] = coefficient of T~_{w'} in h T~_w, rows and
/// columns in enumeration order. Rows are built by right multiplication
/// from the row of a shorter element, so the cost is O(|W|^2).
template <Scalar S>
DenseMatrix<S> left_mult_matrix(const HeckeVector<S>& h_any, const Enumeration& en) {
  if (h_any.family() != en.family()) throw std::invalid_argument("enumeration of a different family");
  const HeckeVector<S> h = h_any.in_basis(Basis::tilde);
  const std::size_t n = en.size();
  const S theta = h.theta();
  DenseMatrix<S> m(n);
  for (const auto& [w, c] : h.terms()) m(en.identity_index(), en.index_of(w)) = c;

  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return en.length_at(a) < en.length_at(b); });

  for (std::size_t idx : order) {
    if (idx == en.identity_index()) continue;
    // w = w' s_j with l(w') = l(w) - 1, so h T~_w = (h T~_{w'}) T~_j.
    int j = 1;
    for (; j <= en.family().rank(); ++j) {
      if (en.length_at(en.right_reflect_at(j, idx)) < en.length_at(idx)) break;
    }
    const std::size_t parent = en.right_reflect_at(j, idx);
    auto src = m.row(parent);
    auto dst = m.row(idx);
    for (std::size_t y = 0; y < n; ++y) {
      if (src[y] == 0) continue;
      const std::size_t ys = en.right_reflect_at(j, y);
      if (en.length_at(ys) > en.length_at(y)) {
        dst[ys] += src[y];
      } else {
        dst[y] += (1 - theta) * src[y];
        dst[ys] += theta * src[y];
      }
    }
  }
  return m;
}

/// Trace of the regular representation (left multiplication on H).
template <Scalar S>
S regular_trace(const HeckeVector<S>& h, const Enumeration& en) {
  return left_mult_matrix(h, en).trace();
}

}  // namespace heckemetro
