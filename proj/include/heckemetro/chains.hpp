#pragma once

// Metropolis kernels on an enumerated Coxeter group and the exact
// distribution arithmetic used to measure their convergence.

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "coxeter.hpp"
#include "hecke.hpp"
#include "matrix.hpp"

namespace heckemetro {

using EnumerationPtr = std::shared_ptr<const Enumeration>;

template <Scalar S>
void require_theta(const S& theta) {
  if (!(theta > 0 && theta <= 1)) throw std::domain_error("theta must satisfy 0 < theta <= 1");
}

/// Probability vector indexed like the enumeration.
template <Scalar S>
struct Distribution {
  EnumerationPtr enumeration;
  std::vector<S> values;

  static Distribution point_mass(EnumerationPtr en, std::size_t idx) {
    Distribution d{en, std::vector<S>(en->size(), from_int<S>(0))};
    d.values.at(idx) = from_int<S>(1);
    return d;
  }

  static Distribution uniform(EnumerationPtr en) {
    const S p = from_int<S>(1) / from_int<S>(static_cast<long>(en->size()));
    return {en, std::vector<S>(en->size(), p)};
  }

  S total() const {
    S s = from_int<S>(0);
    for (const auto& v : values) s += v;
    return s;
  }

  friend bool operator==(const Distribution& a, const Distribution& b) { return a.values == b.values; }
};

/// Mallows distribution pi(w) = q^{l(w)} / P_W(q) with q = 1/theta.
template <Scalar S>
Distribution<S> stationary(EnumerationPtr en, const S& theta) {
  require_theta(theta);
  const S q = from_int<S>(1) / theta;
  const S z = poincare_polynomial(en->family(), q);
  Distribution<S> d{en, {}};
  d.values.reserve(en->size());
  for (std::size_t idx = 0; idx < en->size(); ++idx) d.values.push_back(ipow(q, en->length_at(idx)) / z);
  return d;
}

enum class ScanKind { random, short_scan, long_scan };

inline std::string to_string(ScanKind k) {
  switch (k) {
    case ScanKind::random: return "random";
    case ScanKind::short_scan: return "short";
    case ScanKind::long_scan: return "long";
  }
  return {};
}

/// Row-stochastic kernel stored as the sequence of sparse steps that build it.
/// One step for single-site and random-scan kernels; one per letter for scans.
template <Scalar S>
class Kernel {
 public:
  Kernel(EnumerationPtr en, S theta, std::string description, std::vector<SparseMatrix<S>> steps)
      : en_(std::move(en)), theta_(std::move(theta)), description_(std::move(description)), steps_(std::move(steps)) {
    for (const auto& s : steps_) {
      if (s.size() != en_->size()) throw std::invalid_argument("kernel step has the wrong size");
    }
  }

  const EnumerationPtr& enumeration() const { return en_; }
  std::size_t size() const { return en_->size(); }
  const S& theta() const { return theta_; }
  const std::string& description() const { return description_; }
  const std::vector<SparseMatrix<S>>& steps() const { return steps_; }

  /// v * K.
  std::vector<S> apply(std::span<const S> v) const {
    std::vector<S> cur(v.begin(), v.end());
    for (const auto& s : steps_) cur = s.left_apply(cur);
    return cur;
  }

  /// m * K for a dense m.
  DenseMatrix<S> right_multiply(const DenseMatrix<S>& m) const {
    DenseMatrix<S> cur = m;
    for (const auto& s : steps_) cur = multiply(cur, s);
    return cur;
  }

  DenseMatrix<S> matrix() const { return right_multiply(DenseMatrix<S>::identity(size())); }

 private:
  EnumerationPtr en_;
  S theta_;
  std::string description_;
  std::vector<SparseMatrix<S>> steps_;
};

namespace detail {

template <Scalar S>
void add_metropolis_step(SparseMatrix<S>& m, const Enumeration& en, int i, const S& theta, const S& weight) {
  for (std::size_t x = 0; x < en.size(); ++x) {
    const std::size_t y = en.left_reflect_at(i, x);
    if (en.length_at(y) > en.length_at(x)) {
      m.add(x, y, weight);
    } else {
      if (theta != 1) m.add(x, x, S(weight * (1 - theta)));
      m.add(x, y, S(weight * theta));
    }
  }
}

}  // namespace detail

/// K_i(x, s_i x) = 1 if l(s_i x) > l(x); otherwise theta, with holding 1 - theta.
template <Scalar S>
Kernel<S> metropolis_kernel(EnumerationPtr en, int i, const S& theta) {
  require_theta(theta);
  detail::require_generator(en->family(), i);
  SparseMatrix<S> m(en->size());
  detail::add_metropolis_step(m, *en, i, theta, from_int<S>(1));
  return Kernel<S>(en, theta, "K_" + std::to_string(i), {std::move(m)});
}

/// (1/rank) * sum_i K_i.
template <Scalar S>
Kernel<S> random_scan_kernel(EnumerationPtr en, const S& theta) {
  require_theta(theta);
  const int r = en->family().rank();
  const S w = from_int<S>(1) / from_int<S>(r);
  SparseMatrix<S> m(en->size());
  for (int i = 1; i <= r; ++i) detail::add_metropolis_step(m, *en, i, theta, w);
  return Kernel<S>(en, theta, "random scan", {std::move(m)});
}

/// Applies K_{i_1} first, then K_{i_2}, and so on.
template <Scalar S>
Kernel<S> scan_kernel(EnumerationPtr en, const S& theta, const std::vector<int>& recipe) {
  require_theta(theta);
  std::vector<SparseMatrix<S>> steps;
  std::string desc = "scan(";
  for (std::size_t k = 0; k < recipe.size(); ++k) {
    const int i = recipe[k];
    detail::require_generator(en->family(), i);
    SparseMatrix<S> m(en->size());
    detail::add_metropolis_step(m, *en, i, theta, from_int<S>(1));
    steps.push_back(std::move(m));
    desc += (k ? "," : "") + std::to_string(i);
  }
  return Kernel<S>(en, theta, desc + ")", std::move(steps));
}

/// (1, ..., m, m, ..., 1) with m = rank.
inline std::vector<int> short_recipe(const GroupFamily& f) {
  std::vector<int> r;
  for (int i = 1; i <= f.rank(); ++i) r.push_back(i);
  for (int i = f.rank(); i >= 1; --i) r.push_back(i);
  return r;
}

/// A recipe whose Hecke element is T~_{w0}^2.
/// Symmetric: blocks (k, k-1, ..., 1, 1, ..., k) for k = 1..n-1.
/// Hypercube and dihedral: a reduced word of w0 read twice.
inline std::vector<int> long_recipe(const GroupFamily& f) {
  std::vector<int> r;
  if (f.kind() == FamilyKind::symmetric) {
    for (int k = 1; k <= f.rank(); ++k) {
      for (int i = k; i >= 1; --i) r.push_back(i);
      for (int i = 1; i <= k; ++i) r.push_back(i);
    }
    return r;
  }
  const auto w = reduced_word(longest_element(f));
  r = w;
  r.insert(r.end(), w.begin(), w.end());
  return r;
}

template <Scalar S>
Kernel<S> make_kernel(EnumerationPtr en, const S& theta, ScanKind kind) {
  switch (kind) {
    case ScanKind::random: return random_scan_kernel(en, theta);
    case ScanKind::short_scan: {
      Kernel<S> k = scan_kernel(en, theta, short_recipe(en->family()));
      return Kernel<S>(en, theta, "short scan", k.steps());
    }
    case ScanKind::long_scan: {
      Kernel<S> k = scan_kernel(en, theta, long_recipe(en->family()));
      return Kernel<S>(en, theta, "long scan", k.steps());
    }
  }
  throw std::invalid_argument("unknown scan kind");
}

/// Hecke element whose left-multiplication matrix is the recipe kernel:
/// T~_{i_k} ... T~_{i_1} for recipe (i_1, ..., i_k).
template <Scalar S>
HeckeVector<S> recipe_element(const GroupFamily& f, const S& theta, const std::vector<int>& recipe) {
  std::vector<int> reversed(recipe.rbegin(), recipe.rend());
  return HeckeVector<S>::word(f, from_int<S>(1) / theta, Basis::tilde, reversed);
}

/// (1/rank) * sum_i T~_i.
template <Scalar S>
HeckeVector<S> random_scan_element(const GroupFamily& f, const S& theta) {
  const S q = from_int<S>(1) / theta;
  HeckeVector<S> h(f, q, Basis::tilde);
  const S w = from_int<S>(1) / from_int<S>(f.rank());
  for (int i = 1; i <= f.rank(); ++i) h.add(generator(f, i), w);
  return h;
}

/// start * K^l.
template <Scalar S>
Distribution<S> evolve(const Kernel<S>& k, const Distribution<S>& start, long steps) {
  if (steps < 0) throw std::invalid_argument("evolve: negative step count");
  if (start.values.size() != k.size()) throw std::invalid_argument("evolve: distribution size mismatch");
  Distribution<S> d = start;
  for (long s = 0; s < steps; ++s) d.values = k.apply(d.values);
  return d;
}

/// K^l with every row, by repeated dense-times-sparse products.
template <Scalar S>
DenseMatrix<S> kernel_power(const Kernel<S>& k, long steps) {
  DenseMatrix<S> m = DenseMatrix<S>::identity(k.size());
  for (long s = 0; s < steps; ++s) m = k.right_multiply(m);
  return m;
}

template <Scalar S>
S tv_distance(std::span<const S> p, std::span<const S> pi) {
  if (p.size() != pi.size()) throw std::invalid_argument("tv_distance: size mismatch");
  S sum = from_int<S>(0);
  for (std::size_t x = 0; x < p.size(); ++x) sum += abs_value(S(p[x] - pi[x]));
  return sum / 2;
}

template <Scalar S>
S tv_distance(const Distribution<S>& p, const Distribution<S>& pi) {
  return tv_distance<S>(p.values, pi.values);
}

/// sum_x (p(x) - pi(x))^2 / pi(x).
template <Scalar S>
S chi_square(std::span<const S> p, std::span<const S> pi) {
  if (p.size() != pi.size()) throw std::invalid_argument("chi_square: size mismatch");
  S sum = from_int<S>(0);
  for (std::size_t x = 0; x < p.size(); ++x) {
    if (pi[x] <= 0) throw std::domain_error("chi_square: reference distribution has a zero entry");
    const S diff = p[x] - pi[x];
    sum += diff * diff / pi[x];
  }
  return sum;
}

template <Scalar S>
S chi_square(const Distribution<S>& p, const Distribution<S>& pi) {
  return chi_square<S>(p.values, pi.values);
}

/// sum_x pi(x) * chi_square(K^l(x, .), pi).
template <Scalar S>
S averaged_chi_square(const Kernel<S>& k, const Distribution<S>& pi, long steps) {
  const DenseMatrix<S> p = kernel_power(k, steps);
  S sum = from_int<S>(0);
  for (std::size_t x = 0; x < k.size(); ++x) sum += pi.values[x] * chi_square<S>(p.row(x), pi.values);
  return sum;
}

/// tr(K^m).
template <Scalar S>
S trace_power(const Kernel<S>& k, long m) {
  if (m <= 0) return from_int<S>(static_cast<long>(k.size()));
  const long half = m / 2;
  const DenseMatrix<S> a = kernel_power(k, half);
  const DenseMatrix<S> b = (m % 2 == 0) ? a : k.right_multiply(a);
  S t = from_int<S>(0);
  for (std::size_t x = 0; x < k.size(); ++x) {
    for (std::size_t y = 0; y < k.size(); ++y) {
      if (a(x, y) != 0 && b(y, x) != 0) t += a(x, y) * b(y, x);
    }
  }
  return t;
}

/// pi(x) K(x, y) == pi(y) K(y, x) for every pair.
template <Scalar S>
bool check_reversible(const DenseMatrix<S>& k, const Distribution<S>& pi) {
  for (std::size_t x = 0; x < k.size(); ++x) {
    for (std::size_t y = x + 1; y < k.size(); ++y) {
      if (pi.values[x] * k(x, y) != pi.values[y] * k(y, x)) return false;
    }
  }
  return true;
}

template <Scalar S>
bool check_reversible(const Kernel<S>& k, const Distribution<S>& pi) {
  return check_reversible(k.matrix(), pi);
}

/// pi K == pi.
template <Scalar S>
bool is_stationary(const Kernel<S>& k, const Distribution<S>& pi) {
  return k.apply(pi.values) == pi.values;
}

template <Scalar S>
bool is_row_stochastic(const DenseMatrix<S>& m) {
  for (std::size_t x = 0; x < m.size(); ++x) {
    S sum = from_int<S>(0);
    for (const auto& v : m.row(x)) {
      if (v < 0 || v > 1) return false;
      sum += v;
    }
    if (sum != 1) return false;
  }
  return true;
}

}  // namespace heckemetro
