#pragma once

// Irreducible representations of the Hecke algebras of the three families
// (dimension d, central constant c, generic degree t) and the closed-form
// chi-square distances they yield for the Metropolis scans.
//
// In an irreducible representation lambda the element T~_{w0}^2 acts as
// theta^{l(w0) - c_lambda}, so K^l started at the identity has
//   chi^2 = sum_{lambda nontrivial} t_lambda * chi_lambda(K^{2l}).

#include <cmath>
#include <memory>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "coxeter.hpp"
#include "cyclotomic.hpp"
#include "partitions.hpp"
#include "scalar.hpp"

namespace heckemetro {

enum class DihedralIrrep { trivial, sign, plus, minus, two_dimensional };

struct Irrep {
  std::string label;
  long dimension = 1;
  long content = 0;
  bool trivial = false;
  Partition partition;       // symmetric
  std::vector<int> weight;   // hypercube: bit vector lambda
  DihedralIrrep dihedral = DihedralIrrep::trivial;
  int index = 0;             // dihedral two-dimensional: 0 < index < n/2
};

/// Field holding every generic degree of the family: Q(zeta_n) for the
/// dihedral group, Q otherwise.
inline std::shared_ptr<const CyclotomicField> degree_field(const GroupFamily& f) {
  return std::make_shared<const CyclotomicField>(f.kind() == FamilyKind::dihedral ? f.n() : 1);
}

inline std::vector<Irrep> irreps(const GroupFamily& f, std::size_t cap = enumeration_cap()) {
  std::vector<Irrep> out;
  const int n = f.n();
  switch (f.kind()) {
    case FamilyKind::symmetric:
      for (const auto& p : partitions_of(n)) {
        Irrep r;
        r.label = p.to_string();
        r.dimension = hook_dimension(p).get_si();
        r.content = p.content_sum();
        r.trivial = p.rows() == 1;
        r.partition = p;
        out.push_back(std::move(r));
      }
      break;
    case FamilyKind::hypercube: {
      if (f.order() > Integer(static_cast<unsigned long>(cap))) {
        throw CapExceeded(f.name() + " has more irreducible representations than the enumeration cap");
      }
      for (unsigned long x = 0; x < (1UL << n); ++x) {
        Irrep r;
        r.weight.resize(static_cast<std::size_t>(n));
        int ones = 0;
        for (int j = 0; j < n; ++j) {
          r.weight[static_cast<std::size_t>(j)] = static_cast<int>((x >> (n - 1 - j)) & 1UL);
          ones += r.weight[static_cast<std::size_t>(j)];
          r.label += r.weight[static_cast<std::size_t>(j)] ? '1' : '0';
        }
        r.content = n - 2 * ones;
        r.trivial = ones == 0;
        out.push_back(std::move(r));
      }
      break;
    }
    case FamilyKind::dihedral: {
      auto one_dim = [&](DihedralIrrep tag, std::string label, long content) {
        Irrep r;
        r.label = std::move(label);
        r.content = content;
        r.dihedral = tag;
        r.trivial = tag == DihedralIrrep::trivial;
        out.push_back(std::move(r));
      };
      one_dim(DihedralIrrep::trivial, "trivial", n);
      one_dim(DihedralIrrep::sign, "sign", -n);
      if (n % 2 == 0) {
        one_dim(DihedralIrrep::plus, "plus", 0);
        one_dim(DihedralIrrep::minus, "minus", 0);
      }
      for (int k = 1; 2 * k < n; ++k) {
        Irrep r;
        r.label = "rho_" + std::to_string(k);
        r.dimension = 2;
        r.content = 0;
        r.dihedral = DihedralIrrep::two_dimensional;
        r.index = k;
        out.push_back(std::move(r));
      }
      break;
    }
  }
  return out;
}

/// Exponent e with T~_{w0}^2 acting as theta^e: l(w0) - c_lambda.
inline long long_scan_exponent(const GroupFamily& f, const Irrep& r) {
  return length(longest_element(f)) - r.content;
}

/// Generic degree t_lambda at a rational q, exactly.
inline Cyclotomic generic_degree_exact(const GroupFamily& f, const Irrep& r, const Rational& q,
                                       const std::shared_ptr<const CyclotomicField>& field) {
  const int n = f.n();
  switch (f.kind()) {
    case FamilyKind::symmetric: {
      Rational t = ipow(q, r.partition.weighted_size());
      for (int k = 1; k <= n; ++k) t *= q_integer(q, k);
      for (int h : r.partition.hooks()) t /= q_integer(q, h);
      return {field, t};
    }
    case FamilyKind::hypercube: {
      long ones = 0;
      for (int b : r.weight) ones += b;
      return {field, ipow(q, ones)};
    }
    case FamilyKind::dihedral:
      switch (r.dihedral) {
        case DihedralIrrep::trivial: return {field, Rational(1)};
        case DihedralIrrep::sign: return {field, ipow(q, n)};
        case DihedralIrrep::plus:
        case DihedralIrrep::minus: return {field, Rational(2 * q * (ipow(q, n) - 1) / (n * (q * q - 1)))};
        case DihedralIrrep::two_dimensional: {
          // (1/n) [n]_q q (q + 1) (1 - xi)(1 - xi^-1) / ((q - xi)(q - xi^-1)), xi = zeta^k
          const Cyclotomic one(field, Rational(1));
          const Cyclotomic qq(field, q);
          const Cyclotomic xi = Cyclotomic::zeta_power(field, r.index);
          const Cyclotomic xi_inv = Cyclotomic::zeta_power(field, -r.index);
          const Rational scale = q_integer(q, n) * q * (q + 1) / n;
          return scale * ((one - xi) * (one - xi_inv)) / ((qq - xi) * (qq - xi_inv));
        }
      }
  }
  throw std::logic_error("unreachable");
}

inline double generic_degree_float(const GroupFamily& f, const Irrep& r, double q) {
  const int n = f.n();
  switch (f.kind()) {
    case FamilyKind::symmetric: {
      double t = std::pow(q, static_cast<double>(r.partition.weighted_size()));
      for (int k = 1; k <= n; ++k) t *= q_integer(q, k);
      for (int h : r.partition.hooks()) t /= q_integer(q, h);
      return t;
    }
    case FamilyKind::hypercube: {
      long ones = 0;
      for (int b : r.weight) ones += b;
      return std::pow(q, static_cast<double>(ones));
    }
    case FamilyKind::dihedral:
      switch (r.dihedral) {
        case DihedralIrrep::trivial: return 1.0;
        case DihedralIrrep::sign: return std::pow(q, n);
        case DihedralIrrep::plus:
        case DihedralIrrep::minus: return 2.0 * q * q_integer(q, n) / (n * (q + 1.0));
        case DihedralIrrep::two_dimensional: {
          const double cs = std::cos(2.0 * std::numbers::pi * r.index / n);
          return q_integer(q, n) * q * (q + 1.0) / n * (2.0 - 2.0 * cs) / (q * q - 2.0 * q * cs + 1.0);
        }
      }
  }
  throw std::logic_error("unreachable");
}

/// t_lambda in the requested scalar; exact mode throws when t_lambda is irrational.
template <Scalar S>
S generic_degree(const GroupFamily& f, const Irrep& r, const S& q) {
  if constexpr (is_exact_v<S>) {
    return generic_degree_exact(f, r, q, degree_field(f)).rational();
  } else {
    return static_cast<S>(generic_degree_float(f, r, static_cast<double>(q)));
  }
}

namespace detail {

/// sum over irreps of t_lambda * weight(lambda), with weight rational in S.
template <Scalar S, class Weight>
S degree_weighted_sum(const GroupFamily& f, const S& q, Weight&& weight, bool skip_trivial) {
  const auto reps = irreps(f);
  if constexpr (is_exact_v<S>) {
    const auto field = degree_field(f);
    Cyclotomic acc(field, Rational(0));
    for (const auto& r : reps) {
      if (skip_trivial && r.trivial) continue;
      const S w = weight(r);
      if (w == 0) continue;
      acc += generic_degree_exact(f, r, q, field) * w;
    }
    return acc.rational();
  } else {
    S acc = 0;
    for (const auto& r : reps) {
      if (skip_trivial && r.trivial) continue;
      acc += static_cast<S>(generic_degree_float(f, r, static_cast<double>(q))) * weight(r);
    }
    return acc;
  }
}

}  // namespace detail

/// sum_lambda d_lambda^2 (equals |W|).
inline Integer dimension_square_sum(const GroupFamily& f) {
  Integer s = 0;
  for (const auto& r : irreps(f)) s += r.dimension * r.dimension;
  return s;
}

/// sum_lambda d_lambda t_lambda(q) (equals P_W(q)).
template <Scalar S>
S dimension_degree_sum(const GroupFamily& f, const S& q) {
  return detail::degree_weighted_sum<S>(
      f, q, [](const Irrep& r) { return from_int<S>(r.dimension); }, false);
}

/// Chi-square distance after l long scans from the identity:
/// sum_{lambda nontrivial} t_lambda d_lambda theta^{2l(l(w0) - c_lambda)}.
template <Scalar S>
S long_scan_chisq(const GroupFamily& f, const S& theta, long steps) {
  const S q = from_int<S>(1) / theta;
  return detail::degree_weighted_sum<S>(
      f, q,
      [&](const Irrep& r) { return S(from_int<S>(r.dimension) * ipow(theta, 2 * steps * long_scan_exponent(f, r))); },
      true);
}

/// pi-average of the long-scan chi-square over all starting states:
/// sum_{lambda nontrivial} d_lambda^2 theta^{2l(l(w0) - c_lambda)}.
template <Scalar S>
S long_scan_avg_chisq(const GroupFamily& f, const S& theta, long steps) {
  S acc = from_int<S>(0);
  for (const auto& r : irreps(f)) {
    if (r.trivial) continue;
    acc += from_int<S>(r.dimension * r.dimension) * ipow(theta, 2 * steps * long_scan_exponent(f, r));
  }
  return acc;
}

/// tr(K^m) for the long scan: sum_lambda d_lambda^2 theta^{m(l(w0) - c_lambda)}.
template <Scalar S>
S long_scan_trace(const GroupFamily& f, const S& theta, long m) {
  S acc = from_int<S>(0);
  for (const auto& r : irreps(f)) {
    acc += from_int<S>(r.dimension * r.dimension) * ipow(theta, m * long_scan_exponent(f, r));
  }
  return acc;
}

/// Dihedral long scan from the identity, summed in closed form:
/// theta^{(4l-1)n} + theta^{(2l-1)n} ((theta+1)[n]_theta - 1) - theta^{2ln}.
template <Scalar S>
S dihedral_long_scan_chisq(int n, const S& theta, long steps) {
  const S one = from_int<S>(1);
  return ipow(theta, (4 * steps - 1) * n) + ipow(theta, (2 * steps - 1) * n) * ((theta + one) * q_integer(theta, n) - one) -
         ipow(theta, 2 * steps * n);
}

/// Dihedral long scan averaged over pi: theta^{4ln} + (2n - 2) theta^{2ln}.
template <Scalar S>
S dihedral_long_scan_avg_chisq(int n, const S& theta, long steps) {
  return ipow(theta, 4 * steps * n) + from_int<S>(2 * n - 2) * ipow(theta, 2 * steps * n);
}

namespace detail {

template <Scalar S>
S binomial(long n, long k) {
  if (k < 0 || k > n) return from_int<S>(0);
  if constexpr (is_exact_v<S>) {
    Integer b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return Rational(b);
  } else {
    return static_cast<S>(std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0)));
  }
}

inline double log_binomial(long n, long k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

inline int weight_of(const std::vector<int>& bits) {
  int w = 0;
  for (int b : bits) {
    if (b != 0 && b != 1) throw std::invalid_argument("start state must be a bit vector");
    w += b;
  }
  return w;
}

}  // namespace detail

/// Hypercube random scan from x:
/// sum_{lambda != 0} theta^{2 lambda.x - |lambda|} (1 - |lambda|(1 + theta)/n)^{2l},
/// grouped by j = |lambda| and k = lambda.x.
template <Scalar S>
S hypercube_random_scan_chisq(int n, const S& theta, long steps, const std::vector<int>& start) {
  if (static_cast<int>(start.size()) != n) throw std::invalid_argument("start state has the wrong length");
  const int w = detail::weight_of(start);
  S acc = from_int<S>(0);
  for (int j = 1; j <= n; ++j) {
    const S base = from_int<S>(1) - from_int<S>(j) * (from_int<S>(1) + theta) / from_int<S>(n);
    for (int k = std::max(0, j - (n - w)); k <= std::min(j, w); ++k) {
      if constexpr (is_exact_v<S>) {
        acc += detail::binomial<S>(w, k) * detail::binomial<S>(n - w, j - k) * ipow(theta, 2L * k - j) *
               ipow(base, 2 * steps);
      } else {
        if (base == 0 && steps > 0) continue;
        const double lt = detail::log_binomial(w, k) + detail::log_binomial(n - w, j - k) +
                          (2.0 * k - j) * std::log(theta) + 2.0 * static_cast<double>(steps) * std::log(std::fabs(base));
        acc += std::exp(lt);
      }
    }
  }
  return acc;
}

/// Hypercube systematic scan from x: sum_{lambda != 0} theta^{(4l-1)|lambda| + 2 lambda.x}.
template <Scalar S>
S hypercube_systematic_scan_chisq(int n, const S& theta, long steps, const std::vector<int>& start) {
  if (static_cast<int>(start.size()) != n) throw std::invalid_argument("start state has the wrong length");
  const int w = detail::weight_of(start);
  S acc = from_int<S>(0);
  for (int j = 1; j <= n; ++j) {
    for (int k = std::max(0, j - (n - w)); k <= std::min(j, w); ++k) {
      const long e = (4 * steps - 1) * j + 2L * k;
      if constexpr (is_exact_v<S>) {
        acc += detail::binomial<S>(w, k) * detail::binomial<S>(n - w, j - k) * ipow(theta, e);
      } else {
        acc += std::exp(detail::log_binomial(w, k) + detail::log_binomial(n - w, j - k) + e * std::log(theta));
      }
    }
  }
  return acc;
}

/// pi-averaged hypercube random scan: sum_{j >= 1} C(n, j) (1 - j(1 + theta)/n)^{2l}.
template <Scalar S>
S hypercube_random_scan_avg_chisq(int n, const S& theta, long steps) {
  S acc = from_int<S>(0);
  for (int j = 1; j <= n; ++j) {
    const S base = from_int<S>(1) - from_int<S>(j) * (from_int<S>(1) + theta) / from_int<S>(n);
    if constexpr (is_exact_v<S>) {
      acc += detail::binomial<S>(n, j) * ipow(base, 2 * steps);
    } else {
      if (base == 0 && steps > 0) continue;
      acc += std::exp(detail::log_binomial(n, j) + 2.0 * static_cast<double>(steps) * std::log(std::fabs(base)));
    }
  }
  return acc;
}

/// pi-averaged hypercube systematic scan: (1 + theta^{4l})^n - 1.
template <Scalar S>
S hypercube_systematic_scan_avg_chisq(int n, const S& theta, long steps) {
  if constexpr (is_exact_v<S>) {
    return ipow(S(1 + ipow(theta, 4 * steps)), n) - 1;
  } else {
    return std::expm1(n * std::log1p(std::pow(theta, 4.0 * static_cast<double>(steps))));
  }
}

/// tr(K^m) for the hypercube random scan: sum_j C(n, j) (1 - j(1 + theta)/n)^m.
template <Scalar S>
S hypercube_random_scan_trace(int n, const S& theta, long m) {
  S acc = from_int<S>(0);
  for (int j = 0; j <= n; ++j) {
    acc += detail::binomial<S>(n, j) *
           ipow(S(from_int<S>(1) - from_int<S>(j) * (from_int<S>(1) + theta) / from_int<S>(n)), m);
  }
  return acc;
}

/// sum over standard tableaux S of shape lambda of theta^{power (n - 1 - c(S(n)))}.
/// Tableaux with n in a given corner are counted by the dimension of lambda minus that corner.
template <Scalar S>
S short_scan_tableau_sum(const Partition& shape, const S& theta, long power) {
  const int n = shape.size();
  S acc = from_int<S>(0);
  for (int r : shape.removable_rows()) {
    const int c = shape.row_length(r) - 1;
    const Integer count = hook_dimension(shape.remove_box(r));
    acc += from_rational<S>(Rational(count)) * ipow(theta, power * (n - 1 - (c - r)));
  }
  return acc;
}

/// Symmetric short scan chi-square from the identity, or its pi-average:
/// sum_{lambda != (n)} w_lambda sum_S theta^{2l(n - 1 - c(S(n)))}, w = t_lambda or d_lambda.
template <Scalar S>
S short_scan_chisq_symmetric(int n, const S& theta, long steps, bool averaged) {
  const GroupFamily f = GroupFamily::symmetric(n);
  const S q = from_int<S>(1) / theta;
  S acc = from_int<S>(0);
  for (const auto& r : irreps(f)) {
    if (r.trivial) continue;
    const S weight = averaged ? from_int<S>(r.dimension) : generic_degree(f, r, q);
    acc += weight * short_scan_tableau_sum(r.partition, theta, 2 * steps);
  }
  return acc;
}

/// tr(K^m) for the symmetric short scan: sum_lambda d_lambda sum_S theta^{m(n - 1 - c(S(n)))}.
template <Scalar S>
S short_scan_trace_symmetric(int n, const S& theta, long m) {
  S acc = from_int<S>(0);
  for (const auto& r : irreps(GroupFamily::symmetric(n))) {
    acc += from_int<S>(r.dimension) * short_scan_tableau_sum(r.partition, theta, m);
  }
  return acc;
}

/// Dihedral random scan (float: the eigenvalues involve cos(pi k / n)).
/// From the identity:
///   theta^{2l-n} + theta^{1-n}(1+theta)[n]_theta / n
///     * sum_{0<k<n} (2 - 2cos(2pi k/n)) / (theta^2 - 2cos(2pi k/n) theta + 1) * mu_k^{2l};
/// averaged over pi:
///   theta^{2l} + sum_{0<k<n} 2 mu_k^{2l};
/// with mu_k = (theta + 2cos(pi k/n) sqrt(theta) - 1) / 2.
/// The k = n/2 term for even n carries the two extra one-dimensional representations.
inline double dihedral_random_scan_chisq(int n, double theta, long steps, bool averaged) {
  if (n < 3) throw std::invalid_argument("dihedral group needs n >= 3");
  if (!(theta > 0 && theta <= 1)) throw std::domain_error("theta must satisfy 0 < theta <= 1");
  const double pi = std::numbers::pi;
  const double two_l = 2.0 * static_cast<double>(steps);
  double sum = 0.0;
  for (int k = 1; k < n; ++k) {
    const double mu = (theta + 2.0 * std::cos(pi * k / n) * std::sqrt(theta) - 1.0) / 2.0;
    const double power = std::pow(mu, two_l);
    if (averaged) {
      sum += 2.0 * power;
    } else {
      const double c2 = std::cos(2.0 * pi * k / n);
      sum += (2.0 - 2.0 * c2) / (theta * theta - 2.0 * c2 * theta + 1.0) * power;
    }
  }
  if (averaged) return std::pow(theta, two_l) + sum;
  const double prefactor = std::pow(theta, 1.0 - n) * (1.0 + theta) * q_integer(theta, n) / n;
  return std::pow(theta, two_l - n) + prefactor * sum;
}

/// Outcome of the three inequalities on t_lambda, d_lambda and c_lambda for one partition.
struct SymmetricConstantChecks {
  bool degree_bound = false;     // t_lambda <= theta^{C(lambda_1,2) - C(n,2)} d_lambda
  bool dimension_bound = false;  // sum over mu with mu_1 = lambda_1 of d_mu^2 <= n^{2j}/j!, j = n - lambda_1
  bool content_bound = false;    // c_lambda below the two-row or square-shape maximum
};

inline SymmetricConstantChecks check_symmetric_constants(const Partition& lambda, const Rational& theta) {
  if (!(theta > 0 && theta <= 1)) throw std::domain_error("theta must satisfy 0 < theta <= 1");
  const int n = lambda.size();
  const int l1 = lambda.first_part();
  const long binom_l1 = static_cast<long>(l1) * (l1 - 1) / 2;
  const long binom_n = static_cast<long>(n) * (n - 1) / 2;
  SymmetricConstantChecks out;

  const Rational q = 1 / theta;
  const GroupFamily f = GroupFamily::symmetric(n);
  Irrep r;
  r.partition = lambda;
  const Rational t = generic_degree_exact(f, r, q, degree_field(f)).rational();
  out.degree_bound = t <= ipow(theta, binom_l1 - binom_n) * Rational(hook_dimension(lambda));

  const int j = n - l1;
  Integer sum = 0;
  for (const auto& mu : partitions_of(n)) {
    if (mu.first_part() == l1) {
      const Integer d = hook_dimension(mu);
      sum += d * d;
    }
  }
  Integer n_pow, j_fact;
  mpz_ui_pow_ui(n_pow.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(2 * j));
  mpz_fac_ui(j_fact.get_mpz_t(), static_cast<unsigned long>(j));
  Rational limit(n_pow, j_fact);
  limit.canonicalize();
  out.dimension_bound = Rational(sum) <= limit;

  // 2 c_lambda <= 2 C(l1, 2) + (n - l1)(n - l1 - 3) if l1 >= n/2, else 4 c_lambda <= n^2 - 4n.
  const long c = lambda.content_sum();
  const bool wide = 2 * l1 >= n;
  const bool narrow = 2 * l1 <= n;
  bool ok = true;
  if (wide) ok = ok && 2 * c <= 2 * binom_l1 + static_cast<long>(n - l1) * (n - l1 - 3);
  if (narrow) ok = ok && 4 * c <= static_cast<long>(n) * n - 4L * n;
  out.content_bound = ok;
  return out;
}

}  // namespace heckemetro
