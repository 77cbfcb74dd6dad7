#pragma once

// Upper bounds on the squared total variation (or chi-square) distance,
// evaluated in double precision at the step counts where they apply.
// Factorials and large powers are combined in log space.

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace heckemetro::bounds {

namespace detail {

inline void require_open_theta(double theta) {
  if (!(theta > 0.0 && theta < 1.0)) throw std::domain_error("bound requires 0 < theta < 1");
}

inline double log_factorial(int n) { return std::lgamma(n + 1.0); }

}  // namespace detail

/// Short scan on S_n from the identity after l = n/2 - log n / log theta + c passes:
/// (e^{theta^{2c+1}} - 1) + n! theta^{n^2/8 - n log n / log theta + n(c + 1/4)}.
inline double short_scan_steps(int n, double theta, double c) {
  detail::require_open_theta(theta);
  return n / 2.0 - std::log(static_cast<double>(n)) / std::log(theta) + c;
}

inline double short_scan_bound(int n, double theta, double c) {
  detail::require_open_theta(theta);
  const double lt = std::log(theta);
  const double nn = n;
  const double first = std::expm1(std::pow(theta, 2.0 * c + 1.0));
  const double log_second = detail::log_factorial(n) + (nn * nn / 8.0 + nn * (c + 0.25)) * lt - nn * std::log(nn);
  return first + std::exp(log_second);
}

/// pi-averaged short scan on S_n after l = -log n / log theta + c passes:
/// (e^{theta^{2c}} - 1) + (theta^c / e)^n e^{1/12} sqrt(2 pi n).
inline double short_scan_avg_steps(int n, double theta, double c) {
  detail::require_open_theta(theta);
  return -std::log(static_cast<double>(n)) / std::log(theta) + c;
}

inline double short_scan_avg_bound(int n, double theta, double c) {
  detail::require_open_theta(theta);
  const double nn = n;
  const double first = std::expm1(std::pow(theta, 2.0 * c));
  const double log_second = nn * (c * std::log(theta) - 1.0) + 1.0 / 12.0 + 0.5 * std::log(2.0 * std::numbers::pi * nn);
  return first + std::exp(log_second);
}

/// One long scan on S_n from the identity: (e^{n^2 theta^{n/2}} - 1) + n! theta^{n^2/8 + 5n/4}.
inline double long_scan_single_pass_bound(int n, double theta) {
  detail::require_open_theta(theta);
  const double nn = n;
  const double first = std::expm1(nn * nn * std::pow(theta, nn / 2.0));
  return first + std::exp(detail::log_factorial(n) + (nn * nn / 8.0 + 5.0 * nn / 4.0) * std::log(theta));
}

/// One long scan on S_n averaged over pi: (e^{n^2 theta^n} - 1) + n! theta^{n^2/2 + n}.
inline double long_scan_single_pass_avg_bound(int n, double theta) {
  detail::require_open_theta(theta);
  const double nn = n;
  const double first = std::expm1(nn * nn * std::pow(theta, nn));
  return first + std::exp(detail::log_factorial(n) + (nn * nn / 2.0 + nn) * std::log(theta));
}

/// Hypercube random scan after l = n(log n - log theta + c) / (2(1 + theta)) steps:
/// (e^{e^{-c}} - 1) + e^{-c/2}.
inline double hypercube_random_steps(int n, double theta, double c) {
  detail::require_open_theta(theta);
  return n * (std::log(static_cast<double>(n)) - std::log(theta) + c) / (2.0 * (1.0 + theta));
}

inline double hypercube_random_bound(double c) { return std::expm1(std::exp(-c)) + std::exp(-c / 2.0); }

/// Hypercube systematic scan after l = ((log n + c) / log(1/theta) + 1) / 4 passes:
/// (e^{e^{-c}} - 1) / 4.
inline double hypercube_systematic_steps(int n, double theta, double c) {
  detail::require_open_theta(theta);
  return 0.25 * ((std::log(static_cast<double>(n)) + c) / std::log(1.0 / theta) + 1.0);
}

inline double hypercube_systematic_bound(double c) { return 0.25 * std::expm1(std::exp(-c)); }

/// Dihedral random scan from the identity:
/// theta^{-n} sqrt((1 + theta)/(1 - theta)) (1 - (1 - sqrt theta)^2 / 2)^{2l}.
inline double dihedral_random_scan_bound(int n, double theta, long steps) {
  detail::require_open_theta(theta);
  const double rate = 1.0 - 0.5 * std::pow(1.0 - std::sqrt(theta), 2.0);
  return std::exp(-n * std::log(theta) + 0.5 * std::log((1.0 + theta) / (1.0 - theta)) +
                  2.0 * static_cast<double>(steps) * std::log(rate));
}

/// One dihedral long scan from the identity: 2 theta^{n+1} / (1 - theta).
inline double dihedral_single_scan_bound(int n, double theta) {
  detail::require_open_theta(theta);
  return 2.0 * std::pow(theta, n + 1.0) / (1.0 - theta);
}

/// Coefficients of the leading step counts on the hypercube:
/// random scan n log(n/theta) / (2(1 + theta)), systematic n log n / (2 log(1/theta)).
struct LeadConstantRow {
  double theta = 0;
  int n = 0;
  double random_scan = 0;
  double systematic_scan = 0;
};

inline LeadConstantRow lead_constants(int n, double theta) {
  detail::require_open_theta(theta);
  const double nn = n;
  return {theta, n, nn * std::log(nn / theta) / (2.0 * (1.0 + theta)), nn * std::log(nn) / (2.0 * std::log(1.0 / theta))};
}

inline std::vector<LeadConstantRow> lead_constant_table(int n, const std::vector<double>& thetas) {
  std::vector<LeadConstantRow> rows;
  for (double t : thetas) rows.push_back(lead_constants(n, t));
  return rows;
}

}  // namespace heckemetro::bounds
