#pragma once

// Exact Mallows sampling, moments of the length statistic, and the
// simulated test statistics that witness slow mixing.

#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <random>
#include <stdexcept>
#include <vector>

#include "chains.hpp"
#include "coxeter.hpp"
#include "scalar.hpp"

namespace heckemetro {

/// Seeded stream of uniform variates. Uniforms are built from the top 53
/// bits of mt19937_64 so sequences are identical across standard libraries.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const { return seed_; }

  /// Independent stream for worker `stream` under the same root seed.
  RandomSource derive(std::uint64_t stream) const {
    std::seed_seq seq{static_cast<std::uint32_t>(seed_), static_cast<std::uint32_t>(seed_ >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    std::uint32_t words[2];
    seq.generate(words, words + 2);
    return RandomSource((static_cast<std::uint64_t>(words[0]) << 32) | words[1]);
  }

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform integer on [0, n).
  std::size_t below(std::size_t n) {
    if (n == 0) throw std::invalid_argument("below(0)");
    auto k = static_cast<std::size_t>(uniform() * static_cast<double>(n));
    return k < n ? k : n - 1;
  }

  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

/// Probabilities of inserting symbol i at positions 1..i of a word on 1..i-1.
/// Position k creates i - k new inversions and has probability
/// q^{i-k} / [i]_q = theta^{k-1} / [i]_theta; they sum to 1.
template <Scalar S>
std::vector<S> insertion_probabilities(int i, const S& theta) {
  require_theta(theta);
  if (i < 1) throw std::invalid_argument("insertion_probabilities: i must be positive");
  const S norm = q_integer(theta, i);
  std::vector<S> p;
  S power = from_int<S>(1);
  for (int k = 1; k <= i; ++k) {
    p.push_back(power / norm);
    power *= theta;
  }
  return p;
}

/// Exact law of the sequential insertion sampler on S_n, expanded symbolically.
inline std::map<std::vector<int>, Rational> insertion_law(int n, const Rational& theta) {
  std::map<std::vector<int>, Rational> law{{{}, Rational(1)}};
  for (int i = 1; i <= n; ++i) {
    const auto probs = insertion_probabilities(i, theta);
    std::map<std::vector<int>, Rational> next;
    for (const auto& [word, p] : law) {
      for (int k = 1; k <= i; ++k) {
        std::vector<int> w = word;
        w.insert(w.begin() + (k - 1), i);
        next[w] += p * probs[static_cast<std::size_t>(k - 1)];
      }
    }
    law = std::move(next);
  }
  return law;
}

/// One draw from pi(w) proportional to theta^{-l(w)}.
inline GroupElement mallows_sample(const GroupFamily& f, double theta, RandomSource& rng,
                                   const Enumeration* dihedral_table = nullptr) {
  require_theta(theta);
  const int n = f.n();
  switch (f.kind()) {
    case FamilyKind::symmetric: {
      std::vector<int> word;
      word.reserve(static_cast<std::size_t>(n));
      for (int i = 1; i <= n; ++i) {
        const auto probs = insertion_probabilities(i, theta);
        double u = rng.uniform();
        std::size_t k = 0;
        while (k + 1 < probs.size() && u >= probs[k]) {
          u -= probs[k];
          ++k;
        }
        word.insert(word.begin() + static_cast<std::ptrdiff_t>(k), i);
      }
      return make_element(f, word);
    }
    case FamilyKind::hypercube: {
      std::vector<int> bits(static_cast<std::size_t>(n));
      const double p_one = 1.0 / (1.0 + theta);
      for (auto& b : bits) b = rng.bernoulli(p_one) ? 1 : 0;
      return make_element(f, bits);
    }
    case FamilyKind::dihedral: {
      std::unique_ptr<Enumeration> owned;
      if (dihedral_table == nullptr) {
        owned = std::make_unique<Enumeration>(f);
        dihedral_table = owned.get();
      }
      // Weights theta^{l(w0) - l(w)} are proportional to pi and bounded by 1.
      const int top = n;
      double total = 0.0;
      std::vector<double> w(dihedral_table->size());
      for (std::size_t idx = 0; idx < w.size(); ++idx) {
        w[idx] = std::pow(theta, top - dihedral_table->length_at(idx));
        total += w[idx];
      }
      double u = rng.uniform() * total;
      std::size_t idx = 0;
      while (idx + 1 < w.size() && u >= w[idx]) {
        u -= w[idx];
        ++idx;
      }
      return (*dihedral_table)[idx];
    }
  }
  throw std::logic_error("unreachable");
}

/// Empirical distribution of samples over the enumeration.
inline Distribution<double> empirical_distribution(const std::vector<GroupElement>& samples, EnumerationPtr en) {
  Distribution<double> d{en, std::vector<double>(en->size(), 0.0)};
  if (samples.empty()) return d;
  const double w = 1.0 / static_cast<double>(samples.size());
  for (const auto& s : samples) d.values[en->index_of(s)] += w;
  return d;
}

template <Scalar S>
struct MomentReport {
  S mean;
  S variance;
};

/// Mean and variance of l(w) under pi from the degrees:
///   E = sum_i [q/(1-q) - d_i q^{d_i}/(1-q^{d_i})],
///   Var = sum_i [q/(1-q)^2 - d_i^2 q^{d_i}/(1-q^{d_i})^2],
/// with the q = 1 limits E = sum (d_i - 1)/2 and Var = sum (d_i^2 - 1)/12.
template <Scalar S>
MomentReport<S> length_moments(const GroupFamily& f, const S& theta) {
  require_theta(theta);
  const S one = from_int<S>(1);
  const S q = one / theta;
  S mean = from_int<S>(0);
  S var = from_int<S>(0);
  for (int d : degrees(f)) {
    const S dd = from_int<S>(d);
    if (q == one) {
      mean += (dd - one) / 2;
      var += (dd * dd - one) / 12;
    } else {
      const S qd = ipow(q, d);
      mean += q / (one - q) - dd * qd / (one - qd);
      var += q / ((one - q) * (one - q)) - dd * dd * qd / ((one - qd) * (one - qd));
    }
  }
  return {mean, var};
}

/// Same moments by direct summation over the enumerated group.
template <Scalar S>
MomentReport<S> length_moments_by_enumeration(EnumerationPtr en, const S& theta) {
  const auto pi = stationary(en, theta);
  S m1 = from_int<S>(0), m2 = from_int<S>(0);
  for (std::size_t idx = 0; idx < en->size(); ++idx) {
    const S l = from_int<S>(en->length_at(idx));
    m1 += l * pi.values[idx];
    m2 += l * l * pi.values[idx];
  }
  return {m1, m2 - m1 * m1};
}

/// T(y) = (n / sqrt theta)(1 - |y|(1 + theta)/n).
inline double hypercube_test_statistic(const std::vector<int>& y, double theta) {
  const double n = static_cast<double>(y.size());
  double ones = 0;
  for (int b : y) ones += b;
  return n / std::sqrt(theta) * (1.0 - ones * (1.0 + theta) / n);
}

enum class WitnessScan { random, systematic };

/// Mean and variance of T after l steps from 0.
struct StatisticPrediction {
  double mean;
  double variance;
};

inline StatisticPrediction hypercube_statistic_prediction(int n, double theta, long steps, WitnessScan scan) {
  const double nn = n;
  const double l = static_cast<double>(steps);
  if (scan == WitnessScan::random) {
    const double a = std::pow(1.0 - (1.0 + theta) / nn, l);
    const double b = std::pow(1.0 - 2.0 * (1.0 + theta) / nn, l);
    const double mean = nn / std::sqrt(theta) * a;
    const double var = nn + nn * (1.0 - theta) / theta * a + nn * (nn - 1.0) / theta * b - nn * nn / theta * a * a;
    return {mean, var};
  }
  const double decay = std::pow(theta, 2.0 * l);
  return {nn / std::sqrt(theta) * decay, nn * (1.0 + (1.0 - theta) / theta * decay - decay * decay / theta)};
}

/// Runs the hypercube chain procedurally from 0 and returns the final state.
/// Random scan: l single-site moves. Systematic: l passes of K_1..K_n K_n..K_1.
inline std::vector<int> simulate_hypercube_chain(int n, double theta, long steps, WitnessScan scan, RandomSource& rng) {
  std::vector<int> x(static_cast<std::size_t>(n), 0);
  auto site = [&](std::size_t i) {
    if (x[i] == 0) {
      x[i] = 1;
    } else if (rng.bernoulli(theta)) {
      x[i] = 0;
    }
  };
  for (long s = 0; s < steps; ++s) {
    if (scan == WitnessScan::random) {
      site(rng.below(static_cast<std::size_t>(n)));
    } else {
      for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i) site(i);
      for (std::size_t i = static_cast<std::size_t>(n); i-- > 0;) site(i);
    }
  }
  return x;
}

struct WitnessReport {
  long samples = 0;
  long steps = 0;
  double empirical_mean = 0;
  double empirical_variance = 0;
  double predicted_mean = 0;
  double predicted_variance = 0;
  double standard_error = 0;
  double z = 0;  // (empirical - predicted mean) / standard error
};

inline WitnessReport hypercube_lower_bound_witness(int n, double theta, long steps, WitnessScan scan, long samples,
                                                   RandomSource& rng) {
  if (n < 1 || samples < 2 || steps < 0) throw std::invalid_argument("witness needs n >= 1, samples >= 2, steps >= 0");
  if (!(theta > 0 && theta <= 1)) throw std::domain_error("theta must satisfy 0 < theta <= 1");
  double sum = 0, sum_sq = 0;
  for (long s = 0; s < samples; ++s) {
    const double t = hypercube_test_statistic(simulate_hypercube_chain(n, theta, steps, scan, rng), theta);
    sum += t;
    sum_sq += t * t;
  }
  WitnessReport r;
  r.samples = samples;
  r.steps = steps;
  r.empirical_mean = sum / samples;
  r.empirical_variance = (sum_sq - samples * r.empirical_mean * r.empirical_mean) / (samples - 1);
  const auto pred = hypercube_statistic_prediction(n, theta, steps, scan);
  r.predicted_mean = pred.mean;
  r.predicted_variance = pred.variance;
  r.standard_error = std::sqrt(r.empirical_variance / samples);
  r.z = r.standard_error > 0 ? (r.empirical_mean - r.predicted_mean) / r.standard_error : 0.0;
  return r;
}

/// Short-scan witness on S_n: A = {w : l(w) > 2l(n-1)} is unreachable after
/// l passes from the identity, while Chebyshev on the length moments gives
/// pi(A) >= 1 - Var / (E - 2l(n-1))^2 whenever E exceeds the threshold.
struct ShortScanWitness {
  long threshold = 0;
  double pi_mass_lower_bound = 0;
  bool exact_checked = false;
  int max_reachable_length = 0;  // meaningful when exact_checked
  Rational chain_mass_in_set;    // exact K^l(id, A) when exact_checked
};

inline ShortScanWitness symmetric_short_scan_witness(int n, const Rational& theta, long steps, bool exact) {
  const GroupFamily f = GroupFamily::symmetric(n);
  ShortScanWitness w;
  w.threshold = 2 * steps * (n - 1);
  const auto mom = length_moments(f, theta.get_d());
  const double gap = mom.mean - static_cast<double>(w.threshold);
  w.pi_mass_lower_bound = gap > 0 ? std::max(0.0, 1.0 - mom.variance / (gap * gap)) : 0.0;
  if (exact) {
    auto en = make_enumeration(f);
    const auto k = make_kernel(en, theta, ScanKind::short_scan);
    const auto d = evolve(k, Distribution<Rational>::point_mass(en, en->identity_index()), steps);
    w.exact_checked = true;
    w.chain_mass_in_set = 0;
    for (std::size_t idx = 0; idx < en->size(); ++idx) {
      if (d.values[idx] == 0) continue;
      w.max_reachable_length = std::max(w.max_reachable_length, en->length_at(idx));
      if (en->length_at(idx) > w.threshold) w.chain_mass_in_set += d.values[idx];
    }
  }
  return w;
}

}  // namespace heckemetro
