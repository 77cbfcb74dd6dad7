#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"

using namespace heckemetro;

namespace {

std::vector<GroupFamily> brute_force_families() {
  return {GroupFamily::symmetric(3), GroupFamily::symmetric(4), GroupFamily::symmetric(5), GroupFamily::hypercube(2),
          GroupFamily::hypercube(4), GroupFamily::dihedral(3),  GroupFamily::dihedral(4),  GroupFamily::dihedral(7),
          GroupFamily::dihedral(8)};
}

double relative_gap(double a, double b) { return std::fabs(a - b) / std::max(std::fabs(a), std::fabs(b)); }

}  // namespace

TEST(Spectral, IrrepCounts) {
  EXPECT_EQ(irreps(GroupFamily::symmetric(6)).size(), 11u);
  EXPECT_EQ(irreps(GroupFamily::hypercube(5)).size(), 32u);
  EXPECT_EQ(irreps(GroupFamily::dihedral(7)).size(), 5u);   // 2 one-dimensional + 3 two-dimensional
  EXPECT_EQ(irreps(GroupFamily::dihedral(8)).size(), 7u);   // 4 one-dimensional + 3 two-dimensional
  EXPECT_THROW(irreps(GroupFamily::hypercube(20), 1000), CapExceeded);
}

TEST(Spectral, DimensionsSquareToOrder) {
  for (int n = 2; n <= 9; ++n) EXPECT_EQ(dimension_square_sum(GroupFamily::symmetric(n)), GroupFamily::symmetric(n).order());
  for (int n = 1; n <= 10; ++n) EXPECT_EQ(dimension_square_sum(GroupFamily::hypercube(n)), GroupFamily::hypercube(n).order());
  for (int n = 3; n <= 30; ++n) EXPECT_EQ(dimension_square_sum(GroupFamily::dihedral(n)), GroupFamily::dihedral(n).order());
}

TEST(Spectral, GenericDegreesSumToPoincare) {
  std::vector<GroupFamily> fs;
  for (int n = 2; n <= 8; ++n) fs.push_back(GroupFamily::symmetric(n));
  for (int n = 1; n <= 10; ++n) fs.push_back(GroupFamily::hypercube(n));
  for (int n = 3; n <= 24; ++n) fs.push_back(GroupFamily::dihedral(n));
  for (const auto& f : fs) {
    for (const Rational& q : {Rational(2), Rational(10, 9), Rational(4, 1)}) {
      EXPECT_EQ(dimension_degree_sum(f, q), poincare_polynomial(f, q)) << f.name();
    }
    EXPECT_NEAR(dimension_degree_sum(f, 1.7) / poincare_polynomial(f, 1.7), 1.0, 1e-12) << f.name();
  }
}

TEST(Spectral, GenericDegreesAtQEqualOneAreDimensions) {
  for (const auto& f : {GroupFamily::symmetric(5), GroupFamily::hypercube(3), GroupFamily::dihedral(9)}) {
    for (const auto& r : irreps(f)) {
      EXPECT_NEAR(generic_degree_float(f, r, 1.0 + 1e-9), static_cast<double>(r.dimension), 1e-6) << r.label;
    }
  }
}

TEST(Spectral, FloatDegreesMatchExact) {
  for (const auto& f : {GroupFamily::symmetric(6), GroupFamily::dihedral(7), GroupFamily::dihedral(10)}) {
    const auto field = degree_field(f);
    for (const auto& r : irreps(f)) {
      const auto exact = generic_degree_exact(f, r, Rational(3, 2), field);
      EXPECT_NEAR(exact.real_part() / generic_degree_float(f, r, 1.5), 1.0, 1e-12) << f.name() << " " << r.label;
    }
  }
  // Trivial and sign are 1 and q^{l(w0)}.
  const auto f = GroupFamily::symmetric(4);
  for (const auto& r : irreps(f)) {
    if (r.partition == Partition({4})) {
      EXPECT_EQ(generic_degree(f, r, Rational(3)), 1);
    }
    if (r.partition == Partition({1, 1, 1, 1})) {
      EXPECT_EQ(generic_degree(f, r, Rational(3)), 729);
    }
  }
  const auto d5 = GroupFamily::dihedral(5);
  for (const auto& r : irreps(d5)) {
    if (r.dihedral == DihedralIrrep::two_dimensional) {
      EXPECT_THROW(generic_degree(d5, r, Rational(2)), std::domain_error);
    }
  }
}

TEST(Spectral, DihedralRepresentationsSatisfyHeckeRelations) {
  for (int n = 3; n <= 10; ++n) {
    for (int k = 1; 2 * k < n; ++k) {
      const double theta = 0.37;
      const auto [t1, t2] = oracle::dihedral_rep(n, k, theta);
      // Quadratic relation (X - 1)(X + theta) = 0.
      for (const auto& t : {t1, t2}) {
        const auto sq = oracle::cmul(t, t);
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b) {
            const oracle::Complex rhs = (1.0 - theta) * t[a][b] + (a == b ? theta : 0.0);
            EXPECT_NEAR(std::abs(sq[a][b] - rhs), 0.0, 1e-12);
          }
      }
      // Braid relation of length n.
      oracle::CMatrix left{{1, 0}, {0, 1}}, right{{1, 0}, {0, 1}};
      for (int j = 0; j < n; ++j) {
        left = oracle::cmul(left, j % 2 ? t2 : t1);
        right = oracle::cmul(right, j % 2 ? t1 : t2);
      }
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) EXPECT_NEAR(std::abs(left[a][b] - right[a][b]), 0.0, 1e-12) << n << " " << k;
      // T~_{w0}^2 = (T~_1 T~_2)^n acts as theta^{l(w0) - c}.
      oracle::CMatrix p{{1, 0}, {0, 1}};
      const auto t12 = oracle::cmul(t1, t2);
      for (int j = 0; j < n; ++j) p = oracle::cmul(p, t12);
      Irrep r;
      r.dihedral = DihedralIrrep::two_dimensional;
      r.index = k;
      const double scalar = std::pow(theta, long_scan_exponent(GroupFamily::dihedral(n), r));
      EXPECT_NEAR(std::abs(p[0][0] - scalar), 0.0, 1e-12);
      EXPECT_NEAR(std::abs(p[0][1]), 0.0, 1e-12);
      EXPECT_NEAR(std::abs(p[1][1] - scalar), 0.0, 1e-12);
    }
  }
}

TEST(Spectral, DihedralRandomScanEigenvaluesFromRepresentations) {
  // Squared eigenvalues of (T~_1 + T~_2)/2 in representation k are mu_k^2 and mu_{n-k}^2.
  for (int n = 3; n <= 10; ++n) {
    for (int k = 1; 2 * k < n; ++k) {
      const double theta = 0.61;
      const auto [t1, t2] = oracle::dihedral_rep(n, k, theta);
      const oracle::Complex a = (t1[0][0] + t2[0][0]) / 2.0, b = (t1[0][1] + t2[0][1]) / 2.0;
      const oracle::Complex c = (t1[1][0] + t2[1][0]) / 2.0, d = (t1[1][1] + t2[1][1]) / 2.0;
      const oracle::Complex tr = a + d, det = a * d - b * c;
      const oracle::Complex disc = std::sqrt(tr * tr - 4.0 * det);
      std::vector<double> ev2{std::norm((tr + disc) / 2.0), std::norm((tr - disc) / 2.0)};
      auto mu = [&](int j) { return (theta + 2.0 * std::cos(std::numbers::pi * j / n) * std::sqrt(theta) - 1.0) / 2.0; };
      std::vector<double> expect{mu(k) * mu(k), mu(n - k) * mu(n - k)};
      std::sort(ev2.begin(), ev2.end());
      std::sort(expect.begin(), expect.end());
      EXPECT_NEAR(ev2[0], expect[0], 1e-12);
      EXPECT_NEAR(ev2[1], expect[1], 1e-12);
    }
  }
}

TEST(Spectral, LongScanMatchesBruteForce) {
  for (const auto& f : brute_force_families()) {
    const auto en = make_enumeration(f);
    for (const Rational& theta : {Rational(1, 2), Rational(9, 10)}) {
      const auto pi = oracle::mallows(*en, theta);
      const auto k = oracle::scan(*en, long_recipe(f), theta);
      auto p = k;
      for (long l = 1; l <= 2; ++l) {
        EXPECT_EQ(long_scan_chisq(f, theta, l), oracle::chi_square(p, en->identity_index(), pi)) << f.name();
        EXPECT_EQ(long_scan_avg_chisq(f, theta, l), oracle::averaged_chi_square(p, pi)) << f.name();
        p = p * k;
      }
    }
  }
}

TEST(Spectral, DihedralLongScanClosedForms) {
  for (int n = 3; n <= 12; ++n) {
    const auto f = GroupFamily::dihedral(n);
    for (const Rational& theta : {Rational(1, 2), Rational(1, 3), Rational(9, 10)}) {
      for (long l = 1; l <= 3; ++l) {
        EXPECT_EQ(dihedral_long_scan_chisq(n, theta, l), long_scan_chisq(f, theta, l));
        EXPECT_EQ(dihedral_long_scan_avg_chisq(n, theta, l), long_scan_avg_chisq(f, theta, l));
        // Same value written with (theta^2 - 1)(theta^n - 1)/(theta - 1)^2 = (1 + theta)[n]_theta.
        const Rational alt = ipow(theta, (4 * l - 1) * n) +
                             ipow(theta, (2 * l - 1) * n) *
                                 ((theta * theta - 1) * (ipow(theta, n) - 1) / ((theta - 1) * (theta - 1)) - 1) -
                             ipow(theta, 2 * l * n);
        EXPECT_EQ(dihedral_long_scan_chisq(n, theta, l), alt);
      }
    }
  }
}

TEST(Spectral, LongScanTraceMatchesBruteForce) {
  for (const auto& f : {GroupFamily::symmetric(4), GroupFamily::dihedral(6), GroupFamily::hypercube(3)}) {
    const auto en = make_enumeration(f);
    const Rational theta(2, 3);
    const auto k = oracle::scan(*en, long_recipe(f), theta);
    auto p = k;
    for (long m = 1; m <= 4; ++m) {
      EXPECT_EQ(long_scan_trace(f, theta, m), p.trace());
      p = p * k;
    }
  }
}

TEST(Spectral, ShortScanSymmetricMatchesBruteForce) {
  for (int n = 3; n <= 5; ++n) {
    const auto f = GroupFamily::symmetric(n);
    const auto en = make_enumeration(f);
    const Rational theta(1, 3);
    const auto pi = oracle::mallows(*en, theta);
    const auto k = oracle::scan(*en, short_recipe(f), theta);
    auto p = k;
    for (long l = 1; l <= 3; ++l) {
      EXPECT_EQ(short_scan_chisq_symmetric(n, theta, l, false), oracle::chi_square(p, en->identity_index(), pi));
      EXPECT_EQ(short_scan_chisq_symmetric(n, theta, l, true), oracle::averaged_chi_square(p, pi));
      p = p * k;
    }
    p = k;
    for (long m = 1; m <= 5; ++m) {
      EXPECT_EQ(short_scan_trace_symmetric(n, theta, m), p.trace());
      p = p * k;
    }
  }
}

TEST(Spectral, ShortScanTableauSumMatchesEnumeration) {
  const Rational theta(3, 5);
  for (int n = 2; n <= 6; ++n) {
    for (const auto& shape : partitions_of(n)) {
      Rational direct = 0;
      for (const auto& t : standard_tableaux(shape)) direct += ipow(theta, 3L * (n - 1 - content_of_n_box(t)));
      EXPECT_EQ(short_scan_tableau_sum(shape, theta, 3), direct);
    }
  }
}

TEST(Spectral, HypercubeScansMatchBruteForceFromEveryStart) {
  for (int n = 2; n <= 4; ++n) {
    const auto f = GroupFamily::hypercube(n);
    const auto en = make_enumeration(f);
    const Rational theta(2, 5);
    const auto pi = oracle::mallows(*en, theta);
    const auto kr = oracle::random_scan(*en, theta);
    const auto ks = oracle::scan(*en, short_recipe(f), theta);
    auto pr = kr, ps = ks;
    for (long l = 1; l <= 3; ++l) {
      for (std::size_t x = 0; x < en->size(); ++x) {
        EXPECT_EQ(hypercube_random_scan_chisq(n, theta, l, (*en)[x].payload), oracle::chi_square(pr, x, pi));
        EXPECT_EQ(hypercube_systematic_scan_chisq(n, theta, l, (*en)[x].payload), oracle::chi_square(ps, x, pi));
      }
      EXPECT_EQ(hypercube_random_scan_avg_chisq(n, theta, l), oracle::averaged_chi_square(pr, pi));
      EXPECT_EQ(hypercube_systematic_scan_avg_chisq(n, theta, l), oracle::averaged_chi_square(ps, pi));
      pr = pr * kr;
      ps = ps * ks;
    }
    EXPECT_EQ(hypercube_random_scan_trace(n, theta, 3), oracle::power(kr, 3).trace());
  }
}

TEST(Spectral, HypercubeFloatFormsAgreeWithExact) {
  const Rational theta(1, 3);
  const std::vector<int> x{1, 0, 1, 1, 0, 0, 1};
  for (long l = 1; l <= 6; ++l) {
    EXPECT_LT(relative_gap(hypercube_random_scan_chisq(7, theta, l, x).get_d(),
                           hypercube_random_scan_chisq(7, theta.get_d(), l, x)),
              1e-12);
    EXPECT_LT(relative_gap(hypercube_systematic_scan_chisq(7, theta, l, x).get_d(),
                           hypercube_systematic_scan_chisq(7, theta.get_d(), l, x)),
              1e-12);
    EXPECT_LT(relative_gap(hypercube_random_scan_avg_chisq(7, theta, l).get_d(),
                           hypercube_random_scan_avg_chisq(7, theta.get_d(), l)),
              1e-12);
    EXPECT_LT(relative_gap(hypercube_systematic_scan_avg_chisq(7, theta, l).get_d(),
                           hypercube_systematic_scan_avg_chisq(7, theta.get_d(), l)),
              1e-12);
  }
  EXPECT_THROW(hypercube_random_scan_chisq(3, theta, 1, {1, 0}), std::invalid_argument);
  EXPECT_THROW(hypercube_random_scan_chisq(3, theta, 1, {1, 0, 2}), std::invalid_argument);
}

TEST(Spectral, DihedralRandomScanMatchesBruteForce) {
  for (int n = 3; n <= 9; ++n) {
    const auto f = GroupFamily::dihedral(n);
    const auto en = make_enumeration(f);
    for (const Rational& theta : {Rational(1, 4), Rational(1, 2), Rational(1)}) {
      const auto pi = oracle::mallows(*en, theta);
      const auto k = oracle::random_scan(*en, theta);
      auto p = k;
      for (long l = 1; l <= 4; ++l) {
        EXPECT_LT(relative_gap(dihedral_random_scan_chisq(n, theta.get_d(), l, false),
                               oracle::chi_square(p, en->identity_index(), pi).get_d()),
                  1e-12)
            << n << " " << theta << " " << l;
        EXPECT_LT(relative_gap(dihedral_random_scan_chisq(n, theta.get_d(), l, true),
                               oracle::averaged_chi_square(p, pi).get_d()),
                  1e-12);
        p = p * k;
      }
    }
  }
}

TEST(Spectral, SymmetricConstantInequalities) {
  for (int n = 2; n <= 8; ++n) {
    for (const auto& lambda : partitions_of(n)) {
      for (const Rational& theta : {Rational(1, 2), Rational(9, 10), Rational(1, 10)}) {
        const auto c = check_symmetric_constants(lambda, theta);
        EXPECT_TRUE(c.degree_bound) << lambda.to_string() << " theta=" << theta;
        EXPECT_TRUE(c.dimension_bound) << lambda.to_string();
        EXPECT_TRUE(c.content_bound) << lambda.to_string();
      }
    }
  }
}
