#include <gtest/gtest.h>

#include <set>

#include "oracles.hpp"

using namespace heckemetro;

namespace {

std::vector<GroupFamily> small_families() {
  std::vector<GroupFamily> out;
  for (int n = 2; n <= 5; ++n) out.push_back(GroupFamily::symmetric(n));
  for (int n = 1; n <= 6; ++n) out.push_back(GroupFamily::hypercube(n));
  for (int n = 3; n <= 10; ++n) out.push_back(GroupFamily::dihedral(n));
  return out;
}

}  // namespace

TEST(Coxeter, OrderMatchesEnumeration) {
  for (const auto& f : small_families()) {
    const auto en = make_enumeration(f);
    EXPECT_EQ(Integer(static_cast<unsigned long>(en->size())), f.order()) << f.name();
    std::set<std::vector<int>> distinct;
    for (const auto& w : en->elements()) distinct.insert(w.payload);
    EXPECT_EQ(distinct.size(), en->size());
  }
}

TEST(Coxeter, EnumerationIsLexicographic) {
  for (const auto& f : small_families()) {
    const auto en = make_enumeration(f);
    for (std::size_t i = 1; i < en->size(); ++i) EXPECT_LT((*en)[i - 1].payload, (*en)[i].payload);
  }
}

TEST(Coxeter, LengthEqualsCayleyGraphDistance) {
  for (const auto& f : small_families()) {
    const auto dist = oracle::bfs_lengths(f);
    ASSERT_EQ(Integer(static_cast<unsigned long>(dist.size())), f.order());
    for (const auto& [payload, d] : dist) EXPECT_EQ(length(make_element(f, payload)), d) << f.name();
  }
}

TEST(Coxeter, GeneratorsAreInvolutions) {
  for (const auto& f : small_families()) {
    for (int i = 1; i <= f.rank(); ++i) {
      const auto s = generator(f, i);
      EXPECT_EQ(multiply(s, s), identity(f));
      EXPECT_EQ(length(s), 1);
    }
  }
}

TEST(Coxeter, BraidRelations) {
  for (const auto& f : small_families()) {
    const auto en = make_enumeration(f);
    for (int i = 1; i <= f.rank(); ++i) {
      for (int j = i + 1; j <= f.rank(); ++j) {
        const auto si = generator(f, i), sj = generator(f, j);
        const auto sisj = multiply(si, sj);
        int order = 1;
        for (auto p = sisj; p != identity(f); p = multiply(p, sisj)) ++order;
        int expected = 2;
        if (f.kind() == FamilyKind::symmetric && j == i + 1) expected = 3;
        if (f.kind() == FamilyKind::dihedral) expected = f.n();
        EXPECT_EQ(order, expected) << f.name() << " s" << i << " s" << j;
      }
    }
  }
}

TEST(Coxeter, LeftReflectIsLeftMultiplication) {
  for (const auto& f : small_families()) {
    for (const auto& w : enumerate(f)) {
      for (int i = 1; i <= f.rank(); ++i) {
        EXPECT_EQ(left_reflect(i, w), multiply(generator(f, i), w));
        EXPECT_EQ(std::abs(length(left_reflect(i, w)) - length(w)), 1);
        EXPECT_EQ(is_left_descent(i, w), length(left_reflect(i, w)) < length(w));
      }
    }
  }
}

TEST(Coxeter, InverseAndAssociativity) {
  for (const auto& f : small_families()) {
    const auto els = enumerate(f);
    for (const auto& w : els) {
      EXPECT_EQ(multiply(w, inverse(w)), identity(f));
      EXPECT_EQ(length(inverse(w)), length(w));
    }
    for (std::size_t a = 0; a < els.size(); a += 3) {
      for (std::size_t b = 0; b < els.size(); b += 5) {
        const auto& c = els[(a + b) % els.size()];
        EXPECT_EQ(multiply(multiply(els[a], els[b]), c), multiply(els[a], multiply(els[b], c)));
      }
    }
  }
}

TEST(Coxeter, LongestElementIsUnique) {
  for (const auto& f : small_families()) {
    const auto en = make_enumeration(f);
    int top = 0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < en->size(); ++i) top = std::max(top, en->length_at(i));
    for (std::size_t i = 0; i < en->size(); ++i) count += en->length_at(i) == top ? 1 : 0;
    EXPECT_EQ(count, 1u);
    EXPECT_EQ(length(longest_element(f)), top);
    EXPECT_EQ(en->length_at(en->longest_index()), top);
    long degree_sum = 0;
    for (int d : degrees(f)) degree_sum += d - 1;
    EXPECT_EQ(top, degree_sum) << "l(w0) is the number of reflections";
  }
}

TEST(Coxeter, ReducedWordsReproduceElement) {
  for (const auto& f : small_families()) {
    for (const auto& w : enumerate(f)) {
      const auto word = reduced_word(w);
      EXPECT_EQ(static_cast<int>(word.size()), length(w));
      GroupElement p = identity(f);
      for (int i : word) p = multiply(p, generator(f, i));
      EXPECT_EQ(p, w);
    }
  }
}

TEST(Coxeter, PoincareByEnumerationEqualsDegreeProduct) {
  for (const auto& f : small_families()) {
    const auto en = make_enumeration(f);
    for (const Rational& q : {Rational(2), Rational(3, 2), Rational(10, 9), Rational(1)}) {
      EXPECT_EQ(en->poincare_by_enumeration(q), poincare_polynomial(f, q)) << f.name();
    }
  }
}

TEST(Coxeter, ParabolicCosetsPartitionTheGroup) {
  const auto f = GroupFamily::symmetric(4);
  const ParabolicSubset J(f, {1, 3});
  const auto sub = parabolic_subgroup(f, J);
  EXPECT_EQ(sub.size(), 4u);
  const auto reps = min_coset_representatives(f, J);
  EXPECT_EQ(reps.size() * sub.size(), 24u);
  for (const Rational& q : {Rational(2), Rational(3)}) {
    Rational total = 0;
    for (const auto& x : reps) total += coset_probability(f, J, x, q);
    EXPECT_EQ(total, 1);
  }
  // Direct coset mass: sum of q^{l(w)} over x W_J.
  const Rational q(5, 2);
  const auto en = make_enumeration(f);
  for (const auto& x : reps) {
    Rational mass = 0;
    for (const auto& u : sub) mass += ipow(q, length(multiply(x, u)));
    EXPECT_EQ(mass / poincare_polynomial(f, q), coset_probability(f, J, x, q));
  }
  EXPECT_THROW(coset_probability(f, J, generator(f, 1), q), std::invalid_argument);
}

TEST(Coxeter, RejectsMalformedInput) {
  EXPECT_THROW(GroupFamily::symmetric(1), std::invalid_argument);
  EXPECT_THROW(GroupFamily::dihedral(2), std::invalid_argument);
  EXPECT_THROW(GroupFamily::hypercube(0), std::invalid_argument);
  const auto f = GroupFamily::symmetric(3);
  EXPECT_THROW(make_element(f, {1, 1, 2}), std::invalid_argument);
  EXPECT_THROW(make_element(GroupFamily::dihedral(5), {5, 0}), std::invalid_argument);
  EXPECT_THROW(generator(f, 3), std::out_of_range);
  EXPECT_THROW(multiply(identity(f), identity(GroupFamily::symmetric(4))), std::invalid_argument);
}

TEST(Coxeter, EnumerationCapIsEnforced) {
  EXPECT_THROW(enumerate(GroupFamily::symmetric(9), 1000), CapExceeded);
  EXPECT_NO_THROW(enumerate(GroupFamily::symmetric(6), 720));
}
