#pragma once

// Finite Coxeter groups: symmetric groups S_n, hypercubes (Z/2)^n and
// dihedral groups of order 2n, with lengths, enumeration, parabolic cosets
// and Poincare polynomials.
//
// Generator conventions (indices are 1-based):
//   Symmetric(n)  s_i = (i, i+1), i = 1..n-1, acting on one-line notation.
//   Hypercube(n)  s_i flips coordinate i, i = 1..n.
//   Dihedral(n)   elements are pairs (k, f) acting on Z/n by j -> (-1)^f j + k;
//                 s_1 = (0, 1) and s_2 = (1, 1), so s_2 s_1 is the rotation by 1.

#include <algorithm>
#include <compare>
#include <cstdlib>
#include <map>
#include <memory>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "scalar.hpp"

namespace heckemetro {

enum class FamilyKind { symmetric, hypercube, dihedral };

class CapExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

inline constexpr std::size_t kDefaultEnumerationCap = 50000;

/// Enumeration cap; HECKE_METRO_CAP overrides the default.
inline std::size_t enumeration_cap() {
  if (const char* env = std::getenv("HECKE_METRO_CAP")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return kDefaultEnumerationCap;
}

class GroupFamily {
 public:
  static GroupFamily symmetric(int n) {
    if (n < 2) throw std::invalid_argument("Symmetric(n) requires n >= 2");
    return {FamilyKind::symmetric, n};
  }
  static GroupFamily hypercube(int n) {
    if (n < 1) throw std::invalid_argument("Hypercube(n) requires n >= 1");
    return {FamilyKind::hypercube, n};
  }
  static GroupFamily dihedral(int n) {
    if (n < 3) throw std::invalid_argument("Dihedral(n) requires n >= 3");
    return {FamilyKind::dihedral, n};
  }

  FamilyKind kind() const { return kind_; }
  int n() const { return n_; }

  int rank() const {
    switch (kind_) {
      case FamilyKind::symmetric: return n_ - 1;
      case FamilyKind::hypercube: return n_;
      case FamilyKind::dihedral: return 2;
    }
    return 0;
  }

  Integer order() const {
    Integer o;
    switch (kind_) {
      case FamilyKind::symmetric: mpz_fac_ui(o.get_mpz_t(), static_cast<unsigned long>(n_)); break;
      case FamilyKind::hypercube: mpz_ui_pow_ui(o.get_mpz_t(), 2, static_cast<unsigned long>(n_)); break;
      case FamilyKind::dihedral: o = 2 * n_; break;
    }
    return o;
  }

  std::string name() const {
    switch (kind_) {
      case FamilyKind::symmetric: return "symmetric(" + std::to_string(n_) + ")";
      case FamilyKind::hypercube: return "hypercube(" + std::to_string(n_) + ")";
      case FamilyKind::dihedral: return "dihedral(" + std::to_string(n_) + ")";
    }
    return {};
  }

  auto operator<=>(const GroupFamily&) const = default;

 private:
  GroupFamily(FamilyKind kind, int n) : kind_(kind), n_(n) {}
  FamilyKind kind_;
  int n_;
};

struct GroupElement {
  GroupFamily family;
  std::vector<int> payload;

  auto operator<=>(const GroupElement&) const = default;
};

namespace detail {

inline void require_generator(const GroupFamily& f, int i) {
  if (i < 1 || i > f.rank()) {
    throw std::out_of_range("generator index " + std::to_string(i) + " outside 1.." +
                            std::to_string(f.rank()) + " for " + f.name());
  }
}

inline void require_same_family(const GroupElement& a, const GroupElement& b) {
  if (a.family != b.family) {
    throw std::invalid_argument("family mismatch: " + a.family.name() + " vs " + b.family.name());
  }
}

inline int mod(long a, int n) { return static_cast<int>(((a % n) + n) % n); }

}  // namespace detail

/// Checks that the payload is a valid member of its family.
inline void validate(const GroupElement& w) {
  const int n = w.family.n();
  switch (w.family.kind()) {
    case FamilyKind::symmetric: {
      if (static_cast<int>(w.payload.size()) != n) throw std::invalid_argument("permutation has wrong size");
      std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
      for (int v : w.payload) {
        if (v < 1 || v > n || seen[static_cast<std::size_t>(v)]) {
          throw std::invalid_argument("payload is not a permutation of 1..n");
        }
        seen[static_cast<std::size_t>(v)] = true;
      }
      break;
    }
    case FamilyKind::hypercube:
      if (static_cast<int>(w.payload.size()) != n) throw std::invalid_argument("bit vector has wrong length");
      for (int b : w.payload) {
        if (b != 0 && b != 1) throw std::invalid_argument("bit vector entries must be 0 or 1");
      }
      break;
    case FamilyKind::dihedral:
      if (w.payload.size() != 2 || w.payload[0] < 0 || w.payload[0] >= n ||
          (w.payload[1] != 0 && w.payload[1] != 1)) {
        throw std::invalid_argument("dihedral payload must be (k in 0..n-1, flag in {0,1})");
      }
      break;
  }
}

inline GroupElement make_element(const GroupFamily& f, std::vector<int> payload) {
  GroupElement w{f, std::move(payload)};
  validate(w);
  return w;
}

inline GroupElement identity(const GroupFamily& f) {
  switch (f.kind()) {
    case FamilyKind::symmetric: {
      std::vector<int> p(static_cast<std::size_t>(f.n()));
      std::iota(p.begin(), p.end(), 1);
      return {f, p};
    }
    case FamilyKind::hypercube: return {f, std::vector<int>(static_cast<std::size_t>(f.n()), 0)};
    case FamilyKind::dihedral: return {f, {0, 0}};
  }
  return {f, {}};
}

/// The simple reflection s_i.
inline GroupElement generator(const GroupFamily& f, int i) {
  detail::require_generator(f, i);
  GroupElement g = identity(f);
  switch (f.kind()) {
    case FamilyKind::symmetric: std::swap(g.payload[static_cast<std::size_t>(i - 1)], g.payload[static_cast<std::size_t>(i)]); break;
    case FamilyKind::hypercube: g.payload[static_cast<std::size_t>(i - 1)] = 1; break;
    case FamilyKind::dihedral: g.payload = {i == 1 ? 0 : 1, 1}; break;
  }
  return g;
}

/// Group product a * b (apply b first when viewed as maps).
inline GroupElement multiply(const GroupElement& a, const GroupElement& b) {
  detail::require_same_family(a, b);
  const int n = a.family.n();
  GroupElement out{a.family, {}};
  switch (a.family.kind()) {
    case FamilyKind::symmetric:
      out.payload.resize(static_cast<std::size_t>(n));
      for (int j = 0; j < n; ++j) {
        out.payload[static_cast<std::size_t>(j)] =
            a.payload[static_cast<std::size_t>(b.payload[static_cast<std::size_t>(j)] - 1)];
      }
      break;
    case FamilyKind::hypercube:
      out.payload.resize(static_cast<std::size_t>(n));
      for (int j = 0; j < n; ++j) {
        out.payload[static_cast<std::size_t>(j)] =
            a.payload[static_cast<std::size_t>(j)] ^ b.payload[static_cast<std::size_t>(j)];
      }
      break;
    case FamilyKind::dihedral: {
      const int sign = a.payload[1] ? -1 : 1;
      out.payload = {detail::mod(a.payload[0] + sign * b.payload[0], n), a.payload[1] ^ b.payload[1]};
      break;
    }
  }
  return out;
}

inline GroupElement inverse(const GroupElement& w) {
  const int n = w.family.n();
  GroupElement out{w.family, w.payload};
  switch (w.family.kind()) {
    case FamilyKind::symmetric:
      for (int j = 0; j < n; ++j) out.payload[static_cast<std::size_t>(w.payload[static_cast<std::size_t>(j)] - 1)] = j + 1;
      break;
    case FamilyKind::hypercube: break;
    case FamilyKind::dihedral:
      if (w.payload[1] == 0) out.payload[0] = detail::mod(-w.payload[0], n);
      break;
  }
  return out;
}

/// s_i * w.
inline GroupElement left_reflect(int i, const GroupElement& w) {
  detail::require_generator(w.family, i);
  GroupElement out = w;
  switch (w.family.kind()) {
    case FamilyKind::symmetric:
      for (int& v : out.payload) {
        if (v == i) {
          v = i + 1;
        } else if (v == i + 1) {
          v = i;
        }
      }
      break;
    case FamilyKind::hypercube: out.payload[static_cast<std::size_t>(i - 1)] ^= 1; break;
    case FamilyKind::dihedral:
      out.payload = {detail::mod((i == 1 ? 0 : 1) - w.payload[0], w.family.n()), w.payload[1] ^ 1};
      break;
  }
  return out;
}

/// Coxeter length: inversions, Hamming weight, or alternating word length.
inline int length(const GroupElement& w) {
  const int n = w.family.n();
  switch (w.family.kind()) {
    case FamilyKind::symmetric: {
      int inv = 0;
      for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
          if (w.payload[static_cast<std::size_t>(a)] > w.payload[static_cast<std::size_t>(b)]) ++inv;
        }
      }
      return inv;
    }
    case FamilyKind::hypercube: return static_cast<int>(std::count(w.payload.begin(), w.payload.end(), 1));
    case FamilyKind::dihedral: {
      const int k = w.payload[0];
      if (w.payload[1] == 0) return 2 * std::min(k, n - k);
      return std::min(std::abs(2 * k - 1), 2 * (n - k) + 1);
    }
  }
  return 0;
}

/// True when l(s_i w) < l(w).
inline bool is_left_descent(int i, const GroupElement& w) {
  detail::require_generator(w.family, i);
  switch (w.family.kind()) {
    case FamilyKind::symmetric: {
      auto pos_i = std::find(w.payload.begin(), w.payload.end(), i);
      auto pos_next = std::find(w.payload.begin(), w.payload.end(), i + 1);
      return pos_next < pos_i;
    }
    case FamilyKind::hypercube: return w.payload[static_cast<std::size_t>(i - 1)] == 1;
    case FamilyKind::dihedral: return length(left_reflect(i, w)) < length(w);
  }
  return false;
}

inline GroupElement longest_element(const GroupFamily& f) {
  const int n = f.n();
  switch (f.kind()) {
    case FamilyKind::symmetric: {
      std::vector<int> p(static_cast<std::size_t>(n));
      for (int j = 0; j < n; ++j) p[static_cast<std::size_t>(j)] = n - j;
      return {f, p};
    }
    case FamilyKind::hypercube: return {f, std::vector<int>(static_cast<std::size_t>(n), 1)};
    case FamilyKind::dihedral:
      // Rotation by n/2 for even n; the reflection of length n for odd n.
      return n % 2 == 0 ? GroupElement{f, {n / 2, 0}} : GroupElement{f, {(n + 1) / 2, 1}};
  }
  return identity(f);
}

/// Reduced word (i_1, ..., i_k) with w = s_{i_1} ... s_{i_k}, found by greedy left descent.
inline std::vector<int> reduced_word(const GroupElement& w) {
  std::vector<int> word;
  GroupElement cur = w;
  int len = length(cur);
  while (len > 0) {
    for (int i = 1; i <= cur.family.rank(); ++i) {
      if (is_left_descent(i, cur)) {
        word.push_back(i);
        cur = left_reflect(i, cur);
        --len;
        break;
      }
    }
  }
  return word;
}

/// Degrees of the reflection group.
inline std::vector<int> degrees(const GroupFamily& f) {
  switch (f.kind()) {
    case FamilyKind::symmetric: {
      std::vector<int> d;
      for (int i = 2; i <= f.n(); ++i) d.push_back(i);
      return d;
    }
    case FamilyKind::hypercube: return std::vector<int>(static_cast<std::size_t>(f.n()), 2);
    case FamilyKind::dihedral: return {2, f.n()};
  }
  return {};
}

/// P_W(q) from the degree product  prod [d_i]_q.
template <Scalar S>
S poincare_polynomial(const GroupFamily& f, const S& q) {
  S p = from_int<S>(1);
  for (int d : degrees(f)) p *= q_integer(q, d);
  return p;
}

/// All elements in lexicographic payload order.
inline std::vector<GroupElement> enumerate(const GroupFamily& f, std::size_t cap = enumeration_cap()) {
  if (f.order() > Integer(static_cast<unsigned long>(cap))) {
    throw CapExceeded(f.name() + " has order " + f.order().get_str() + ", above enumeration cap " +
                      std::to_string(cap));
  }
  std::vector<GroupElement> out;
  const int n = f.n();
  switch (f.kind()) {
    case FamilyKind::symmetric: {
      GroupElement w = identity(f);
      do {
        out.push_back(w);
      } while (std::next_permutation(w.payload.begin(), w.payload.end()));
      break;
    }
    case FamilyKind::hypercube:
      for (unsigned long x = 0; x < (1UL << n); ++x) {
        std::vector<int> bits(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j) bits[static_cast<std::size_t>(j)] = static_cast<int>((x >> (n - 1 - j)) & 1UL);
        out.push_back({f, bits});
      }
      break;
    case FamilyKind::dihedral:
      for (int k = 0; k < n; ++k) {
        out.push_back({f, {k, 0}});
        out.push_back({f, {k, 1}});
      }
      break;
  }
  return out;
}

/// Enumerated group with index lookup and precomputed generator action.
class Enumeration {
 public:
  explicit Enumeration(const GroupFamily& f, std::size_t cap = enumeration_cap())
      : family_(f), elements_(heckemetro::enumerate(f, cap)) {
    for (std::size_t idx = 0; idx < elements_.size(); ++idx) index_.emplace(elements_[idx].payload, idx);
    lengths_.reserve(elements_.size());
    for (const auto& w : elements_) lengths_.push_back(length(w));
    left_.assign(static_cast<std::size_t>(f.rank()), std::vector<std::size_t>(elements_.size()));
    right_ = left_;
    for (int i = 1; i <= f.rank(); ++i) {
      const GroupElement s = generator(f, i);
      for (std::size_t idx = 0; idx < elements_.size(); ++idx) {
        left_[static_cast<std::size_t>(i - 1)][idx] = index_of(left_reflect(i, elements_[idx]));
        right_[static_cast<std::size_t>(i - 1)][idx] = index_of(multiply(elements_[idx], s));
      }
    }
    identity_ = index_of(identity(f));
    longest_ = index_of(longest_element(f));
  }

  const GroupFamily& family() const { return family_; }
  std::size_t size() const { return elements_.size(); }
  const std::vector<GroupElement>& elements() const { return elements_; }
  const GroupElement& operator[](std::size_t idx) const { return elements_[idx]; }

  std::size_t index_of(const GroupElement& w) const {
    if (w.family != family_) throw std::invalid_argument("element from a different family");
    auto it = index_.find(w.payload);
    if (it == index_.end()) throw std::invalid_argument("element not in enumeration");
    return it->second;
  }

  int length_at(std::size_t idx) const { return lengths_[idx]; }
  /// Index of s_i * w.
  std::size_t left_reflect_at(int i, std::size_t idx) const { return left_[static_cast<std::size_t>(i - 1)][idx]; }
  /// Index of w * s_i.
  std::size_t right_reflect_at(int i, std::size_t idx) const { return right_[static_cast<std::size_t>(i - 1)][idx]; }
  std::size_t identity_index() const { return identity_; }
  std::size_t longest_index() const { return longest_; }

  template <Scalar S>
  S poincare_by_enumeration(const S& q) const {
    S sum = from_int<S>(0);
    for (int len : lengths_) sum += ipow(q, len);
    return sum;
  }

 private:
  GroupFamily family_;
  std::vector<GroupElement> elements_;
  std::map<std::vector<int>, std::size_t> index_;
  std::vector<int> lengths_;
  std::vector<std::vector<std::size_t>> left_;
  std::vector<std::vector<std::size_t>> right_;
  std::size_t identity_ = 0;
  std::size_t longest_ = 0;
};

inline std::shared_ptr<const Enumeration> make_enumeration(const GroupFamily& f,
                                                          std::size_t cap = enumeration_cap()) {
  return std::make_shared<const Enumeration>(f, cap);
}

class ParabolicSubset {
 public:
  ParabolicSubset(const GroupFamily& f, std::vector<int> generators) : generators_(std::move(generators)) {
    std::sort(generators_.begin(), generators_.end());
    generators_.erase(std::unique(generators_.begin(), generators_.end()), generators_.end());
    for (int i : generators_) detail::require_generator(f, i);
  }
  const std::vector<int>& generators() const { return generators_; }
  bool contains(int i) const { return std::binary_search(generators_.begin(), generators_.end(), i); }

 private:
  std::vector<int> generators_;
};

/// Elements of the parabolic subgroup W_J, by closure under left multiplication.
inline std::vector<GroupElement> parabolic_subgroup(const GroupFamily& f, const ParabolicSubset& J,
                                                    std::size_t cap = enumeration_cap()) {
  std::set<GroupElement> seen{identity(f)};
  std::vector<GroupElement> frontier{identity(f)};
  while (!frontier.empty()) {
    std::vector<GroupElement> next;
    for (const auto& w : frontier) {
      for (int j : J.generators()) {
        GroupElement v = left_reflect(j, w);
        if (seen.insert(v).second) {
          if (seen.size() > cap) throw CapExceeded("parabolic subgroup exceeds enumeration cap");
          next.push_back(std::move(v));
        }
      }
    }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

template <Scalar S>
S parabolic_poincare(const GroupFamily& f, const ParabolicSubset& J, const S& q) {
  S sum = from_int<S>(0);
  for (const auto& w : parabolic_subgroup(f, J)) sum += ipow(q, length(w));
  return sum;
}

/// x is the minimal representative of x W_J iff l(x s_j) > l(x) for all j in J.
inline bool is_min_coset_representative(const GroupElement& x, const ParabolicSubset& J) {
  const int lx = length(x);
  for (int j : J.generators()) {
    if (length(multiply(x, generator(x.family, j))) < lx) return false;
  }
  return true;
}

/// One minimal-length representative per left coset x W_J, in enumeration order.
inline std::vector<GroupElement> min_coset_representatives(const GroupFamily& f, const ParabolicSubset& J,
                                                           std::size_t cap = enumeration_cap()) {
  std::vector<GroupElement> reps;
  for (const auto& w : enumerate(f, cap)) {
    if (is_min_coset_representative(w, J)) reps.push_back(w);
  }
  return reps;
}

/// pi(x W_J) = q^{l(x)} P_{W_J}(q) / P_W(q) for a minimal representative x.
template <Scalar S>
S coset_probability(const GroupFamily& f, const ParabolicSubset& J, const GroupElement& x, const S& q) {
  if (x.family != f) throw std::invalid_argument("representative from a different family");
  if (!is_min_coset_representative(x, J)) {
    throw std::invalid_argument("coset_probability: element is not a minimal coset representative");
  }
  return ipow(q, length(x)) * parabolic_poincare(f, J, q) / poincare_polynomial(f, q);
}

inline std::string format_element(const GroupElement& w) {
  std::string s = "(";
  for (std::size_t j = 0; j < w.payload.size(); ++j) {
    if (j) s += ",";
    s += std::to_string(w.payload[j]);
  }
  return s + ")";
}

}  // namespace heckemetro
