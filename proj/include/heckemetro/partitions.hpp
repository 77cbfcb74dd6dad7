#pragma once

// Integer partitions, Young diagrams and standard tableaux.
// Boxes are addressed (row, col) from (0, 0); content is col - row.

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "scalar.hpp"

namespace heckemetro {

class Partition {
 public:
  Partition() = default;
  explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (parts_[i] <= 0) throw std::invalid_argument("partition parts must be positive");
      if (i > 0 && parts_[i] > parts_[i - 1]) throw std::invalid_argument("partition parts must be weakly decreasing");
    }
  }

  const std::vector<int>& parts() const { return parts_; }
  int size() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }
  int rows() const { return static_cast<int>(parts_.size()); }
  int first_part() const { return parts_.empty() ? 0 : parts_.front(); }
  int row_length(int r) const { return r < rows() ? parts_[static_cast<std::size_t>(r)] : 0; }

  Partition conjugate() const {
    std::vector<int> c(static_cast<std::size_t>(first_part()), 0);
    for (int p : parts_) {
      for (int j = 0; j < p; ++j) ++c[static_cast<std::size_t>(j)];
    }
    return Partition(c);
  }

  int column_length(int c) const {
    int len = 0;
    for (int p : parts_) len += p > c ? 1 : 0;
    return len;
  }

  int hook(int r, int c) const { return row_length(r) - c + column_length(c) - r - 1; }

  /// Sum of contents over all boxes.
  long content_sum() const {
    long s = 0;
    for (int r = 0; r < rows(); ++r) {
      for (int c = 0; c < parts_[static_cast<std::size_t>(r)]; ++c) s += c - r;
    }
    return s;
  }

  /// n(lambda) = sum_i (i - 1) lambda_i.
  long weighted_size() const {
    long s = 0;
    for (int r = 0; r < rows(); ++r) s += static_cast<long>(r) * parts_[static_cast<std::size_t>(r)];
    return s;
  }

  std::vector<int> hooks() const {
    std::vector<int> h;
    for (int r = 0; r < rows(); ++r) {
      for (int c = 0; c < parts_[static_cast<std::size_t>(r)]; ++c) h.push_back(hook(r, c));
    }
    return h;
  }

  /// Rows r whose last box can be removed leaving a partition.
  std::vector<int> removable_rows() const {
    std::vector<int> out;
    for (int r = 0; r < rows(); ++r) {
      if (r + 1 == rows() || parts_[static_cast<std::size_t>(r + 1)] < parts_[static_cast<std::size_t>(r)]) out.push_back(r);
    }
    return out;
  }

  Partition remove_box(int r) const {
    std::vector<int> p = parts_;
    --p.at(static_cast<std::size_t>(r));
    return Partition(p);
  }

  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < parts_.size(); ++i) s += (i ? "," : "") + std::to_string(parts_[i]);
    return s + ")";
  }

  auto operator<=>(const Partition&) const = default;

 private:
  std::vector<int> parts_;
};

/// All partitions of n in reverse lexicographic order, starting from (n).
inline std::vector<Partition> partitions_of(int n) {
  if (n < 0) throw std::invalid_argument("partitions_of: negative size");
  std::vector<Partition> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int remaining, int max_part) -> void {
    if (remaining == 0) {
      out.emplace_back(cur);
      return;
    }
    for (int p = std::min(remaining, max_part); p >= 1; --p) {
      cur.push_back(p);
      self(self, remaining - p, p);
      cur.pop_back();
    }
  };
  rec(rec, n, n);
  return out;
}

/// n! / prod of hook lengths.
inline Integer hook_dimension(const Partition& p) {
  Integer num;
  mpz_fac_ui(num.get_mpz_t(), static_cast<unsigned long>(p.size()));
  Integer den = 1;
  for (int h : p.hooks()) den *= h;
  return num / den;
}

/// rows[r][c] holds the entry of box (r, c).
struct StandardTableau {
  Partition shape;
  std::vector<std::vector<int>> rows;

  bool is_valid() const {
    const int n = shape.size();
    std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
    if (static_cast<int>(rows.size()) != shape.rows()) return false;
    for (int r = 0; r < shape.rows(); ++r) {
      const auto& row = rows[static_cast<std::size_t>(r)];
      if (static_cast<int>(row.size()) != shape.row_length(r)) return false;
      for (std::size_t c = 0; c < row.size(); ++c) {
        const int v = row[c];
        if (v < 1 || v > n || seen[static_cast<std::size_t>(v)]) return false;
        seen[static_cast<std::size_t>(v)] = true;
        if (c > 0 && row[c - 1] >= v) return false;
        if (r > 0 && rows[static_cast<std::size_t>(r - 1)][c] >= v) return false;
      }
    }
    return true;
  }
};

/// Content (col - row) of the box holding the largest entry.
inline int content_of_n_box(const StandardTableau& t) {
  const int n = t.shape.size();
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    for (std::size_t c = 0; c < t.rows[r].size(); ++c) {
      if (t.rows[r][c] == n) return static_cast<int>(c) - static_cast<int>(r);
    }
  }
  throw std::invalid_argument("content_of_n_box: tableau does not contain n");
}

/// Every standard tableau of the given shape, built by placing n in each
/// removable corner and recursing on the smaller shape.
inline std::vector<StandardTableau> standard_tableaux(const Partition& shape, std::size_t cap = 1000000) {
  if (shape.size() == 0) return {StandardTableau{shape, {}}};
  if (hook_dimension(shape) > Integer(static_cast<unsigned long>(cap))) {
    throw std::length_error("standard_tableaux: count exceeds cap");
  }
  std::vector<StandardTableau> out;
  const int n = shape.size();
  for (int r : shape.removable_rows()) {
    for (auto t : standard_tableaux(shape.remove_box(r), cap)) {
      t.shape = shape;
      if (static_cast<int>(t.rows.size()) <= r) t.rows.resize(static_cast<std::size_t>(r) + 1);
      t.rows[static_cast<std::size_t>(r)].push_back(n);
      out.push_back(std::move(t));
    }
  }
  return out;
}

}  // namespace heckemetro
