#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "scalar.hpp"

namespace heckemetro {

/// Row-major dense square matrix. Rows index the source state.
template <Scalar S>
class DenseMatrix {
 public:
  DenseMatrix() = default;
  explicit DenseMatrix(std::size_t n) : n_(n), data_(n * n, from_int<S>(0)) {}

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = from_int<S>(1);
    return m;
  }

  std::size_t size() const { return n_; }

  S& operator()(std::size_t r, std::size_t c) { return data_[r * n_ + c]; }
  const S& operator()(std::size_t r, std::size_t c) const { return data_[r * n_ + c]; }

  std::span<S> row(std::size_t r) { return {data_.data() + r * n_, n_}; }
  std::span<const S> row(std::size_t r) const { return {data_.data() + r * n_, n_}; }

  S trace() const {
    S t = from_int<S>(0);
    for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
    return t;
  }

  friend bool operator==(const DenseMatrix& a, const DenseMatrix& b) {
    return a.n_ == b.n_ && a.data_ == b.data_;
  }

  friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.n_ != b.n_) throw std::invalid_argument("matrix size mismatch");
    DenseMatrix out(a.n_);
    for (std::size_t i = 0; i < a.n_; ++i) {
      for (std::size_t k = 0; k < a.n_; ++k) {
        const S& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < a.n_; ++j) {
          if (b(k, j) != 0) out(i, j) += aik * b(k, j);
        }
      }
    }
    return out;
  }

 private:
  std::size_t n_ = 0;
  std::vector<S> data_;
};

/// Compressed-row sparse square matrix.
template <Scalar S>
class SparseMatrix {
 public:
  struct Entry {
    std::size_t col;
    S value;
  };

  SparseMatrix() = default;
  explicit SparseMatrix(std::size_t n) : rows_(n) {}

  static SparseMatrix from_dense(const DenseMatrix<S>& d) {
    SparseMatrix s(d.size());
    for (std::size_t r = 0; r < d.size(); ++r) {
      for (std::size_t c = 0; c < d.size(); ++c) {
        if (d(r, c) != 0) s.rows_[r].push_back({c, d(r, c)});
      }
    }
    return s;
  }

  std::size_t size() const { return rows_.size(); }

  /// Adds value to entry (r, c).
  void add(std::size_t r, std::size_t c, const S& value) {
    for (auto& e : rows_[r]) {
      if (e.col == c) {
        e.value += value;
        return;
      }
    }
    rows_[r].push_back({c, value});
  }

  const std::vector<Entry>& row(std::size_t r) const { return rows_[r]; }

  DenseMatrix<S> to_dense() const {
    DenseMatrix<S> d(size());
    for (std::size_t r = 0; r < size(); ++r) {
      for (const auto& e : rows_[r]) d(r, e.col) += e.value;
    }
    return d;
  }

  /// out = v * this (row vector times matrix).
  std::vector<S> left_apply(std::span<const S> v) const {
    std::vector<S> out(size(), from_int<S>(0));
    for (std::size_t r = 0; r < size(); ++r) {
      if (v[r] == 0) continue;
      for (const auto& e : rows_[r]) out[e.col] += v[r] * e.value;
    }
    return out;
  }

 private:
  std::vector<std::vector<Entry>> rows_;
};

/// m * s, computed row by row.
template <Scalar S>
DenseMatrix<S> multiply(const DenseMatrix<S>& m, const SparseMatrix<S>& s) {
  DenseMatrix<S> out(m.size());
  for (std::size_t r = 0; r < m.size(); ++r) {
    auto next = s.left_apply(m.row(r));
    auto dst = out.row(r);
    for (std::size_t c = 0; c < next.size(); ++c) dst[c] = std::move(next[c]);
  }
  return out;
}

/// s * m.
template <Scalar S>
DenseMatrix<S> multiply(const SparseMatrix<S>& s, const DenseMatrix<S>& m) {
  DenseMatrix<S> out(m.size());
  for (std::size_t r = 0; r < s.size(); ++r) {
    auto dst = out.row(r);
    for (const auto& e : s.row(r)) {
      auto src = m.row(e.col);
      for (std::size_t c = 0; c < m.size(); ++c) {
        if (src[c] != 0) dst[c] += e.value * src[c];
      }
    }
  }
  return out;
}

}  // namespace heckemetro
