#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "pppf/rational.hpp"

namespace pppf {

using QVec = std::vector<Rational>;

/// Dense matrix over the exact rationals. Everything here is small
/// (Milnor numbers at desk degrees), so plain Gaussian elimination is fine.
class QMat {
 public:
  QMat() = default;
  QMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows, QVec(cols, 0)) {}

  static QMat identity(std::size_t n) {
    QMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& operator()(std::size_t i, std::size_t j) { return a_[i][j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return a_[i][j]; }
  const QVec& row(std::size_t i) const { return a_[i]; }

  QMat operator*(const QMat& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("QMat: size mismatch");
    QMat r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        if (a_[i][k] == 0) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += a_[i][k] * o(k, j);
      }
    return r;
  }

  QVec operator*(const QVec& v) const {
    if (cols_ != v.size()) throw std::invalid_argument("QMat: size mismatch");
    QVec r(rows_, 0);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (a_[i][j] != 0) r[i] += a_[i][j] * v[j];
    return r;
  }

  QMat operator-(const QMat& o) const {
    QMat r(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r(i, j) = a_[i][j] - o(i, j);
    return r;
  }

  bool operator==(const QMat& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }

  QMat transposed() const {
    QMat r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r(j, i) = a_[i][j];
    return r;
  }

  Rational det() const {
    if (rows_ != cols_) throw std::invalid_argument("QMat::det: not square");
    auto m = a_;
    Rational d = 1;
    for (std::size_t c = 0; c < cols_; ++c) {
      std::size_t p = c;
      while (p < rows_ && m[p][c] == 0) ++p;
      if (p == rows_) return 0;
      if (p != c) { std::swap(m[p], m[c]); d = -d; }
      d *= m[c][c];
      for (std::size_t i = c + 1; i < rows_; ++i) {
        if (m[i][c] == 0) continue;
        Rational f = m[i][c] / m[c][c];
        for (std::size_t j = c; j < cols_; ++j) m[i][j] -= f * m[c][j];
      }
    }
    return d;
  }

  std::size_t rank() const {
    auto m = a_;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
      std::size_t p = r;
      while (p < rows_ && m[p][c] == 0) ++p;
      if (p == rows_) continue;
      std::swap(m[p], m[r]);
      for (std::size_t i = r + 1; i < rows_; ++i) {
        if (m[i][c] == 0) continue;
        Rational f = m[i][c] / m[r][c];
        for (std::size_t j = c; j < cols_; ++j) m[i][j] -= f * m[r][j];
      }
      ++r;
    }
    return r;
  }

  /// Basis of the right null space.
  std::vector<QVec> kernel() const {
    auto m = a_;
    std::vector<int> pivot_of_col(cols_, -1);
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
      std::size_t p = r;
      while (p < rows_ && m[p][c] == 0) ++p;
      if (p == rows_) continue;
      std::swap(m[p], m[r]);
      Rational inv = m[r][c];
      for (std::size_t j = 0; j < cols_; ++j) m[r][j] /= inv;
      for (std::size_t i = 0; i < rows_; ++i) {
        if (i == r || m[i][c] == 0) continue;
        Rational f = m[i][c];
        for (std::size_t j = 0; j < cols_; ++j) m[i][j] -= f * m[r][j];
      }
      pivot_of_col[c] = static_cast<int>(r);
      ++r;
    }
    std::vector<QVec> out;
    for (std::size_t c = 0; c < cols_; ++c) {
      if (pivot_of_col[c] >= 0) continue;
      QVec v(cols_, 0);
      v[c] = 1;
      for (std::size_t j = 0; j < cols_; ++j)
        if (pivot_of_col[j] >= 0) v[j] = -m[static_cast<std::size_t>(pivot_of_col[j])][c];
      out.push_back(std::move(v));
    }
    return out;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<QVec> a_;
};

/// Incremental row-echelon basis of a rational subspace; used to saturate
/// monodromy orbits and to test span membership exactly.
class QSpan {
 public:
  bool insert(const QVec& v) {
    QVec w = reduce(v);
    std::size_t p = 0;
    while (p < w.size() && w[p] == 0) ++p;
    if (p == w.size()) return false;
    Rational inv = w[p];
    for (auto& x : w) x /= inv;
    basis_.push_back(std::move(w));
    pivots_.push_back(p);
    return true;
  }

  bool contains(const QVec& v) const {
    QVec w = reduce(v);
    for (const auto& x : w)
      if (x != 0) return false;
    return true;
  }

  std::size_t dim() const { return basis_.size(); }
  const std::vector<QVec>& basis() const { return basis_; }

 private:
  QVec reduce(QVec v) const {
    for (std::size_t k = 0; k < basis_.size(); ++k) {
      std::size_t p = pivots_[k];
      if (v[p] == 0) continue;
      Rational f = v[p];
      for (std::size_t j = 0; j < v.size(); ++j) v[j] -= f * basis_[k][j];
    }
    return v;
  }

  std::vector<QVec> basis_;
  std::vector<std::size_t> pivots_;
};

inline std::size_t rank_of(const std::vector<QVec>& rows) {
  QSpan s;
  for (const auto& r : rows) s.insert(r);
  return s.dim();
}

}  // namespace pppf
