#pragma once

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "centra/rational.hpp"

namespace centra {

/// Dense matrix over the exact rationals, row-major.
class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(int rows, int cols)
      : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols) {}
  QMatrix(int rows, int cols, std::vector<Rational> entries)
      : rows_(rows), cols_(cols), a_(std::move(entries)) {
    if (a_.size() != static_cast<std::size_t>(rows) * cols)
      throw std::invalid_argument("QMatrix: entry count != rows*cols");
  }

  static QMatrix identity(int n) {
    QMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  const Rational& at(int i, int j) const {
    return a_[static_cast<std::size_t>(i) * cols_ + j];
  }
  Rational& at(int i, int j) {
    return a_[static_cast<std::size_t>(i) * cols_ + j];
  }

  const std::vector<Rational>& entries() const { return a_; }

  bool is_zero() const {
    for (const auto& x : a_)
      if (x != 0) return false;
    return true;
  }
  bool is_diagonal() const {
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j)
        if (i != j && at(i, j) != 0) return false;
    return true;
  }
  bool is_upper_triangular() const {
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < i && j < cols_; ++j)
        if (at(i, j) != 0) return false;
    return true;
  }
  std::vector<Rational> diagonal() const {
    std::vector<Rational> d;
    for (int i = 0; i < rows_ && i < cols_; ++i) d.push_back(at(i, i));
    return d;
  }

  friend bool operator==(const QMatrix& a, const QMatrix& b) = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Rational> a_;
};

inline QMatrix operator+(const QMatrix& a, const QMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("matrix add: shape mismatch");
  QMatrix r(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r.at(i, j) = a.at(i, j) + b.at(i, j);
  return r;
}

inline QMatrix operator-(const QMatrix& a, const QMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("matrix sub: shape mismatch");
  QMatrix r(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r.at(i, j) = a.at(i, j) - b.at(i, j);
  return r;
}

inline QMatrix operator*(const QMatrix& a, const QMatrix& b) {
  if (a.cols() != b.rows())
    throw std::invalid_argument("matrix mul: shape mismatch");
  QMatrix r(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      const Rational& f = a.at(i, k);
      if (f == 0) continue;
      for (int j = 0; j < b.cols(); ++j) {
        if (b.at(k, j) == 0) continue;
        r.at(i, j) += f * b.at(k, j);
      }
    }
  return r;
}

inline QMatrix operator*(const Rational& c, const QMatrix& a) {
  QMatrix r(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r.at(i, j) = c * a.at(i, j);
  return r;
}

inline std::vector<Rational> operator*(const QMatrix& a,
                                       const std::vector<Rational>& v) {
  if (static_cast<int>(v.size()) != a.cols())
    throw std::invalid_argument("matrix-vector mul: shape mismatch");
  std::vector<Rational> r(a.rows());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      if (a.at(i, j) != 0 && v[j] != 0) r[i] += a.at(i, j) * v[j];
  return r;
}

inline QMatrix commutator(const QMatrix& a, const QMatrix& b) {
  return a * b - b * a;
}

struct RrefResult {
  int rank = 0;
  std::vector<int> pivots;  // pivot column per pivot row
  QMatrix reduced;
};

/// Unique reduced row-echelon form. Pivot choice is the first row with a
/// nonzero entry in the current column, so output ordering is reproducible.
inline RrefResult rref(QMatrix m) {
  const int rows = m.rows(), cols = m.cols();
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int p = -1;
    for (int i = r; i < rows; ++i)
      if (m.at(i, c) != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    if (p != r)
      for (int j = c; j < cols; ++j) std::swap(m.at(p, j), m.at(r, j));
    const Rational pv = m.at(r, c);
    for (int j = c; j < cols; ++j) m.at(r, j) /= pv;
    for (int i = 0; i < rows; ++i) {
      if (i == r) continue;
      const Rational f = m.at(i, c);
      if (f == 0) continue;
      for (int j = c; j < cols; ++j)
        if (m.at(r, j) != 0) m.at(i, j) -= f * m.at(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return {r, std::move(pivots), std::move(m)};
}

/// Basis of the null space {v : m v = 0}. Each vector is scaled so that its
/// first nonzero entry equals 1; count is always cols - rank.
inline std::vector<std::vector<Rational>> kernel_basis(const QMatrix& m) {
  const RrefResult r = rref(m);
  const int cols = m.cols();
  std::vector<int> pivot_row(cols, -1);
  for (int k = 0; k < static_cast<int>(r.pivots.size()); ++k)
    pivot_row[r.pivots[k]] = k;
  std::vector<std::vector<Rational>> basis;
  for (int c = 0; c < cols; ++c) {
    if (pivot_row[c] >= 0) continue;
    std::vector<Rational> v(cols);
    v[c] = 1;
    for (int k = 0; k < static_cast<int>(r.pivots.size()); ++k)
      v[r.pivots[k]] = -r.reduced.at(k, c);
    for (const auto& x : v)
      if (x != 0) {
        const Rational lead = x;
        for (auto& y : v) y /= lead;
        break;
      }
    basis.push_back(std::move(v));
  }
  return basis;
}

/// One exact solution of m x = b (free variables set to zero), or absent
/// when the system is inconsistent.
inline std::optional<std::vector<Rational>> solve(
    const QMatrix& m, const std::vector<Rational>& b) {
  if (static_cast<int>(b.size()) != m.rows())
    throw std::invalid_argument("solve: rhs length != rows");
  QMatrix aug(m.rows(), m.cols() + 1);
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, m.cols()) = b[i];
  }
  const RrefResult r = rref(std::move(aug));
  for (int p : r.pivots)
    if (p == m.cols()) return std::nullopt;
  std::vector<Rational> x(m.cols());
  for (int k = 0; k < static_cast<int>(r.pivots.size()); ++k)
    x[r.pivots[k]] = r.reduced.at(k, m.cols());
  return x;
}

/// Incremental row space in echelon form; add() keeps a vector only when it
/// enlarges the span. Used for spanning-set selection and membership tests.
class RowSpan {
 public:
  explicit RowSpan(int width) : width_(width) {}

  int dim() const { return static_cast<int>(rows_.size()); }
  int width() const { return width_; }

  // Reduces v against the stored rows in place; afterwards v is zero iff it
  // was in the span.
  void reduce(std::vector<Rational>& v) const {
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      const Rational& f = v[pivot_[k]];
      if (f == 0) continue;
      const Rational c = f;  // rows_[k] has a 1 at pivot_[k]
      for (int j = 0; j < width_; ++j)
        if (rows_[k][j] != 0) v[j] -= c * rows_[k][j];
    }
  }

  bool contains(std::vector<Rational> v) const {
    reduce(v);
    for (const auto& x : v)
      if (x != 0) return false;
    return true;
  }

  bool add(std::vector<Rational> v) {
    if (static_cast<int>(v.size()) != width_)
      throw std::invalid_argument("RowSpan: width mismatch");
    reduce(v);
    int p = -1;
    for (int j = 0; j < width_; ++j)
      if (v[j] != 0) {
        p = j;
        break;
      }
    if (p < 0) return false;
    const Rational lead = v[p];
    for (auto& x : v) x /= lead;
    rows_.push_back(std::move(v));
    pivot_.push_back(p);
    return true;
  }

 private:
  int width_;
  std::vector<std::vector<Rational>> rows_;
  std::vector<int> pivot_;
};

}  // namespace centra
