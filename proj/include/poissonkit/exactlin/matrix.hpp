#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "poissonkit/error.hpp"
#include "poissonkit/exactlin/scalar.hpp"

namespace poissonkit::exactlin {

/// Requirements on an exact field type used by the generic elimination code.
template <class F>
concept ExactField = requires(const F& a, const F& b) {
  { a + b } -> std::convertible_to<F>;
  { a - b } -> std::convertible_to<F>;
  { a * b } -> std::convertible_to<F>;
  { a / b } -> std::convertible_to<F>;
  { -a } -> std::convertible_to<F>;
  { a == b } -> std::convertible_to<bool>;
  { a.is_zero() } -> std::convertible_to<bool>;
  F(0);
  F(1);
};

/// Dense row-major matrix over an exact field.
template <ExactField F>
class BasicMatrix {
 public:
  BasicMatrix() = default;
  BasicMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, F(0)) {}
  BasicMatrix(std::size_t rows, std::size_t cols, std::vector<F> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_)
      throw Error(ErrorCode::DimensionMismatch, "matrix data length does not match rows*cols");
  }
  BasicMatrix(std::initializer_list<std::initializer_list<F>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw Error(ErrorCode::DimensionMismatch, "ragged matrix literal");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static BasicMatrix identity(std::size_t n) {
    BasicMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = F(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  F& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const F& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<F> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const F> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  std::vector<F> row_vector(std::size_t i) const { return {row(i).begin(), row(i).end()}; }
  std::vector<F> col_vector(std::size_t j) const {
    std::vector<F> out;
    out.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out.push_back((*this)(i, j));
    return out;
  }
  const std::vector<F>& data() const { return data_; }

  void append_row(std::span<const F> r) {
    if (rows_ == 0 && cols_ == 0) cols_ = r.size();
    if (r.size() != cols_) throw Error(ErrorCode::DimensionMismatch, "appended row has wrong length");
    data_.insert(data_.end(), r.begin(), r.end());
    ++rows_;
  }

  BasicMatrix transpose() const {
    BasicMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  /// Rows [r0, r1) and columns [c0, c1).
  BasicMatrix block(std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1) const {
    BasicMatrix b(r1 - r0, c1 - c0);
    for (std::size_t i = r0; i < r1; ++i)
      for (std::size_t j = c0; j < c1; ++j) b(i - r0, j - c0) = (*this)(i, j);
    return b;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const F& x) { return x.is_zero(); });
  }
  bool is_square() const { return rows_ == cols_; }
  bool is_skew() const {
    if (!is_square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i; j < cols_; ++j)
        if (!((*this)(i, j) + (*this)(j, i)).is_zero()) return false;
    return true;
  }
  bool is_symmetric() const {
    if (!is_square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i + 1; j < cols_; ++j)
        if (!((*this)(i, j) == (*this)(j, i))) return false;
    return true;
  }

  BasicMatrix& operator+=(const BasicMatrix& o) {
    check_same_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] = data_[k] + o.data_[k];
    return *this;
  }
  BasicMatrix& operator-=(const BasicMatrix& o) {
    check_same_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] = data_[k] - o.data_[k];
    return *this;
  }
  friend BasicMatrix operator+(BasicMatrix a, const BasicMatrix& b) { return a += b; }
  friend BasicMatrix operator-(BasicMatrix a, const BasicMatrix& b) { return a -= b; }
  friend BasicMatrix operator-(BasicMatrix a) {
    for (auto& x : a.data_) x = -x;
    return a;
  }
  friend BasicMatrix operator*(const F& s, BasicMatrix a) {
    for (auto& x : a.data_) x = s * x;
    return a;
  }
  friend BasicMatrix operator*(const BasicMatrix& a, const BasicMatrix& b) {
    if (a.cols_ != b.rows_) throw Error(ErrorCode::DimensionMismatch, "matrix product shape mismatch");
    BasicMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const F& aik = a(i, k);
        if (aik.is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) = c(i, j) + aik * b(k, j);
      }
    return c;
  }
  std::vector<F> apply(std::span<const F> v) const {
    if (v.size() != cols_) throw Error(ErrorCode::DimensionMismatch, "matrix-vector shape mismatch");
    std::vector<F> out(rows_, F(0));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (!v[j].is_zero()) out[i] = out[i] + (*this)(i, j) * v[j];
    return out;
  }

  friend bool operator==(const BasicMatrix& a, const BasicMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  void check_same_shape(const BasicMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw Error(ErrorCode::DimensionMismatch, "matrix shapes differ");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<F> data_;
};

using Matrix = BasicMatrix<Scalar>;

/// Block matrix [[a, b], [c, d]].
template <ExactField F>
BasicMatrix<F> block_matrix(const BasicMatrix<F>& a, const BasicMatrix<F>& b, const BasicMatrix<F>& c,
                            const BasicMatrix<F>& d) {
  if (a.rows() != b.rows() || c.rows() != d.rows() || a.cols() != c.cols() || b.cols() != d.cols())
    throw Error(ErrorCode::DimensionMismatch, "incompatible blocks");
  BasicMatrix<F> m(a.rows() + c.rows(), a.cols() + b.cols());
  auto put = [&m](const BasicMatrix<F>& src, std::size_t r0, std::size_t c0) {
    for (std::size_t i = 0; i < src.rows(); ++i)
      for (std::size_t j = 0; j < src.cols(); ++j) m(r0 + i, c0 + j) = src(i, j);
  };
  put(a, 0, 0);
  put(b, 0, a.cols());
  put(c, a.rows(), 0);
  put(d, a.rows(), a.cols());
  return m;
}

/// Brings `m` to reduced row echelon form in place and returns the pivot
/// columns in increasing order. Zero rows end up at the bottom.
template <ExactField F>
std::vector<std::size_t> rref_in_place(BasicMatrix<F>& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c).is_zero()) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    const F inv = F(1) / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) = m(r, j) * inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      const F factor = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j)
        if (!m(r, j).is_zero()) m(i, j) = m(i, j) - factor * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

/// RREF with the zero rows removed.
template <ExactField F>
BasicMatrix<F> rref_basis(BasicMatrix<F> m, std::vector<std::size_t>* pivots_out = nullptr) {
  auto pivots = rref_in_place(m);
  BasicMatrix<F> out = m.block(0, pivots.size(), 0, m.cols());
  if (pivots_out) *pivots_out = std::move(pivots);
  return out;
}

template <ExactField F>
std::size_t rank(BasicMatrix<F> m) {
  return rref_in_place(m).size();
}

/// Rows form a basis of {x : m x = 0}, in canonical (RREF) order.
template <ExactField F>
BasicMatrix<F> nullspace(const BasicMatrix<F>& m) {
  BasicMatrix<F> r = m;
  auto pivots = rref_in_place(r);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  BasicMatrix<F> basis(0, m.cols());
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<F> v(m.cols(), F(0));
    v[free] = F(1);
    for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -r(k, free);
    basis.append_row(v);
  }
  return rref_basis(std::move(basis));
}

/// Some x with m x = b, or nullopt if inconsistent.
template <ExactField F>
std::optional<std::vector<F>> solve(const BasicMatrix<F>& m, std::span<const F> b) {
  if (b.size() != m.rows()) throw Error(ErrorCode::DimensionMismatch, "solve: rhs length mismatch");
  BasicMatrix<F> aug(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  auto pivots = rref_in_place(aug);
  if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;
  std::vector<F> x(m.cols(), F(0));
  for (std::size_t k = 0; k < pivots.size(); ++k) x[pivots[k]] = aug(k, m.cols());
  return x;
}

template <ExactField F>
F determinant(BasicMatrix<F> m) {
  if (!m.is_square()) throw Error(ErrorCode::DimensionMismatch, "determinant of non-square matrix");
  const std::size_t n = m.rows();
  F det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m(p, c).is_zero()) ++p;
    if (p == n) return F(0);
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
      det = -det;
    }
    det = det * m(c, c);
    const F inv = F(1) / m(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m(i, c).is_zero()) continue;
      const F factor = m(i, c) * inv;
      for (std::size_t j = c; j < n; ++j) m(i, j) = m(i, j) - factor * m(c, j);
    }
  }
  return det;
}

/// Inverse, or nullopt when singular.
template <ExactField F>
std::optional<BasicMatrix<F>> inverse(const BasicMatrix<F>& m) {
  if (!m.is_square()) throw Error(ErrorCode::DimensionMismatch, "inverse of non-square matrix");
  const std::size_t n = m.rows();
  BasicMatrix<F> aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = F(1);
  }
  auto pivots = rref_in_place(aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1) return std::nullopt;
  return aug.block(0, n, n, 2 * n);
}

}  // namespace poissonkit::exactlin
