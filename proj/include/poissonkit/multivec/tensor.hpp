#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "poissonkit/error.hpp"
#include "poissonkit/exactlin/matrix.hpp"
#include "poissonkit/multivec/poly.hpp"

namespace poissonkit::multivec {

using exactlin::Matrix;

enum class Variance { Contravariant, Covariant };

/// Totally skew tensor field of degree Deg on R^n with polynomial
/// coefficients. Only strictly increasing index tuples are stored; get/set
/// accept any order and apply the permutation sign.
template <Variance V, std::size_t Deg>
class SkewTensorField {
 public:
  using Index = std::array<std::size_t, Deg>;

  SkewTensorField() = default;
  explicit SkewTensorField(std::size_t n_vars) : n_(n_vars) {}

  std::size_t n_vars() const { return n_; }
  const std::map<Index, Poly>& components() const { return comps_; }
  bool is_zero() const { return comps_.empty(); }

  Poly get(Index idx) const {
    int sign = sort_with_sign(idx);
    if (sign == 0) return Poly(n_);
    auto it = comps_.find(idx);
    if (it == comps_.end()) return Poly(n_);
    return sign > 0 ? it->second : -it->second;
  }

  void set(Index idx, Poly p) {
    check_range(idx);
    if (p.n_vars() != n_) throw Error(ErrorCode::DimensionMismatch, "component in a different variable count");
    int sign = sort_with_sign(idx);
    if (sign == 0) {
      if (!p.is_zero()) throw Error(ErrorCode::NotSkew, "nonzero component with a repeated index");
      return;
    }
    if (sign < 0) p = -p;
    if (p.is_zero())
      comps_.erase(idx);
    else
      comps_[idx] = std::move(p);
  }

  void add(Index idx, const Poly& p) { set(idx, get(idx) + p); }

  SkewTensorField& operator+=(const SkewTensorField& o) {
    check_vars(o);
    for (const auto& [idx, p] : o.comps_) add(idx, p);
    return *this;
  }
  SkewTensorField& operator-=(const SkewTensorField& o) {
    check_vars(o);
    for (const auto& [idx, p] : o.comps_) add(idx, -p);
    return *this;
  }
  friend SkewTensorField operator+(SkewTensorField a, const SkewTensorField& b) { return a += b; }
  friend SkewTensorField operator-(SkewTensorField a, const SkewTensorField& b) { return a -= b; }
  friend SkewTensorField operator-(SkewTensorField a) {
    for (auto& [idx, p] : a.comps_) p = -p;
    return a;
  }
  /// Multiplication by a function.
  friend SkewTensorField operator*(const Poly& f, const SkewTensorField& a) {
    SkewTensorField r(a.n_);
    for (const auto& [idx, p] : a.comps_) r.set(idx, f * p);
    return r;
  }
  friend SkewTensorField operator*(const Scalar& s, const SkewTensorField& a) {
    SkewTensorField r(a.n_);
    for (const auto& [idx, p] : a.comps_) r.set(idx, s * p);
    return r;
  }

  friend bool operator==(const SkewTensorField&, const SkewTensorField&) = default;

  /// Every index tuple in increasing order, including those with zero component.
  static std::vector<Index> increasing_indices(std::size_t n) {
    std::vector<Index> out;
    Index idx{};
    auto rec = [&](auto&& self, std::size_t pos, std::size_t start) -> void {
      if (pos == Deg) {
        out.push_back(idx);
        return;
      }
      for (std::size_t i = start; i < n; ++i) {
        idx[pos] = i;
        self(self, pos + 1, i + 1);
      }
    };
    rec(rec, 0, 0);
    return out;
  }

 private:
  void check_vars(const SkewTensorField& o) const {
    if (n_ != o.n_) throw Error(ErrorCode::DimensionMismatch, "tensor fields in different variable counts");
  }
  void check_range(const Index& idx) const {
    for (auto i : idx)
      if (i >= n_) throw Error(ErrorCode::DimensionMismatch, "tensor index out of range");
  }
  /// Sorts idx; returns the permutation sign, or 0 on a repeated index.
  static int sort_with_sign(Index& idx) {
    int sign = 1;
    for (std::size_t a = 0; a < Deg; ++a)
      for (std::size_t b = 0; b + 1 < Deg - a; ++b)
        if (idx[b] > idx[b + 1]) {
          std::swap(idx[b], idx[b + 1]);
          sign = -sign;
        }
    for (std::size_t a = 0; a + 1 < Deg; ++a)
      if (idx[a] == idx[a + 1]) return 0;
    return sign;
  }

  std::size_t n_ = 0;
  std::map<Index, Poly> comps_;
};

using PolyVectorField = SkewTensorField<Variance::Contravariant, 1>;
using PolyBivector = SkewTensorField<Variance::Contravariant, 2>;
using PolyTrivector = SkewTensorField<Variance::Contravariant, 3>;
using PolyOneForm = SkewTensorField<Variance::Covariant, 1>;
using PolyTwoForm = SkewTensorField<Variance::Covariant, 2>;
using PolyThreeForm = SkewTensorField<Variance::Covariant, 3>;
using PolyFourForm = SkewTensorField<Variance::Covariant, 4>;

/// Component vector of a degree-1 field at a rational point.
template <Variance V>
std::vector<Scalar> evaluate(const SkewTensorField<V, 1>& t, std::span<const Scalar> x) {
  std::vector<Scalar> out(t.n_vars());
  for (const auto& [idx, p] : t.components()) out[idx[0]] = p.evaluate(x);
  return out;
}

/// Skew matrix of a degree-2 field at a rational point.
template <Variance V>
Matrix evaluate(const SkewTensorField<V, 2>& t, std::span<const Scalar> x) {
  Matrix m(t.n_vars(), t.n_vars());
  for (const auto& [idx, p] : t.components()) {
    m(idx[0], idx[1]) = p.evaluate(x);
    m(idx[1], idx[0]) = -m(idx[0], idx[1]);
  }
  return m;
}

/// Constant degree-2 field from a skew matrix.
template <Variance V>
SkewTensorField<V, 2> constant_field(const Matrix& m) {
  if (!m.is_skew()) throw Error(ErrorCode::NotSkew, "matrix is not skew-symmetric");
  SkewTensorField<V, 2> t(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i + 1; j < m.cols(); ++j) t.set({i, j}, Poly::constant(m.rows(), m(i, j)));
  return t;
}

}  // namespace poissonkit::multivec
