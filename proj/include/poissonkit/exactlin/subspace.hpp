#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "poissonkit/exactlin/matrix.hpp"

namespace poissonkit::exactlin {

inline constexpr std::size_t kDefaultAmbientCap = 64;

/// A linear subspace of F^n stored by its reduced row echelon basis, so two
/// equal subspaces compare equal field by field.
template <ExactField F>
class BasicSubspace {
 public:
  BasicSubspace() = default;

  /// Span of the rows of `generators`.
  static BasicSubspace span(std::size_t ambient_dim, const BasicMatrix<F>& generators,
                            std::size_t ambient_cap = kDefaultAmbientCap) {
    check_cap(ambient_dim, ambient_cap);
    if (generators.rows() > 0 && generators.cols() != ambient_dim)
      throw Error(ErrorCode::DimensionMismatch, "generator length differs from ambient dimension");
    BasicSubspace s;
    s.ambient_dim_ = ambient_dim;
    if (generators.rows() == 0) {
      s.basis_ = BasicMatrix<F>(0, ambient_dim);
    } else {
      s.basis_ = rref_basis(generators, &s.pivots_);
    }
    return s;
  }
  static BasicSubspace span(std::size_t ambient_dim, const std::vector<std::vector<F>>& vectors,
                            std::size_t ambient_cap = kDefaultAmbientCap) {
    BasicMatrix<F> g(0, ambient_dim);
    for (const auto& v : vectors) g.append_row(v);
    return span(ambient_dim, g, ambient_cap);
  }
  static BasicSubspace zero(std::size_t n) { return span(n, BasicMatrix<F>(0, n)); }
  static BasicSubspace full(std::size_t n) { return span(n, BasicMatrix<F>::identity(n)); }

  std::size_t ambient_dim() const { return ambient_dim_; }
  std::size_t dim() const { return basis_.rows(); }
  const BasicMatrix<F>& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  bool is_zero() const { return dim() == 0; }
  bool is_full() const { return dim() == ambient_dim_; }

  bool contains(std::span<const F> v) const {
    if (v.size() != ambient_dim_) throw Error(ErrorCode::DimensionMismatch, "vector length mismatch");
    // v lies in the span iff subtracting its pivot expansion leaves zero.
    std::vector<F> rest(v.begin(), v.end());
    for (std::size_t k = 0; k < dim(); ++k) {
      const F c = rest[pivots_[k]];
      if (c.is_zero()) continue;
      for (std::size_t j = 0; j < ambient_dim_; ++j) rest[j] = rest[j] - c * basis_(k, j);
    }
    for (const auto& x : rest)
      if (!x.is_zero()) return false;
    return true;
  }
  bool contains(const BasicSubspace& other) const {
    check_same_ambient(other);
    for (std::size_t i = 0; i < other.dim(); ++i)
      if (!contains(other.basis_.row(i))) return false;
    return true;
  }

  /// Coordinates of v (assumed to lie in the subspace) in the canonical basis.
  std::vector<F> coordinates(std::span<const F> v) const {
    std::vector<F> c;
    c.reserve(dim());
    for (auto p : pivots_) c.push_back(v[p]);
    return c;
  }

  friend bool operator==(const BasicSubspace& a, const BasicSubspace& b) {
    return a.ambient_dim_ == b.ambient_dim_ && a.basis_ == b.basis_;
  }

  void check_same_ambient(const BasicSubspace& other) const {
    if (ambient_dim_ != other.ambient_dim_)
      throw Error(ErrorCode::DimensionMismatch, "subspaces live in different ambient spaces");
  }

 private:
  static void check_cap(std::size_t n, std::size_t cap) {
    if (n > cap) throw Error(ErrorCode::CapExceeded, "ambient dimension exceeds configured cap");
  }

  std::size_t ambient_dim_ = 0;
  BasicMatrix<F> basis_;
  std::vector<std::size_t> pivots_;
};

using ExactSubspace = BasicSubspace<Scalar>;

template <ExactField F>
BasicSubspace<F> subspace_sum(const BasicSubspace<F>& a, const BasicSubspace<F>& b) {
  a.check_same_ambient(b);
  BasicMatrix<F> g = a.basis();
  for (std::size_t i = 0; i < b.dim(); ++i) g.append_row(b.basis().row(i));
  return BasicSubspace<F>::span(a.ambient_dim(), g, std::max(a.ambient_dim(), kDefaultAmbientCap));
}

/// Annihilator in the dual space, using the standard pairing sum_i a_i x_i.
template <ExactField F>
BasicSubspace<F> annihilator(const BasicSubspace<F>& w) {
  const std::size_t n = w.ambient_dim();
  if (w.dim() == 0) return BasicSubspace<F>::full(n);
  return BasicSubspace<F>::span(n, nullspace(w.basis()), std::max(n, kDefaultAmbientCap));
}

template <ExactField F>
BasicSubspace<F> subspace_intersect(const BasicSubspace<F>& a, const BasicSubspace<F>& b) {
  a.check_same_ambient(b);
  return annihilator(subspace_sum(annihilator(a), annihilator(b)));
}

/// Surjection q : F^n -> F^(n - dim k) with kernel exactly k. Its rows are the
/// canonical basis of the annihilator of k.
template <ExactField F>
std::pair<BasicMatrix<F>, std::size_t> quotient_map(std::size_t v_dim, const BasicSubspace<F>& k) {
  if (k.ambient_dim() != v_dim) throw Error(ErrorCode::DimensionMismatch, "quotient_map: kernel ambient mismatch");
  auto ann = annihilator(k);
  return {ann.basis(), ann.dim()};
}

/// m(U) for a linear map m : F^cols -> F^rows.
template <ExactField F>
BasicSubspace<F> image(const BasicMatrix<F>& m, const BasicSubspace<F>& u) {
  if (u.ambient_dim() != m.cols()) throw Error(ErrorCode::DimensionMismatch, "image: domain mismatch");
  BasicMatrix<F> g(0, m.rows());
  for (std::size_t i = 0; i < u.dim(); ++i) g.append_row(m.apply(u.basis().row(i)));
  return BasicSubspace<F>::span(m.rows(), g, std::max(m.rows(), kDefaultAmbientCap));
}

/// {x : m x in U}.
template <ExactField F>
BasicSubspace<F> preimage(const BasicMatrix<F>& m, const BasicSubspace<F>& u) {
  if (u.ambient_dim() != m.rows()) throw Error(ErrorCode::DimensionMismatch, "preimage: codomain mismatch");
  auto [q, qdim] = quotient_map(m.rows(), u);
  if (qdim == 0) return BasicSubspace<F>::full(m.cols());
  return BasicSubspace<F>::span(m.cols(), nullspace(q * m), std::max(m.cols(), kDefaultAmbientCap));
}

/// Kernel of m as a subspace of F^cols.
template <ExactField F>
BasicSubspace<F> kernel_of(const BasicMatrix<F>& m) {
  if (m.rows() == 0) return BasicSubspace<F>::full(m.cols());
  return BasicSubspace<F>::span(m.cols(), nullspace(m), std::max(m.cols(), kDefaultAmbientCap));
}

/// Column space of m as a subspace of F^rows.
template <ExactField F>
BasicSubspace<F> column_space(const BasicMatrix<F>& m) {
  return BasicSubspace<F>::span(m.rows(), m.transpose(), std::max(m.rows(), kDefaultAmbientCap));
}

}  // namespace poissonkit::exactlin
