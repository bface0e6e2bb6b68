#pragma once

#include <string>
#include <vector>

#include "poissonkit/exactlin/matrix.hpp"
#include "poissonkit/nctorus/quadratic.hpp"

namespace poissonkit::nctorus {

using QMatrix = exactlin::BasicMatrix<QuadraticScalar>;

/// The skew deformation matrix. Either exact over one field Q(sqrt d), or a
/// floating matrix carrying its own comparison tolerance.
class SkewParam {
 public:
  /// Throws Error(NotSkew) unless exactly skew, Error(DomainRejection) if the
  /// entries live in different quadratic fields.
  static SkewParam exact(QMatrix pi);
  /// Throws Error(NotSkew) unless skew within `tol`.
  static SkewParam approx(std::size_t n, std::vector<double> row_major, double tol);
  /// n = 2 with pi_12 = theta.
  static SkewParam theta(const QuadraticScalar& theta);

  std::size_t n() const { return n_; }
  bool is_exact() const { return exact_; }
  double tolerance() const { return tol_; }
  /// Valid only when is_exact().
  const QMatrix& matrix() const { return q_; }
  double entry(std::size_t i, std::size_t j) const;
  std::vector<double> to_doubles() const;

  /// Exact: the canonical text of the upper triangle. Floating: the entries
  /// rounded to tol/10.
  std::string key() const;
  /// Exact equality, or max entry distance below the tolerance.
  bool matches(const SkewParam& other) const;

 private:
  std::size_t n_ = 0;
  bool exact_ = true;
  QMatrix q_;
  std::vector<double> f_;
  double tol_ = 0;
};

/// Throws Error(DomainRejection) when one is exact and the other floating.
void require_same_kind(const SkewParam& a, const SkewParam& b);

}  // namespace poissonkit::nctorus
