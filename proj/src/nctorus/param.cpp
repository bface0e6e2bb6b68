#include "poissonkit/nctorus/param.hpp"

#include <cmath>
#include <sstream>

namespace poissonkit::nctorus {

SkewParam SkewParam::exact(QMatrix pi) {
  if (!pi.is_square()) throw Error(ErrorCode::DimensionMismatch, "deformation matrix must be square");
  long d = 0;
  for (const auto& x : pi.data()) {
    if (x.radicand() == 0) continue;
    if (d != 0 && d != x.radicand())
      throw Error(ErrorCode::DomainRejection, "entries lie in different quadratic fields");
    d = x.radicand();
  }
  if (!pi.is_skew()) throw Error(ErrorCode::NotSkew, "deformation matrix is not skew-symmetric");
  SkewParam p;
  p.n_ = pi.rows();
  p.exact_ = true;
  p.q_ = std::move(pi);
  return p;
}

SkewParam SkewParam::approx(std::size_t n, std::vector<double> row_major, double tol) {
  if (row_major.size() != n * n) throw Error(ErrorCode::DimensionMismatch, "deformation matrix has wrong size");
  if (!(tol > 0)) throw Error(ErrorCode::Config, "floating deformation matrix needs a positive tolerance");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      if (!std::isfinite(row_major[i * n + j]) || std::abs(row_major[i * n + j] + row_major[j * n + i]) > tol)
        throw Error(ErrorCode::NotSkew, "deformation matrix is not skew-symmetric within tolerance");
  SkewParam p;
  p.n_ = n;
  p.exact_ = false;
  p.f_ = std::move(row_major);
  p.tol_ = tol;
  return p;
}

SkewParam SkewParam::theta(const QuadraticScalar& theta) {
  QMatrix m(2, 2);
  m(0, 1) = theta;
  m(1, 0) = -theta;
  return exact(std::move(m));
}

double SkewParam::entry(std::size_t i, std::size_t j) const {
  return exact_ ? q_(i, j).to_double() : f_[i * n_ + j];
}

std::vector<double> SkewParam::to_doubles() const {
  if (!exact_) return f_;
  std::vector<double> out;
  out.reserve(n_ * n_);
  for (const auto& x : q_.data()) out.push_back(x.to_double());
  return out;
}

std::string SkewParam::key() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j) {
      if (exact_) os << q_(i, j).to_string() << ';';
      else os << std::llround(f_[i * n_ + j] / (tol_ / 10)) << ';';
    }
  return os.str();
}

bool SkewParam::matches(const SkewParam& other) const {
  require_same_kind(*this, other);
  if (n_ != other.n_) return false;
  if (exact_) return q_ == other.q_;
  const double tol = std::max(tol_, other.tol_);
  for (std::size_t k = 0; k < f_.size(); ++k)
    if (std::abs(f_[k] - other.f_[k]) > tol) return false;
  return true;
}

void require_same_kind(const SkewParam& a, const SkewParam& b) {
  if (a.is_exact() != b.is_exact())
    throw Error(ErrorCode::DomainRejection, "cannot mix exact and floating deformation parameters");
}

}  // namespace poissonkit::nctorus
