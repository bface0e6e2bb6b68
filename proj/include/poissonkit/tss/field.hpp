#pragma once

#include <array>
#include <complex>
#include <functional>
#include <map>
#include <utility>

#include "poissonkit/multivec/poly.hpp"

namespace poissonkit::tss {

using Vec2 = std::array<double, 2>;
/// Row-major (f_xx, f_xy, f_yx, f_yy).
using Hess2 = std::array<double, 4>;

/// A smooth real function on a rectangle, possibly periodic in both directions.
struct Field2D {
  std::function<double(double, double)> value;
  std::function<Vec2(double, double)> gradient;
  std::function<Hess2(double, double)> hessian;
  /// Upper bound for |second derivatives|, used to rule out zeros near a node.
  double hessian_bound = 0;
  /// Domain [x0, x1) x [y0, y1).
  double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  bool periodic = true;
};

/// f(x, y) = sum_k c_k exp(2 pi i (k1 x + k2 y)) with c_{-k} = conj(c_k).
class TorusFunction {
 public:
  using Mode = std::pair<long, long>;

  TorusFunction() = default;
  /// Throws Error(InvalidStructure) when the coefficients are not conjugate
  /// symmetric to 1e-12.
  explicit TorusFunction(std::map<Mode, std::complex<double>> coeffs);

  static TorusFunction constant(double c);
  /// a sin(2 pi (k1 x + k2 y)) and a cos(2 pi (k1 x + k2 y)).
  static TorusFunction sine(long k1, long k2, double a = 1);
  static TorusFunction cosine(long k1, long k2, double a = 1);

  const std::map<Mode, std::complex<double>>& coeffs() const { return coeffs_; }

  double operator()(double x, double y) const;
  Vec2 gradient(double x, double y) const;
  Hess2 hessian(double x, double y) const;
  /// The field view used by the tracer, on the unit torus.
  Field2D field() const;

  friend TorusFunction operator+(const TorusFunction& f, const TorusFunction& g);
  friend TorusFunction operator*(double s, const TorusFunction& f);
  /// f(x + dx, y + dy).
  TorusFunction translated(double dx, double dy) const;

 private:
  std::map<Mode, std::complex<double>> coeffs_;
};

/// A polynomial in two variables on the chart [x0, x1) x [y0, y1).
Field2D plane_field(const multivec::Poly& p, double x0, double x1, double y0, double y1);

}  // namespace poissonkit::tss
