#pragma once

#include <complex>
#include <map>
#include <vector>

#include "poissonkit/nctorus/param.hpp"

namespace poissonkit::nctorus {

using LatticePoint = std::vector<long>;
using Complex = std::complex<double>;

/// A finitely supported function Z^n -> C.
class TorusElement {
 public:
  explicit TorusElement(std::size_t n = 0) : n_(n) {}

  static TorusElement delta(const LatticePoint& m, Complex c = 1.0);
  static TorusElement unit(std::size_t n) { return delta(LatticePoint(n, 0)); }
  /// u_j = delta at the j-th basis vector (0-based).
  static TorusElement generator(std::size_t n, std::size_t j);

  std::size_t n() const { return n_; }
  const std::map<LatticePoint, Complex>& coeffs() const { return coeffs_; }
  Complex at(const LatticePoint& m) const;
  void add(const LatticePoint& m, Complex c);
  /// f-bar(m) = conj(f(-m)).
  TorusElement adjoint() const;
  /// Largest |f(m) - g(m)|.
  double distance(const TorusElement& other) const;

  friend TorusElement operator+(const TorusElement& f, const TorusElement& g);
  friend TorusElement operator-(const TorusElement& f, const TorusElement& g);
  friend TorusElement operator*(Complex s, const TorusElement& f);

 private:
  void check_point(const LatticePoint& m) const;

  std::size_t n_;
  std::map<LatticePoint, Complex> coeffs_;
};

/// (f * g)(m) = sum_k f(k) g(m - k) exp(i pi hbar k^T pi (m - k)).
TorusElement twisted_product(const TorusElement& f, const TorusElement& g, const SkewParam& pi, double hbar);

struct RelationReport {
  bool passed = false;
  /// Largest deviation over all commutation and unitarity relations.
  double max_deviation = 0;
  std::size_t worst_j = 0, worst_k = 0;
};

/// u_j * u_k = exp(2 pi i pi_jk) u_k * u_j and u_j * u_j-bar = u_j-bar * u_j = 1 at hbar = 1.
RelationReport generator_relation_check(const SkewParam& pi, double tol);

}  // namespace poissonkit::nctorus
