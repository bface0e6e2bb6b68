#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

#include "poissonkit/exactlin/scalar.hpp"

namespace poissonkit::nctorus {

using exactlin::Scalar;

/// a + b*sqrt(d) with a, b rational and d > 1 square-free. Rationals have
/// b = 0 and d = 0. Arithmetic between two different radicals is rejected.
class QuadraticScalar {
 public:
  QuadraticScalar() = default;
  QuadraticScalar(int a) : a_(a) {}  // NOLINT(google-explicit-constructor)
  QuadraticScalar(Scalar a) : a_(std::move(a)) {}  // NOLINT(google-explicit-constructor)
  /// Normalizes d to its square-free part (sqrt(8) = 2 sqrt(2)); throws
  /// Error(DomainRejection) for d < 0.
  QuadraticScalar(Scalar a, Scalar b, long d);

  /// "1/3", "sqrt2", "-1+sqrt2", "3/2*sqrt5", "(p+q*sqrtD)/r".
  static QuadraticScalar parse(std::string_view text);

  const Scalar& rational_part() const { return a_; }
  const Scalar& radical_coefficient() const { return b_; }
  long radicand() const { return d_; }
  bool is_rational() const { return b_.is_zero(); }
  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
  int sign() const;
  /// Largest integer not above the value.
  mpz_class floor() const;
  double to_double() const;
  QuadraticScalar conjugate() const { return make(a_, -b_, d_); }
  std::string to_string() const;

  friend QuadraticScalar operator+(const QuadraticScalar& x, const QuadraticScalar& y);
  friend QuadraticScalar operator-(const QuadraticScalar& x, const QuadraticScalar& y);
  friend QuadraticScalar operator-(const QuadraticScalar& x) { return make(-x.a_, -x.b_, x.d_); }
  friend QuadraticScalar operator*(const QuadraticScalar& x, const QuadraticScalar& y);
  friend QuadraticScalar operator/(const QuadraticScalar& x, const QuadraticScalar& y);
  friend bool operator==(const QuadraticScalar& x, const QuadraticScalar& y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && x.d_ == y.d_;
  }
  friend bool operator<(const QuadraticScalar& x, const QuadraticScalar& y) { return (x - y).sign() < 0; }

 private:
  static QuadraticScalar make(Scalar a, Scalar b, long d);
  static long common_radicand(const QuadraticScalar& x, const QuadraticScalar& y);

  Scalar a_;
  Scalar b_;
  long d_ = 0;
};

/// Continued fraction of a real quadratic irrational: the preperiod and the
/// minimal period of its partial quotients.
struct PeriodicExpansion {
  std::vector<mpz_class> preperiod;
  std::vector<mpz_class> period;
};

/// Throws Error(DomainRejection) for rational input.
PeriodicExpansion continued_fraction(const QuadraticScalar& x);
/// Finite continued fraction of a rational.
std::vector<mpz_class> continued_fraction(const Scalar& x);

}  // namespace poissonkit::nctorus
