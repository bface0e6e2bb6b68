#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "poissonkit/exactlin/scalar.hpp"

namespace poissonkit::multivec {

using exactlin::Scalar;

/// Multivariate polynomial with rational coefficients in n variables. Terms are
/// kept in a map keyed by exponent vector, so the representation is canonical.
class Poly {
 public:
  using Exponent = std::vector<unsigned>;

  Poly() = default;
  explicit Poly(std::size_t n_vars) : n_(n_vars) {}

  static Poly constant(std::size_t n_vars, const Scalar& c);
  /// x_i, 0-based.
  static Poly variable(std::size_t n_vars, std::size_t i);
  static Poly monomial(Exponent e, const Scalar& c);
  /// Sum of terms like "3/2*x1^2*x3 - x2 + 7", variables 1-based.
  static Poly parse(std::size_t n_vars, std::string_view text);

  std::size_t n_vars() const { return n_; }
  const std::map<Exponent, Scalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Total degree, -1 for the zero polynomial.
  int degree() const;

  void add_term(const Exponent& e, const Scalar& c);
  Poly derivative(std::size_t i) const;
  Scalar evaluate(std::span<const Scalar> x) const;
  double evaluate(std::span<const double> x) const;
  std::string to_string() const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator-(Poly a) {
    for (auto& [e, c] : a.terms_) c = -c;
    return a;
  }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(const Scalar& s, Poly a);

  friend bool operator==(const Poly&, const Poly&) = default;

 private:
  void check_vars(const Poly& o) const;

  std::size_t n_ = 0;
  std::map<Exponent, Scalar> terms_;
};

}  // namespace poissonkit::multivec
