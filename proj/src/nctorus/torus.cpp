#include "poissonkit/nctorus/torus.hpp"

#include <cmath>
#include <numbers>

namespace poissonkit::nctorus {

TorusElement TorusElement::delta(const LatticePoint& m, Complex c) {
  TorusElement f(m.size());
  f.add(m, c);
  return f;
}

TorusElement TorusElement::generator(std::size_t n, std::size_t j) {
  if (j >= n) throw Error(ErrorCode::DimensionMismatch, "generator index out of range");
  LatticePoint e(n, 0);
  e[j] = 1;
  return delta(e);
}

void TorusElement::check_point(const LatticePoint& m) const {
  if (m.size() != n_) throw Error(ErrorCode::DimensionMismatch, "lattice point has wrong rank");
}

Complex TorusElement::at(const LatticePoint& m) const {
  check_point(m);
  auto it = coeffs_.find(m);
  return it == coeffs_.end() ? Complex{} : it->second;
}

void TorusElement::add(const LatticePoint& m, Complex c) {
  check_point(m);
  auto [it, inserted] = coeffs_.try_emplace(m, c);
  if (!inserted) it->second += c;
  if (it->second == Complex{}) coeffs_.erase(it);
}

TorusElement TorusElement::adjoint() const {
  TorusElement out(n_);
  for (const auto& [m, c] : coeffs_) {
    LatticePoint neg(m);
    for (auto& x : neg) x = -x;
    out.add(neg, std::conj(c));
  }
  return out;
}

double TorusElement::distance(const TorusElement& other) const {
  double worst = 0;
  for (const auto& [m, c] : (*this - other).coeffs_) worst = std::max(worst, std::abs(c));
  return worst;
}

TorusElement operator+(const TorusElement& f, const TorusElement& g) {
  if (f.n_ != g.n_) throw Error(ErrorCode::DimensionMismatch, "torus elements of different rank");
  TorusElement out = f;
  for (const auto& [m, c] : g.coeffs_) out.add(m, c);
  return out;
}

TorusElement operator-(const TorusElement& f, const TorusElement& g) { return f + Complex(-1) * g; }

TorusElement operator*(Complex s, const TorusElement& f) {
  TorusElement out(f.n_);
  for (const auto& [m, c] : f.coeffs_) out.add(m, s * c);
  return out;
}

TorusElement twisted_product(const TorusElement& f, const TorusElement& g, const SkewParam& pi, double hbar) {
  const std::size_t n = f.n();
  if (g.n() != n || pi.n() != n) throw Error(ErrorCode::DimensionMismatch, "twisted_product: rank mismatch");
  const std::vector<double> p = pi.to_doubles();
  TorusElement out(n);
  LatticePoint sum(n);
  for (const auto& [k, a] : f.coeffs()) {
    for (const auto& [l, b] : g.coeffs()) {
      double form = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (k[i] == 0) continue;
        for (std::size_t j = 0; j < n; ++j) form += static_cast<double>(k[i]) * p[i * n + j] * static_cast<double>(l[j]);
      }
      for (std::size_t i = 0; i < n; ++i) sum[i] = k[i] + l[i];
      out.add(sum, a * b * std::polar(1.0, std::numbers::pi * hbar * form));
    }
  }
  return out;
}

RelationReport generator_relation_check(const SkewParam& pi, double tol) {
  const std::size_t n = pi.n();
  RelationReport r;
  auto note = [&r](double dev, std::size_t j, std::size_t k) {
    if (dev > r.max_deviation) {
      r.max_deviation = dev;
      r.worst_j = j;
      r.worst_k = k;
    }
  };
  const TorusElement one = TorusElement::unit(n);
  for (std::size_t j = 0; j < n; ++j) {
    const TorusElement uj = TorusElement::generator(n, j);
    const TorusElement ujbar = uj.adjoint();
    note(twisted_product(uj, ujbar, pi, 1.0).distance(one), j, j);
    note(twisted_product(ujbar, uj, pi, 1.0).distance(one), j, j);
    for (std::size_t k = 0; k < n; ++k) {
      if (k == j) continue;
      const TorusElement uk = TorusElement::generator(n, k);
      const TorusElement lhs = twisted_product(uj, uk, pi, 1.0);
      const TorusElement rhs =
          std::polar(1.0, 2 * std::numbers::pi * pi.entry(j, k)) * twisted_product(uk, uj, pi, 1.0);
      note(lhs.distance(rhs), j, k);
    }
  }
  r.passed = r.max_deviation < tol;
  return r;
}

}  // namespace poissonkit::nctorus
