#include "poissonkit/tss/field.hpp"

#include <cmath>
#include <numbers>

#include "poissonkit/error.hpp"

namespace poissonkit::tss {

namespace {
constexpr double kTwoPi = 2 * std::numbers::pi;
}

TorusFunction::TorusFunction(std::map<Mode, std::complex<double>> coeffs) : coeffs_(std::move(coeffs)) {
  for (auto it = coeffs_.begin(); it != coeffs_.end();) {
    if (it->second == std::complex<double>{}) it = coeffs_.erase(it);
    else ++it;
  }
  for (const auto& [k, c] : coeffs_) {
    auto it = coeffs_.find({-k.first, -k.second});
    const std::complex<double> partner = it == coeffs_.end() ? std::complex<double>{} : it->second;
    if (std::abs(partner - std::conj(c)) > 1e-12 * std::max(1.0, std::abs(c)))
      throw Error(ErrorCode::InvalidStructure, "Fourier coefficients are not conjugate symmetric at (" +
                                                   std::to_string(k.first) + ", " + std::to_string(k.second) + ")");
  }
}

TorusFunction TorusFunction::constant(double c) { return TorusFunction({{{0, 0}, c}}); }

TorusFunction TorusFunction::sine(long k1, long k2, double a) {
  if (k1 == 0 && k2 == 0) return TorusFunction();
  return TorusFunction({{{k1, k2}, {0, -a / 2}}, {{-k1, -k2}, {0, a / 2}}});
}

TorusFunction TorusFunction::cosine(long k1, long k2, double a) {
  if (k1 == 0 && k2 == 0) return constant(a);
  return TorusFunction({{{k1, k2}, a / 2}, {{-k1, -k2}, a / 2}});
}

double TorusFunction::operator()(double x, double y) const {
  double s = 0;
  for (const auto& [k, c] : coeffs_) {
    const double ph = kTwoPi * (static_cast<double>(k.first) * x + static_cast<double>(k.second) * y);
    s += c.real() * std::cos(ph) - c.imag() * std::sin(ph);
  }
  return s;
}

Vec2 TorusFunction::gradient(double x, double y) const {
  Vec2 g{0, 0};
  for (const auto& [k, c] : coeffs_) {
    const double ph = kTwoPi * (static_cast<double>(k.first) * x + static_cast<double>(k.second) * y);
    // d/d(ph) of Re(c e^{i ph}).
    const double dph = -c.real() * std::sin(ph) - c.imag() * std::cos(ph);
    g[0] += kTwoPi * static_cast<double>(k.first) * dph;
    g[1] += kTwoPi * static_cast<double>(k.second) * dph;
  }
  return g;
}

Hess2 TorusFunction::hessian(double x, double y) const {
  Hess2 h{0, 0, 0, 0};
  for (const auto& [k, c] : coeffs_) {
    const double ph = kTwoPi * (static_cast<double>(k.first) * x + static_cast<double>(k.second) * y);
    const double d2 = -(c.real() * std::cos(ph) - c.imag() * std::sin(ph));
    const double a = kTwoPi * static_cast<double>(k.first), b = kTwoPi * static_cast<double>(k.second);
    h[0] += a * a * d2;
    h[1] += a * b * d2;
    h[3] += b * b * d2;
  }
  h[2] = h[1];
  return h;
}

Field2D TorusFunction::field() const {
  Field2D f;
  f.value = [self = *this](double x, double y) { return self(x, y); };
  f.gradient = [self = *this](double x, double y) { return self.gradient(x, y); };
  f.hessian = [self = *this](double x, double y) { return self.hessian(x, y); };
  for (const auto& [k, c] : coeffs_) {
    const double kk = kTwoPi * kTwoPi * static_cast<double>(k.first * k.first + k.second * k.second);
    f.hessian_bound += std::abs(c) * kk;
  }
  return f;
}

TorusFunction operator+(const TorusFunction& f, const TorusFunction& g) {
  auto c = f.coeffs_;
  for (const auto& [k, v] : g.coeffs_) c[k] += v;
  return TorusFunction(std::move(c));
}

TorusFunction operator*(double s, const TorusFunction& f) {
  auto c = f.coeffs_;
  for (auto& [k, v] : c) v *= s;
  return TorusFunction(std::move(c));
}

TorusFunction TorusFunction::translated(double dx, double dy) const {
  auto c = coeffs_;
  for (auto& [k, v] : c)
    v *= std::polar(1.0, kTwoPi * (static_cast<double>(k.first) * dx + static_cast<double>(k.second) * dy));
  return TorusFunction(std::move(c));
}

Field2D plane_field(const multivec::Poly& p, double x0, double x1, double y0, double y1) {
  if (p.n_vars() != 2) throw Error(ErrorCode::DimensionMismatch, "plane chart needs a polynomial in x1, x2");
  if (!(x1 > x0) || !(y1 > y0)) throw Error(ErrorCode::Config, "empty plane chart");
  const multivec::Poly px = p.derivative(0), py = p.derivative(1);
  const multivec::Poly pxx = px.derivative(0), pxy = px.derivative(1), pyy = py.derivative(1);
  Field2D f;
  f.value = [p](double x, double y) {
    const double v[2] = {x, y};
    return p.evaluate(std::span<const double>(v));
  };
  f.gradient = [px, py](double x, double y) {
    const double v[2] = {x, y};
    return Vec2{px.evaluate(std::span<const double>(v)), py.evaluate(std::span<const double>(v))};
  };
  f.hessian = [pxx, pxy, pyy](double x, double y) {
    const double v[2] = {x, y};
    const double a = pxx.evaluate(std::span<const double>(v)), b = pxy.evaluate(std::span<const double>(v));
    return Hess2{a, b, b, pyy.evaluate(std::span<const double>(v))};
  };
  const double mx = std::max(std::abs(x0), std::abs(x1)), my = std::max(std::abs(y0), std::abs(y1));
  for (const auto* q : {&pxx, &pxy, &pyy}) {
    double bound = 0;
    for (const auto& [e, c] : q->terms())
      bound += std::abs(c.to_double()) * std::pow(mx, e[0]) * std::pow(my, e[1]);
    f.hessian_bound = std::max(f.hessian_bound, bound);
  }
  f.x0 = x0;
  f.x1 = x1;
  f.y0 = y0;
  f.y1 = y1;
  f.periodic = false;
  return f;
}

}  // namespace poissonkit::tss
