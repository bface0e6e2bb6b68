#pragma once

#include <string>

#include "poissonkit/exactlin/scalar.hpp"

namespace poissonkit::exactlin {

/// Element re + i*im of Q(i).
class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(int re) : re_(re) {}  // NOLINT(google-explicit-constructor)
  GaussianRational(Scalar re, Scalar im = Scalar(0)) : re_(std::move(re)), im_(std::move(im)) {}  // NOLINT

  static GaussianRational i() { return {Scalar(0), Scalar(1)}; }

  const Scalar& real() const { return re_; }
  const Scalar& imag() const { return im_; }
  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
  bool is_real() const { return im_.is_zero(); }
  GaussianRational conj() const { return {re_, -im_}; }
  std::string to_string() const;

  friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
    return {a.re_ + b.re_, a.im_ + b.im_};
  }
  friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
    return {a.re_ - b.re_, a.im_ - b.im_};
  }
  friend GaussianRational operator-(const GaussianRational& a) { return {-a.re_, -a.im_}; }
  friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
    return {a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_};
  }
  friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
    const Scalar norm = b.re_ * b.re_ + b.im_ * b.im_;
    const GaussianRational num = a * b.conj();
    return {num.re_ / norm, num.im_ / norm};
  }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

 private:
  Scalar re_;
  Scalar im_;
};

}  // namespace poissonkit::exactlin
