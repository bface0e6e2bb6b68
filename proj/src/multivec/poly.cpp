#include "poissonkit/multivec/poly.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

#include "poissonkit/error.hpp"

namespace poissonkit::multivec {

Poly Poly::constant(std::size_t n_vars, const Scalar& c) {
  Poly p(n_vars);
  p.add_term(Exponent(n_vars, 0), c);
  return p;
}

Poly Poly::variable(std::size_t n_vars, std::size_t i) {
  if (i >= n_vars) throw Error(ErrorCode::DimensionMismatch, "variable index out of range");
  Exponent e(n_vars, 0);
  e[i] = 1;
  return monomial(std::move(e), Scalar(1));
}

Poly Poly::monomial(Exponent e, const Scalar& c) {
  Poly p(e.size());
  p.add_term(e, c);
  return p;
}

int Poly::degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (auto k : e) s += static_cast<int>(k);
    d = std::max(d, s);
  }
  return d;
}

void Poly::add_term(const Exponent& e, const Scalar& c) {
  if (e.size() != n_) throw Error(ErrorCode::DimensionMismatch, "exponent length differs from variable count");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Poly Poly::derivative(std::size_t i) const {
  if (i >= n_) throw Error(ErrorCode::DimensionMismatch, "derivative index out of range");
  Poly d(n_);
  for (const auto& [e, c] : terms_) {
    if (e[i] == 0) continue;
    Exponent f = e;
    --f[i];
    d.add_term(f, Scalar(static_cast<long>(e[i])) * c);
  }
  return d;
}

Scalar Poly::evaluate(std::span<const Scalar> x) const {
  if (x.size() != n_) throw Error(ErrorCode::DimensionMismatch, "point dimension differs from variable count");
  Scalar s;
  for (const auto& [e, c] : terms_) {
    Scalar t = c;
    for (std::size_t i = 0; i < n_; ++i)
      for (unsigned k = 0; k < e[i]; ++k) t *= x[i];
    s += t;
  }
  return s;
}

double Poly::evaluate(std::span<const double> x) const {
  if (x.size() != n_) throw Error(ErrorCode::DimensionMismatch, "point dimension differs from variable count");
  double s = 0;
  for (const auto& [e, c] : terms_) {
    double t = c.to_double();
    for (std::size_t i = 0; i < n_; ++i) t *= std::pow(x[i], e[i]);
    s += t;
  }
  return s;
}

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // Highest exponent vector first reads more naturally.
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    const bool constant_term = std::all_of(e.begin(), e.end(), [](unsigned k) { return k == 0; });
    Scalar mag = c.abs();
    if (first) {
      if (c.sign() < 0) os << "-";
    } else {
      os << (c.sign() < 0 ? " - " : " + ");
    }
    first = false;
    bool need_star = false;
    if (constant_term || !(mag == Scalar(1))) {
      os << mag.to_string();
      need_star = true;
    }
    for (std::size_t i = 0; i < n_; ++i) {
      if (e[i] == 0) continue;
      if (need_star) os << "*";
      os << "x" << (i + 1);
      if (e[i] > 1) os << "^" << e[i];
      need_star = true;
    }
  }
  return os.str();
}

void Poly::check_vars(const Poly& o) const {
  if (n_ != o.n_) throw Error(ErrorCode::DimensionMismatch, "polynomials in different variable counts");
}

Poly& Poly::operator+=(const Poly& o) {
  check_vars(o);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  check_vars(o);
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  a.check_vars(b);
  Poly p(a.n_);
  Poly::Exponent e(a.n_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < a.n_; ++i) e[i] = ea[i] + eb[i];
      p.add_term(e, ca * cb);
    }
  return p;
}

Poly operator*(const Scalar& s, Poly a) {
  if (s.is_zero()) return Poly(a.n_);
  for (auto& [e, c] : a.terms_) c *= s;
  return a;
}

namespace {

class PolyParser {
 public:
  PolyParser(std::size_t n, std::string_view text) : n_(n), text_(text) {}

  Poly run() {
    Poly p(n_);
    skip_ws();
    if (pos_ == text_.size()) fail("empty polynomial");
    bool first = true;
    while (pos_ < text_.size()) {
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
        skip_ws();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      auto [e, c] = term();
      p.add_term(e, Scalar(sign) * c);
      skip_ws();
    }
    return p;
  }

 private:
  std::pair<Poly::Exponent, Scalar> term() {
    Poly::Exponent e(n_, 0);
    Scalar c(1);
    while (true) {
      skip_ws();
      if (peek() == 'x') {
        ++pos_;
        std::size_t v = number();
        if (v == 0 || v > n_) fail("variable index out of range");
        unsigned power = 1;
        skip_ws();
        if (peek() == '^') {
          ++pos_;
          skip_ws();
          power = static_cast<unsigned>(number());
        }
        e[v - 1] += power;
      } else if (std::isdigit(static_cast<unsigned char>(peek()))) {
        std::size_t start = pos_;
        while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '/'))
          ++pos_;
        try {
          c *= Scalar::parse(text_.substr(start, pos_ - start));
        } catch (const Error& err) {
          fail(err.what());
        }
      } else {
        fail("expected a coefficient or a variable");
      }
      skip_ws();
      if (peek() != '*') break;
      ++pos_;
    }
    return {e, c};
  }

  std::size_t number() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    return std::stoul(std::string(text_.substr(start, pos_ - start)));
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& why) const {
    throw Error(ErrorCode::Parse, "polynomial '" + std::string(text_) + "' at offset " + std::to_string(pos_) + ": " + why);
  }

  std::size_t n_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Poly Poly::parse(std::size_t n_vars, std::string_view text) { return PolyParser(n_vars, text).run(); }

}  // namespace poissonkit::multivec
