#include "poissonkit/nctorus/quadratic.hpp"

#include <cctype>
#include <cmath>
#include <map>
#include <sstream>

#include "poissonkit/error.hpp"

namespace poissonkit::nctorus {

QuadraticScalar::QuadraticScalar(Scalar a, Scalar b, long d) {
  if (d < 0) throw Error(ErrorCode::DomainRejection, "negative radicand: only real quadratic fields are supported");
  // Pull square factors out of d.
  long core = d, out = 1;
  for (long p = 2; p * p <= core; ++p)
    while (core % (p * p) == 0) {
      core /= p * p;
      out *= p;
    }
  if (core == 1 || core == 0) {
    *this = make(a + b * Scalar(core == 1 ? out : 0), Scalar(0), 0);
    return;
  }
  *this = make(std::move(a), b * Scalar(out), core);
}

QuadraticScalar QuadraticScalar::make(Scalar a, Scalar b, long d) {
  QuadraticScalar q;
  q.a_ = std::move(a);
  q.b_ = std::move(b);
  q.d_ = q.b_.is_zero() ? 0 : d;
  return q;
}

long QuadraticScalar::common_radicand(const QuadraticScalar& x, const QuadraticScalar& y) {
  if (x.d_ != 0 && y.d_ != 0 && x.d_ != y.d_)
    throw Error(ErrorCode::DomainRejection,
                "values from different quadratic fields Q(sqrt" + std::to_string(x.d_) + ") and Q(sqrt" +
                    std::to_string(y.d_) + ")");
  return x.d_ != 0 ? x.d_ : y.d_;
}

QuadraticScalar operator+(const QuadraticScalar& x, const QuadraticScalar& y) {
  const long d = QuadraticScalar::common_radicand(x, y);
  return QuadraticScalar::make(x.a_ + y.a_, x.b_ + y.b_, d);
}

QuadraticScalar operator-(const QuadraticScalar& x, const QuadraticScalar& y) {
  const long d = QuadraticScalar::common_radicand(x, y);
  return QuadraticScalar::make(x.a_ - y.a_, x.b_ - y.b_, d);
}

QuadraticScalar operator*(const QuadraticScalar& x, const QuadraticScalar& y) {
  const long d = QuadraticScalar::common_radicand(x, y);
  return QuadraticScalar::make(x.a_ * y.a_ + x.b_ * y.b_ * Scalar(d), x.a_ * y.b_ + x.b_ * y.a_, d);
}

QuadraticScalar operator/(const QuadraticScalar& x, const QuadraticScalar& y) {
  const long d = QuadraticScalar::common_radicand(x, y);
  const Scalar norm = y.a_ * y.a_ - y.b_ * y.b_ * Scalar(d);
  if (norm.is_zero()) throw Error(ErrorCode::DomainRejection, "division by zero");
  const QuadraticScalar num = x * y.conjugate();
  return QuadraticScalar::make(num.a_ / norm, num.b_ / norm, d);
}

int QuadraticScalar::sign() const {
  const int sa = a_.sign(), sb = b_.sign();
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  // Opposite signs: compare a^2 with b^2 d (never equal, d is not a square).
  return a_ * a_ > b_ * b_ * Scalar(d_) ? sa : sb;
}

mpz_class QuadraticScalar::floor() const {
  if (is_rational()) return a_.floor();
  mpz_class k;
  const double approx = to_double();
  k = std::isfinite(approx) ? mpz_class(std::floor(approx)) : a_.floor();
  auto minus = [&](const mpz_class& m) { return *this - QuadraticScalar(Scalar(m, mpz_class(1))); };
  while (minus(k).sign() < 0) --k;
  while (minus(k + 1).sign() >= 0) ++k;
  return k;
}

double QuadraticScalar::to_double() const {
  return a_.to_double() + b_.to_double() * std::sqrt(static_cast<double>(d_));
}

std::string QuadraticScalar::to_string() const {
  if (is_rational()) return a_.to_string();
  std::ostringstream os;
  if (!a_.is_zero()) os << a_.to_string() << (b_.sign() > 0 ? "+" : "-");
  else if (b_.sign() < 0) os << "-";
  const Scalar mag = b_.abs();
  if (!(mag == Scalar(1))) os << mag.to_string() << "*";
  os << "sqrt" << d_;
  return os.str();
}

namespace {

class QuadraticParser {
 public:
  explicit QuadraticParser(std::string_view text) : text_(text) {}

  QuadraticScalar run() {
    auto v = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return v;
  }

 private:
  QuadraticScalar expr() {
    QuadraticScalar v = term();
    while (true) {
      skip_ws();
      if (peek() == '+') {
        ++pos_;
        v = v + term();
      } else if (peek() == '-') {
        ++pos_;
        v = v - term();
      } else {
        return v;
      }
    }
  }

  QuadraticScalar term() {
    QuadraticScalar v = factor();
    while (true) {
      skip_ws();
      if (peek() == '*') {
        ++pos_;
        v = v * factor();
      } else if (peek() == '/') {
        ++pos_;
        QuadraticScalar den = factor();
        if (den.is_zero()) fail("division by zero");
        v = v / den;
      } else {
        return v;
      }
    }
  }

  QuadraticScalar factor() {
    skip_ws();
    if (peek() == '-') {
      ++pos_;
      return -factor();
    }
    if (peek() == '+') {
      ++pos_;
      return factor();
    }
    if (peek() == '(') {
      ++pos_;
      auto v = expr();
      skip_ws();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return v;
    }
    if (text_.substr(pos_, 4) == "sqrt") {
      pos_ += 4;
      skip_ws();
      bool paren = peek() == '(';
      if (paren) ++pos_;
      mpz_class d = integer();
      if (paren) {
        skip_ws();
        if (peek() != ')') fail("expected ')'");
        ++pos_;
      }
      if (!d.fits_slong_p() || d > 1000000000) fail("radicand too large");
      return QuadraticScalar(Scalar(0), Scalar(1), d.get_si());
    }
    if (std::isdigit(static_cast<unsigned char>(peek()))) return QuadraticScalar(Scalar(integer(), mpz_class(1)));
    fail("expected a number, sqrtD or '('");
  }

  mpz_class integer() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected digits");
    return mpz_class(std::string(text_.substr(start, pos_ - start)));
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& why) const {
    throw Error(ErrorCode::Parse, "quadratic scalar '" + std::string(text_) + "' at offset " + std::to_string(pos_) + ": " + why);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

QuadraticScalar QuadraticScalar::parse(std::string_view text) { return QuadraticParser(text).run(); }

std::vector<mpz_class> continued_fraction(const Scalar& x) {
  std::vector<mpz_class> out;
  mpz_class p = x.numerator(), q = x.denominator();
  while (q != 0) {
    mpz_class a;
    mpz_fdiv_q(a.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
    out.push_back(a);
    mpz_class r = p - a * q;
    p = q;
    q = r;
  }
  return out;
}

PeriodicExpansion continued_fraction(const QuadraticScalar& x) {
  if (x.is_rational()) throw Error(ErrorCode::DomainRejection, "continued_fraction: value is rational");
  // Write x = (P + sqrt(D)) / Q with integers and Q | D - P^2.
  const Scalar& a = x.rational_part();
  const Scalar& b = x.radical_coefficient();
  mpz_class r = lcm(a.denominator(), b.denominator());
  mpz_class p = a.numerator() * (r / a.denominator());
  mpz_class q = b.numerator() * (r / b.denominator());
  mpz_class P = p, Q = r, D = q * q * x.radicand();
  if (q < 0) {
    P = -p;
    Q = -r;
  }
  mpz_class rem = D - P * P;
  if (rem % Q != 0) {
    mpz_class absq = abs(Q);
    P *= absq;
    D *= Q * Q;
    Q *= absq;
  }
  const mpz_class s = sqrt(D);  // floor of sqrt(D)

  PeriodicExpansion out;
  std::vector<mpz_class> quotients;
  std::map<std::pair<mpz_class, mpz_class>, std::size_t> seen;
  while (true) {
    auto key = std::make_pair(P, Q);
    if (auto it = seen.find(key); it != seen.end()) {
      out.preperiod.assign(quotients.begin(), quotients.begin() + static_cast<long>(it->second));
      out.period.assign(quotients.begin() + static_cast<long>(it->second), quotients.end());
      break;
    }
    seen.emplace(key, quotients.size());
    mpz_class aq;
    if (Q > 0) {
      mpz_class num = P + s;
      mpz_fdiv_q(aq.get_mpz_t(), num.get_mpz_t(), Q.get_mpz_t());
    } else {
      mpz_class num = P + s, den = -Q, t;
      mpz_fdiv_q(t.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
      aq = -(t + 1);
    }
    quotients.push_back(aq);
    P = aq * Q - P;
    Q = (D - P * P) / Q;
  }
  return out;
}

}  // namespace poissonkit::nctorus
