#include "poissonkit/exactlin/scalar.hpp"

#include <cctype>

#include "poissonkit/error.hpp"
#include "poissonkit/exactlin/gaussian.hpp"

namespace poissonkit::exactlin {

namespace {

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

mpz_class parse_integer(std::string_view s) {
  if (!s.empty() && s[0] == '+') s.remove_prefix(1);
  return mpz_class(std::string(s), 10);
}

}  // namespace

Scalar::Scalar(long num, long den) {
  if (den == 0) throw Error(ErrorCode::Parse, "zero denominator");
  value_ = mpq_class(num, den);
  value_.canonicalize();
}

Scalar::Scalar(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw Error(ErrorCode::Parse, "zero denominator");
  value_ = mpq_class(num, den);
  value_.canonicalize();
}

Scalar Scalar::parse(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    if (!is_integer_literal(text)) throw Error(ErrorCode::Parse, "not a rational literal: '" + std::string(text) + "'");
    return Scalar(parse_integer(text), mpz_class(1));
  }
  auto num = text.substr(0, slash);
  auto den = text.substr(slash + 1);
  if (!is_integer_literal(num) || !is_integer_literal(den) || den[0] == '-')
    throw Error(ErrorCode::Parse, "not a rational literal: '" + std::string(text) + "'");
  mpz_class d = parse_integer(den);
  if (d == 0) throw Error(ErrorCode::Parse, "zero denominator in '" + std::string(text) + "'");
  return Scalar(parse_integer(num), d);
}

std::string Scalar::to_string() const {
  if (value_.get_den() == 1) return value_.get_num().get_str();
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw Error(ErrorCode::InvalidStructure, "division by zero");
  return Scalar(mpq_class(1 / value_));
}

Scalar& Scalar::operator/=(const Scalar& o) {
  if (o.is_zero()) throw Error(ErrorCode::InvalidStructure, "division by zero");
  value_ /= o.value_;
  return *this;
}

mpz_class Scalar::floor() const {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
  return q;
}

std::string GaussianRational::to_string() const {
  if (im_.is_zero()) return re_.to_string();
  if (re_.is_zero()) return im_.to_string() + "i";
  return re_.to_string() + (im_.sign() < 0 ? "" : "+") + im_.to_string() + "i";
}

}  // namespace poissonkit::exactlin
