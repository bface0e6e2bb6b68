#include "poissonkit/nctorus/json.hpp"

#include "poissonkit/exactlin/json.hpp"

namespace poissonkit::nctorus {

using nlohmann::json;

namespace {

mpz_class integer_field(const json& j, const char* key, const std::string& path, long fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j[key];
  if (v.is_number_integer()) return mpz_class(std::to_string(v.get<long long>()));
  if (v.is_string()) {
    try {
      return mpz_class(v.get<std::string>());
    } catch (const std::invalid_argument&) {
    }
  }
  throw Error(ErrorCode::Schema, std::string("'") + key + "' must be an integer", path + "/" + key);
}

}  // namespace

json to_json(const QuadraticScalar& x) {
  const Scalar& a = x.rational_part();
  const Scalar& b = x.radical_coefficient();
  const mpz_class r = lcm(a.denominator(), b.denominator());
  const mpz_class p = a.numerator() * (r / a.denominator());
  const mpz_class q = b.numerator() * (r / b.denominator());
  return {{"p", p.get_str()}, {"q", q.get_str()}, {"d", x.radicand()}, {"r", r.get_str()}, {"text", x.to_string()}};
}

QuadraticScalar quadratic_from_json(const json& j, const std::string& path) {
  try {
    if (j.is_number_integer()) return QuadraticScalar(Scalar(static_cast<long>(j.get<long long>())));
    if (j.is_string()) return QuadraticScalar::parse(j.get<std::string>());
    if (j.is_object()) {
      const mpz_class p = integer_field(j, "p", path, 0), q = integer_field(j, "q", path, 0);
      const mpz_class d = integer_field(j, "d", path, 0), r = integer_field(j, "r", path, 1);
      if (r == 0) throw Error(ErrorCode::Schema, "'r' must be nonzero", path + "/r");
      if (!d.fits_slong_p()) throw Error(ErrorCode::DomainRejection, "radicand too large", path + "/d");
      if (q != 0 && d == 0) throw Error(ErrorCode::Schema, "'q' given without a radicand 'd'", path + "/d");
      return QuadraticScalar(Scalar(p, r), Scalar(q, r), d.get_si());
    }
  } catch (const Error& e) {
    if (!e.path().empty()) throw;
    throw Error(e.code(), e.what(), path);
  }
  throw Error(ErrorCode::Schema, "expected {p,q,d,r}, a string or an integer", path);
}

json to_json(const SkewParam& p) {
  json rows = json::array();
  for (std::size_t i = 0; i < p.n(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < p.n(); ++j) {
      if (p.is_exact()) row.push_back(p.matrix()(i, j).to_string());
      else row.push_back(p.entry(i, j));
    }
    rows.push_back(std::move(row));
  }
  json out = {{"n", p.n()}, {"pi", std::move(rows)}};
  if (!p.is_exact()) out["tol"] = p.tolerance();
  return out;
}

SkewParam skew_param_from_json(const json& j, const std::string& path) {
  if (!j.is_object()) throw Error(ErrorCode::Schema, "expected an object with 'pi' or 'theta'", path);
  if (j.contains("theta")) {
    const json& t = j["theta"];
    if (t.is_number_float()) {
      const double tol = j.value("tol", 1e-9);
      const double th = t.get<double>();
      return SkewParam::approx(2, {0, th, -th, 0}, tol);
    }
    return SkewParam::theta(quadratic_from_json(t, path + "/theta"));
  }
  if (!j.contains("pi") || !j["pi"].is_array()) throw Error(ErrorCode::Schema, "missing 'pi' array", path);
  const json& rows = j["pi"];
  const std::size_t n = rows.size();
  bool any_float = false;
  for (std::size_t i = 0; i < n; ++i) {
    if (!rows[i].is_array() || rows[i].size() != n)
      throw Error(ErrorCode::Schema, "'pi' must be a square array", path + "/pi/" + std::to_string(i));
    for (const auto& x : rows[i]) any_float = any_float || x.is_number_float();
  }
  if (any_float) {
    if (!j.contains("tol") || !j["tol"].is_number())
      throw Error(ErrorCode::Schema, "floating entries need a numeric 'tol'", path + "/tol");
    std::vector<double> v;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) {
        const json& x = rows[i][k];
        if (!x.is_number())
          throw Error(ErrorCode::DomainRejection, "cannot mix exact and floating entries",
                      path + "/pi/" + std::to_string(i) + "/" + std::to_string(k));
        v.push_back(x.get<double>());
      }
    try {
      return SkewParam::approx(n, std::move(v), j["tol"].get<double>());
    } catch (const Error& e) {
      throw Error(e.code(), e.what(), path + "/pi");
    }
  }
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      m(i, k) = quadratic_from_json(rows[i][k], path + "/pi/" + std::to_string(i) + "/" + std::to_string(k));
  try {
    return SkewParam::exact(std::move(m));
  } catch (const Error& e) {
    throw Error(e.code(), e.what(), path + "/pi");
  }
}

json to_json(const TorusElement& f) {
  json terms = json::array();
  for (const auto& [m, c] : f.coeffs()) terms.push_back({{"m", m}, {"re", c.real()}, {"im", c.imag()}});
  return {{"n", f.n()}, {"terms", std::move(terms)}};
}

TorusElement torus_element_from_json(const json& j, const std::string& path) {
  if (!j.is_object() || !j.contains("n") || !j["n"].is_number_unsigned() || !j.contains("terms") ||
      !j["terms"].is_array())
    throw Error(ErrorCode::Schema, "expected {\"n\": .., \"terms\": [..]}", path);
  const std::size_t n = j["n"].get<std::size_t>();
  TorusElement f(n);
  for (std::size_t k = 0; k < j["terms"].size(); ++k) {
    const json& t = j["terms"][k];
    const std::string at = path + "/terms/" + std::to_string(k);
    if (!t.is_object() || !t.contains("m") || !t["m"].is_array() || t["m"].size() != n)
      throw Error(ErrorCode::Schema, "term needs an 'm' array of length n", at);
    LatticePoint m;
    for (const auto& x : t["m"]) {
      if (!x.is_number_integer()) throw Error(ErrorCode::Schema, "lattice coordinates must be integers", at + "/m");
      m.push_back(x.get<long>());
    }
    const double re = t.value("re", 0.0), im = t.value("im", 0.0);
    f.add(m, {re, im});
  }
  return f;
}

json to_json(const SOnnMatrix& g) {
  json rows = json::array();
  for (std::size_t i = 0; i < g.m.rows(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < g.m.cols(); ++k) row.push_back(exactlin::to_json(g.m(i, k)));
    rows.push_back(std::move(row));
  }
  return {{"n", g.n}, {"matrix", std::move(rows)}};
}

SOnnMatrix sonn_from_json(const json& j, const std::string& path) {
  if (!j.is_object() || !j.contains("matrix") || !j["matrix"].is_array())
    throw Error(ErrorCode::Schema, "expected {\"matrix\": [[..]]}", path);
  const json& rows = j["matrix"];
  const std::size_t size = rows.size();
  if (size % 2 != 0) throw Error(ErrorCode::DimensionMismatch, "SO(n,n) matrix must have even size", path + "/matrix");
  Matrix m(size, size);
  for (std::size_t i = 0; i < size; ++i) {
    if (!rows[i].is_array() || rows[i].size() != size)
      throw Error(ErrorCode::Schema, "matrix must be square", path + "/matrix/" + std::to_string(i));
    for (std::size_t k = 0; k < size; ++k)
      m(i, k) = exactlin::scalar_from_json(rows[i][k], path + "/matrix/" + std::to_string(i) + "/" + std::to_string(k));
  }
  return {size / 2, std::move(m)};
}

}  // namespace poissonkit::nctorus
