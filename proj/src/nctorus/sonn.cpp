#include "poissonkit/nctorus/sonn.hpp"

#include <cmath>
#include <deque>
#include <map>
#include <mutex>
#include <random>
#include <stdexcept>
#include <unordered_set>

namespace poissonkit::nctorus {

namespace {

QMatrix lift(const Matrix& m) {
  QMatrix q(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) q(i, j) = QuadraticScalar(m(i, j));
  return q;
}

Matrix unit_pair(std::size_t n, std::size_t i, std::size_t j, long s) {
  Matrix e(n, n);
  e(i, j) = Scalar(s);
  return e;
}

/// Solves X * den = num for floating n x n matrices by Gaussian elimination
/// with partial pivoting on den^T. Returns false when a pivot falls below tol.
bool right_divide(std::vector<double> num, std::vector<double> den, std::size_t n, double tol,
                  std::vector<double>& out) {
  // X den = num  <=>  den^T X^T = num^T.
  std::vector<double> a(n * n), b(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      a[i * n + j] = den[j * n + i];
      b[i * n + j] = num[j * n + i];
    }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(a[r * n + c]) > std::abs(a[p * n + c])) p = r;
    if (std::abs(a[p * n + c]) < tol) return false;
    if (p != c)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a[p * n + j], a[c * n + j]);
        std::swap(b[p * n + j], b[c * n + j]);
      }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c) continue;
      const double f = a[r * n + c] / a[c * n + c];
      if (f == 0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        a[r * n + j] -= f * a[c * n + j];
        b[r * n + j] -= f * b[c * n + j];
      }
    }
  }
  out.assign(n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out[j * n + i] = b[i * n + j] / a[i * n + i];
  return true;
}

std::vector<double> to_doubles(const Matrix& m) {
  std::vector<double> out;
  for (const auto& x : m.data()) out.push_back(x.to_double());
  return out;
}

std::vector<double> mul(const std::vector<double>& x, const std::vector<double>& y, std::size_t n) {
  std::vector<double> z(n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) z[i * n + j] += x[i * n + k] * y[k * n + j];
  return z;
}

std::vector<Generator> build_generators(std::size_t n) {
  std::vector<Generator> gens;
  const Matrix id = Matrix::identity(n);
  auto label = [](const char* kind, std::size_t i, std::size_t j) {
    return std::string(kind) + std::to_string(i + 1) + std::to_string(j + 1) + ")";
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      gens.push_back({label("rho(I+E", i, j), SOnnMatrix::rho(id + unit_pair(n, i, j, 1))});
      gens.push_back({label("rho(I-E", i, j), SOnnMatrix::rho(id - unit_pair(n, i, j, 1))});
    }
  for (std::size_t i = 0; i < n; ++i) {
    Matrix r = id;
    r(i, i) = Scalar(-1);
    gens.push_back({"rho(flip" + std::to_string(i + 1) + ")", SOnnMatrix::rho(r)});
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const Matrix e = unit_pair(n, i, j, 1) - unit_pair(n, j, i, 1);
      gens.push_back({label("nu(+E", i, j), SOnnMatrix::nu(e)});
      gens.push_back({label("nu(-E", i, j), SOnnMatrix::nu(-e)});
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Matrix q = id;
      q(i, i) = Scalar(0);
      q(j, j) = Scalar(0);
      const Matrix e = unit_pair(n, i, j, 1) - unit_pair(n, j, i, 1);
      gens.push_back({"sigma_" + std::to_string(i + 1) + std::to_string(j + 1), SOnnMatrix::from_blocks(q, e, e, q)});
    }
  for (const auto& g : gens)
    if (!sonn_check(g.g)) throw std::logic_error("generator " + g.name + " is not in SO(n,n|Z)");
  return gens;
}

}  // namespace

SOnnMatrix SOnnMatrix::from_blocks(const Matrix& a, const Matrix& b, const Matrix& c, const Matrix& d) {
  const std::size_t n = a.rows();
  for (const Matrix* x : {&a, &b, &c, &d})
    if (x->rows() != n || x->cols() != n) throw Error(ErrorCode::DimensionMismatch, "SO(n,n) blocks must be n x n");
  return {n, exactlin::block_matrix(a, b, c, d)};
}

SOnnMatrix SOnnMatrix::identity(std::size_t n) { return {n, Matrix::identity(2 * n)}; }

SOnnMatrix SOnnMatrix::rho(const Matrix& r) {
  auto inv = exactlin::inverse(r);
  if (!inv) throw Error(ErrorCode::InvalidStructure, "rho(R) needs invertible R");
  const std::size_t n = r.rows();
  return from_blocks(r, Matrix(n, n), Matrix(n, n), inv->transpose());
}

SOnnMatrix SOnnMatrix::nu(const Matrix& skew_n) {
  const std::size_t n = skew_n.rows();
  return from_blocks(Matrix::identity(n), skew_n, Matrix(n, n), Matrix::identity(n));
}

SOnnMatrix operator*(const SOnnMatrix& g, const SOnnMatrix& h) {
  if (g.n != h.n) throw Error(ErrorCode::DimensionMismatch, "SO(n,n) product of different n");
  return {g.n, g.m * h.m};
}

bool sonn_check(const SOnnMatrix& g) {
  const std::size_t n = g.n;
  if (g.m.rows() != 2 * n || g.m.cols() != 2 * n) return false;
  for (const auto& x : g.m.data())
    if (!x.is_integer()) return false;
  const Matrix a = g.a(), b = g.b(), c = g.c(), d = g.d();
  if (!(a.transpose() * c + c.transpose() * a).is_zero()) return false;
  if (!(b.transpose() * d + d.transpose() * b).is_zero()) return false;
  if (!(a.transpose() * d + c.transpose() * b == Matrix::identity(n))) return false;
  return exactlin::determinant(g.m) == Scalar(1);
}

std::optional<SkewParam> fractional_action_unchecked(const SOnnMatrix& g, const SkewParam& pi) {
  const std::size_t n = g.n;
  if (pi.n() != n) throw Error(ErrorCode::DimensionMismatch, "fractional_action: size mismatch");
  if (pi.is_exact()) {
    const QMatrix p = pi.matrix();
    const QMatrix num = lift(g.a()) * p + lift(g.b());
    const QMatrix den = lift(g.c()) * p + lift(g.d());
    auto inv = exactlin::inverse(den);
    if (!inv) return std::nullopt;
    QMatrix out = num * *inv;
    if (!out.is_skew()) throw std::logic_error("fractional_action produced a non-skew matrix");
    return SkewParam::exact(std::move(out));
  }
  const std::vector<double> p = pi.to_doubles();
  std::vector<double> num = mul(to_doubles(g.a()), p, n), den = mul(to_doubles(g.c()), p, n);
  const std::vector<double> b = to_doubles(g.b()), d = to_doubles(g.d());
  for (std::size_t k = 0; k < n * n; ++k) {
    num[k] += b[k];
    den[k] += d[k];
  }
  std::vector<double> out;
  if (!right_divide(num, den, n, pi.tolerance(), out)) return std::nullopt;
  double scale = 1;
  for (double x : out) scale = std::max(scale, std::abs(x));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const double s = out[i * n + j] + out[j * n + i];
      if (std::abs(s) > 1e-8 * scale) throw std::logic_error("fractional_action produced a non-skew matrix");
      out[i * n + j] -= s / 2;
      out[j * n + i] -= s / 2;
    }
  return SkewParam::approx(n, std::move(out), pi.tolerance());
}

std::optional<SkewParam> fractional_action(const SOnnMatrix& g, const SkewParam& pi) {
  if (!sonn_check(g)) throw Error(ErrorCode::InvalidStructure, "matrix is not in SO(n,n|Z)");
  return fractional_action_unchecked(g, pi);
}

const std::vector<Generator>& generator_set(std::size_t n) {
  static std::mutex mu;
  static std::map<std::size_t, std::vector<Generator>> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, build_generators(n)).first;
  return it->second;
}

const Generator& generator_by_name(std::size_t n, const std::string& name) {
  for (const auto& g : generator_set(n))
    if (g.name == name) return g;
  throw Error(ErrorCode::Parse, "unknown generator '" + name + "' for n = " + std::to_string(n));
}

std::optional<SkewParam> replay(const SkewParam& pi, const std::vector<std::string>& word) {
  std::optional<SkewParam> cur = pi;
  for (const auto& name : word) {
    cur = fractional_action_unchecked(generator_by_name(pi.n(), name).g, *cur);
    if (!cur) return std::nullopt;
  }
  return cur;
}

OrbitResult orbit_bfs(const SkewParam& pi, const SkewParam& pi2, std::size_t depth, std::size_t node_cap) {
  require_same_kind(pi, pi2);
  if (pi.n() != pi2.n()) throw Error(ErrorCode::DimensionMismatch, "orbit_bfs: size mismatch");
  OrbitResult result;
  if (pi.matches(pi2)) {
    result.status = OrbitStatus::Equivalent;
    result.visited = 1;
    return result;
  }
  struct Node {
    SkewParam p;
    std::size_t parent;
    std::size_t gen;
  };
  const auto& gens = generator_set(pi.n());
  std::vector<Node> nodes{{pi, 0, 0}};
  std::unordered_set<std::string> seen{pi.key()};
  std::vector<std::size_t> frontier{0};
  for (std::size_t level = 0; level < depth && !frontier.empty(); ++level) {
    std::vector<std::size_t> next;
    for (std::size_t idx : frontier) {
      for (std::size_t gi = 0; gi < gens.size(); ++gi) {
        auto child = fractional_action_unchecked(gens[gi].g, nodes[idx].p);
        if (!child || !seen.insert(child->key()).second) continue;
        nodes.push_back({std::move(*child), idx, gi});
        if (nodes.back().p.matches(pi2)) {
          for (std::size_t at = nodes.size() - 1; at != 0; at = nodes[at].parent)
            result.word.insert(result.word.begin(), gens[nodes[at].gen].name);
          result.status = OrbitStatus::Equivalent;
          result.visited = nodes.size();
          return result;
        }
        if (nodes.size() >= node_cap) {
          result.capped = true;
          result.visited = nodes.size();
          return result;
        }
        next.push_back(nodes.size() - 1);
      }
    }
    frontier = std::move(next);
  }
  result.visited = nodes.size();
  return result;
}

namespace {

bool is_rotation(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t s = 0; s < a.size(); ++s) {
    bool ok = true;
    for (std::size_t k = 0; k < a.size() && ok; ++k) ok = a[(k + s) % a.size()] == b[k];
    if (ok) return true;
  }
  return false;
}

std::string show(const std::vector<mpz_class>& v) {
  std::string s = "[";
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + v[k].get_str();
  return s + "]";
}

}  // namespace

N2Decision n2_decide(const QuadraticScalar& theta1, const QuadraticScalar& theta2) {
  if (theta1.is_rational() && theta2.is_rational())
    return {N2Verdict::Equivalent, "both rational: the Euclidean algorithm reaches 0 from each"};
  if (theta1.is_rational() != theta2.is_rational())
    return {N2Verdict::Inequivalent, "one value is rational and the other irrational"};
  if (theta1.radicand() != theta2.radicand())
    return {N2Verdict::Inequivalent, "different quadratic fields Q(sqrt" + std::to_string(theta1.radicand()) +
                                         ") and Q(sqrt" + std::to_string(theta2.radicand()) + ")"};
  const auto e1 = continued_fraction(theta1), e2 = continued_fraction(theta2);
  if (is_rotation(e1.period, e2.period))
    return {N2Verdict::Equivalent, "periodic tails " + show(e1.period) + " and " + show(e2.period) + " agree up to shift"};
  return {N2Verdict::Inequivalent,
          "periodic tails " + show(e1.period) + " and " + show(e2.period) + " never coincide"};
}

SOnnMatrix random_sonn(std::size_t n, std::size_t length, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const auto& gens = generator_set(n);
  std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
  SOnnMatrix g = SOnnMatrix::identity(n);
  for (std::size_t k = 0; k < length; ++k) g = gens[pick(rng)].g * g;
  return g;
}

}  // namespace poissonkit::nctorus
