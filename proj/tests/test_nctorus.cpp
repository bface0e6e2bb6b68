#include <doctest.h>

#include <chrono>
#include <cmath>
#include <numbers>
#include <random>

#include "poissonkit/nctorus/json.hpp"
#include "poissonkit/nctorus/sonn.hpp"
#include "poissonkit/nctorus/torus.hpp"
#include "support.hpp"

using namespace poissonkit;
using namespace poissonkit::nctorus;

namespace {

QuadraticScalar q(const char* s) { return QuadraticScalar::parse(s); }

SkewParam rational_param(std::mt19937_64& rng, std::size_t n, int range = 3) {
  const Matrix m = pktest::random_skew(rng, n, range);
  QMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = QuadraticScalar(m(i, j));
  return SkewParam::exact(out);
}

TorusElement random_element(std::mt19937_64& rng, std::size_t n, std::size_t support) {
  std::uniform_int_distribution<long> coord(-3, 3);
  std::uniform_real_distribution<double> coef(-1, 1);
  TorusElement f(n);
  for (std::size_t k = 0; k < support; ++k) {
    LatticePoint m(n);
    for (auto& x : m) x = coord(rng);
    f.add(m, {coef(rng), coef(rng)});
  }
  return f;
}

// Plain convolution written out directly.
TorusElement convolution(const TorusElement& f, const TorusElement& g) {
  TorusElement out(f.n());
  for (const auto& [k, a] : f.coeffs())
    for (const auto& [l, b] : g.coeffs()) {
      LatticePoint m(k);
      for (std::size_t i = 0; i < m.size(); ++i) m[i] += l[i];
      out.add(m, a * b);
    }
  return out;
}

// Discriminant of the primitive integer minimal polynomial of an irrational
// a + b sqrt(d): x^2 - 2a x + (a^2 - b^2 d), cleared of denominators.
mpz_class discriminant(const QuadraticScalar& x) {
  const Scalar a = x.rational_part(), b = x.radical_coefficient();
  const Scalar B = Scalar(-2) * a, C = a * a - b * b * Scalar(x.radicand());
  const mpz_class l = lcm(B.denominator(), C.denominator());
  mpz_class A2 = l, B2 = B.numerator() * (l / B.denominator()), C2 = C.numerator() * (l / C.denominator());
  mpz_class g = gcd(gcd(A2, B2), C2);
  A2 /= g;
  B2 /= g;
  C2 /= g;
  return B2 * B2 - 4 * A2 * C2;
}

// (a theta + b) / (c theta + d) computed straight in the field.
QuadraticScalar mobius(long a, long b, long c, long d, const QuadraticScalar& t) {
  return (QuadraticScalar(a) * t + QuadraticScalar(b)) / (QuadraticScalar(c) * t + QuadraticScalar(d));
}

}  // namespace

TEST_CASE("quadratic scalars normalize and parse") {
  CHECK(q("sqrt8") == QuadraticScalar(Scalar(0), Scalar(2), 2));
  CHECK(q("sqrt9") == QuadraticScalar(3));
  CHECK(q("(1+2*sqrt12)/3").radicand() == 3);
  CHECK(q("(1+2*sqrt12)/3").radical_coefficient() == Scalar(4, 3));
  CHECK(q("1/3").is_rational());
  CHECK(q("-1+sqrt2").to_string() == "-1+sqrt2");
  CHECK(q("3/2*sqrt5").to_string() == "3/2*sqrt5");
  CHECK(q("-sqrt(7)").to_string() == "-sqrt7");
  CHECK_THROWS_AS(q("sqrt"), Error);
  CHECK_THROWS_AS(q("1+"), Error);
  CHECK_THROWS_AS(q("sqrt2") + q("sqrt3"), Error);
  CHECK_THROWS_AS(QuadraticScalar(Scalar(0), Scalar(1), -2), Error);
}

TEST_CASE("quadratic arithmetic agrees with doubles") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 500; ++t) {
    const long d = std::vector<long>{2, 3, 5, 6, 7, 10}[rng() % 6];
    const QuadraticScalar x(pktest::random_scalar(rng), pktest::random_scalar(rng), d);
    const QuadraticScalar y(pktest::random_scalar(rng), pktest::random_scalar(rng), d);
    CHECK((x + y).to_double() == doctest::Approx(x.to_double() + y.to_double()));
    CHECK((x * y).to_double() == doctest::Approx(x.to_double() * y.to_double()));
    if (!y.is_zero()) {
      CHECK((x / y).to_double() == doctest::Approx(x.to_double() / y.to_double()).epsilon(1e-9));
      CHECK((x / y) * y == x);
    }
    CHECK(x.sign() == (x.to_double() > 0) - (x.to_double() < 0));
    CHECK(x.floor() == mpz_class(std::floor(x.to_double())));
  }
}

TEST_CASE("continued fractions") {
  auto e = continued_fraction(q("sqrt2"));
  CHECK(e.preperiod == std::vector<mpz_class>{1});
  CHECK(e.period == std::vector<mpz_class>{2});
  e = continued_fraction(q("sqrt3"));
  CHECK(e.preperiod == std::vector<mpz_class>{1});
  CHECK(e.period == std::vector<mpz_class>{1, 2});
  e = continued_fraction(q("1+sqrt2"));
  CHECK(e.preperiod.empty());
  CHECK(e.period == std::vector<mpz_class>{2});
  e = continued_fraction(q("-sqrt2"));
  CHECK(e.preperiod.front() == -2);
  CHECK(continued_fraction(Scalar(7, 3)) == std::vector<mpz_class>{2, 3});
  CHECK_THROWS_AS(continued_fraction(q("1/3")), Error);

  // Oracle: partial quotients from repeated floor/reciprocal in the field.
  std::mt19937_64 rng(12);
  for (int t = 0; t < 200; ++t) {
    const long d = std::vector<long>{2, 3, 5, 7, 13, 19}[rng() % 6];
    std::uniform_int_distribution<long> pick(-9, 9);
    long r = pick(rng);
    if (r == 0) r = 1;
    long b = pick(rng);
    if (b == 0) b = 1;
    const QuadraticScalar x(Scalar(pick(rng), r), Scalar(b, r), d);
    const auto ex = continued_fraction(x);
    QuadraticScalar y = x;
    std::vector<mpz_class> seq;
    const std::size_t len = ex.preperiod.size() + 3 * ex.period.size();
    for (std::size_t k = 0; k < len; ++k) {
      mpz_class a = y.floor();
      seq.push_back(a);
      y = QuadraticScalar(1) / (y - QuadraticScalar(Scalar(a, mpz_class(1))));
    }
    for (std::size_t k = 0; k < len; ++k) {
      const mpz_class want = k < ex.preperiod.size()
                                 ? ex.preperiod[k]
                                 : ex.period[(k - ex.preperiod.size()) % ex.period.size()];
      REQUIRE(seq[k] == want);
    }
  }
}

TEST_CASE("twisted product basics") {
  const SkewParam pi = SkewParam::theta(q("1/3"));
  std::mt19937_64 rng(21);
  const TorusElement f = random_element(rng, 2, 8);
  CHECK(twisted_product(f, TorusElement::unit(2), pi, 1.0).distance(f) == 0);
  CHECK(twisted_product(TorusElement::unit(2), f, pi, 1.0).distance(f) == 0);

  const TorusElement u1 = TorusElement::generator(2, 0), u2 = TorusElement::generator(2, 1);
  const TorusElement lhs = twisted_product(u1, u2, pi, 1.0);
  const TorusElement rhs = std::polar(1.0, 2 * std::numbers::pi / 3) * twisted_product(u2, u1, pi, 1.0);
  CHECK(lhs.distance(rhs) < 1e-14);

  const SkewParam zero = SkewParam::theta(QuadraticScalar(0));
  const TorusElement g = random_element(rng, 2, 8);
  CHECK(twisted_product(f, g, zero, 1.0).distance(convolution(f, g)) < 1e-14);
  CHECK(twisted_product(u1, u2, zero, 1.0).distance(twisted_product(u2, u1, zero, 1.0)) == 0);

  CHECK_THROWS_AS(twisted_product(f, TorusElement::unit(3), pi, 1.0), Error);
}

TEST_CASE("twisted product is bilinear and supported on the Minkowski sum") {
  std::mt19937_64 rng(22);
  for (int t = 0; t < 50; ++t) {
    const SkewParam pi = rational_param(rng, 3);
    const TorusElement f = random_element(rng, 3, 6), g = random_element(rng, 3, 6), h = random_element(rng, 3, 6);
    const Complex s(0.3, -1.2);
    CHECK(twisted_product(f + s * g, h, pi, 0.7).distance(twisted_product(f, h, pi, 0.7) +
                                                         s * twisted_product(g, h, pi, 0.7)) < 1e-12);
    const TorusElement fg = twisted_product(f, g, pi, 0.7);
    for (const auto& [m, c] : fg.coeffs()) {
      bool found = false;
      for (const auto& [k, a] : f.coeffs())
        for (const auto& [l, b] : g.coeffs()) {
          LatticePoint s2(k);
          for (std::size_t i = 0; i < 3; ++i) s2[i] += l[i];
          found = found || s2 == m;
        }
      CHECK(found);
    }
  }
}

TEST_CASE("twisted product is associative") {
  std::mt19937_64 rng(23);
  double worst = 0;
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 2 + rng() % 3;
    const SkewParam pi = rational_param(rng, n);
    const double hbar = std::uniform_real_distribution<double>(-2, 2)(rng);
    const TorusElement f = random_element(rng, n, 1 + rng() % 20);
    const TorusElement g = random_element(rng, n, 1 + rng() % 20);
    const TorusElement h = random_element(rng, n, 1 + rng() % 20);
    const TorusElement a = twisted_product(twisted_product(f, g, pi, hbar), h, pi, hbar);
    const TorusElement b = twisted_product(f, twisted_product(g, h, pi, hbar), pi, hbar);
    worst = std::max(worst, a.distance(b));
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("generator relations") {
  auto r = generator_relation_check(SkewParam::theta(q("1/3")), 1e-12);
  CHECK(r.passed);
  CHECK(r.max_deviation < 1e-12);
  r = generator_relation_check(SkewParam::theta(QuadraticScalar(0)), 1e-12);
  CHECK(r.max_deviation == 0);
  std::mt19937_64 rng(31);
  for (int t = 0; t < 20; ++t) CHECK(generator_relation_check(rational_param(rng, 3), 1e-12).passed);
  CHECK(generator_relation_check(SkewParam::theta(q("sqrt2")), 1e-12).passed);
}

TEST_CASE("SO(n,n|Z) membership") {
  CHECK(sonn_check(SOnnMatrix::identity(3)));
  const Matrix r{{2, 1}, {1, 1}};
  CHECK(sonn_check(SOnnMatrix::rho(r)));
  const Matrix nn{{0, 2, 0}, {-2, 0, 5}, {0, -5, 0}};
  CHECK(sonn_check(SOnnMatrix::nu(nn)));
  // Symmetric B breaks B^T D + D^T B = 0.
  CHECK_FALSE(sonn_check(SOnnMatrix::nu(Matrix{{1, 0}, {0, 0}})));
  // rho(R) with non-integral inverse.
  CHECK_FALSE(sonn_check(SOnnMatrix::rho(Matrix{{2, 0}, {0, 1}})));
  // Swapping the two halves satisfies the block identities but has det (-1)^n.
  const std::size_t n = 3;
  const SOnnMatrix swap = SOnnMatrix::from_blocks(Matrix(n, n), Matrix::identity(n), Matrix::identity(n), Matrix(n, n));
  CHECK_FALSE(sonn_check(swap));
  for (std::size_t k = 1; k <= 3; ++k)
    for (const auto& g : generator_set(k)) CHECK_MESSAGE(sonn_check(g.g), g.name);
  for (std::uint64_t s = 0; s < 50; ++s) CHECK(sonn_check(random_sonn(1 + s % 3, 6, s)));
}

TEST_CASE("fractional action") {
  std::mt19937_64 rng(41);
  const SkewParam pi = rational_param(rng, 3);
  CHECK(fractional_action(SOnnMatrix::identity(3), pi)->matches(pi));
  const Matrix nn{{0, 2, 0}, {-2, 0, 5}, {0, -5, 0}};
  QMatrix shifted = pi.matrix();
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) shifted(i, j) = shifted(i, j) + QuadraticScalar(nn(i, j));
  CHECK(fractional_action(SOnnMatrix::nu(nn), pi)->matches(SkewParam::exact(shifted)));

  // sigma at theta = 0 needs C pi + D = 0 to be inverted.
  const Generator& sigma = generator_by_name(2, "sigma_12");
  CHECK_FALSE(fractional_action(sigma.g, SkewParam::theta(QuadraticScalar(0))).has_value());
  CHECK(fractional_action(sigma.g, SkewParam::theta(q("sqrt2")))->matches(SkewParam::theta(q("-1/2*sqrt2"))));

  CHECK_THROWS_AS(fractional_action(SOnnMatrix::nu(Matrix{{1, 0}, {0, 0}}), SkewParam::theta(1)), Error);
  CHECK_THROWS_AS(fractional_action(SOnnMatrix::identity(2), pi), Error);

  const SkewParam f = SkewParam::approx(2, {0, 0.25, -0.25, 0}, 1e-9);
  auto out = fractional_action(sigma.g, f);
  REQUIRE(out);
  CHECK(out->entry(0, 1) == doctest::Approx(-4.0));
}

TEST_CASE("fractional action is a partial group action") {
  std::mt19937_64 rng(42);
  int checked = 0;
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = 2 + t % 2;
    const SkewParam pi = rational_param(rng, n);
    const SOnnMatrix g1 = random_sonn(n, 1 + rng() % 4, rng()), g2 = random_sonn(n, 1 + rng() % 4, rng());
    auto a = fractional_action(g1, pi);
    auto c = fractional_action(g2 * g1, pi);
    if (!a || !c) continue;
    auto b = fractional_action(g2, *a);
    if (!b) continue;
    CHECK(b->matches(*c));
    CHECK(b->matrix().is_skew());
    ++checked;
  }
  CHECK(checked > 100);
}

TEST_CASE("orbit search") {
  const SkewParam r2 = SkewParam::theta(q("sqrt2"));
  auto res = orbit_bfs(r2, r2, 5);
  CHECK(res.status == OrbitStatus::Equivalent);
  CHECK(res.word.empty());

  res = orbit_bfs(r2, SkewParam::theta(q("1+sqrt2")), 5);
  REQUIRE(res.status == OrbitStatus::Equivalent);
  CHECK(res.word == std::vector<std::string>{"nu(+E12)"});
  CHECK(replay(r2, res.word)->matches(SkewParam::theta(q("1+sqrt2"))));

  res = orbit_bfs(r2, SkewParam::theta(q("sqrt3")), 8, 20000);
  CHECK(res.status == OrbitStatus::Unknown);
  CHECK(n2_decide(q("sqrt2"), q("sqrt3")).verdict == N2Verdict::Inequivalent);

  // Targets built from random words are always found, and the word replays.
  std::mt19937_64 rng(51);
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 2 + t % 2;
    const SkewParam pi = rational_param(rng, n);
    const auto& gens = generator_set(n);
    std::optional<SkewParam> target = pi;
    for (int k = 0; k < 2 && target; ++k) target = fractional_action(gens[rng() % gens.size()].g, *target);
    if (!target) continue;
    res = orbit_bfs(pi, *target, 2);
    REQUIRE(res.status == OrbitStatus::Equivalent);
    CHECK(replay(pi, res.word)->matches(*target));
  }

  const SkewParam fl = SkewParam::approx(2, {0, 1.5, -1.5, 0}, 1e-9);
  CHECK_THROWS_AS(orbit_bfs(fl, r2, 2), Error);
  res = orbit_bfs(fl, SkewParam::approx(2, {0, -2.0 / 3.0, 2.0 / 3.0, 0}, 1e-9), 3);
  CHECK(res.status == OrbitStatus::Equivalent);
}

TEST_CASE("n = 2 decision") {
  auto timed = [](const char* a, const char* b) {
    const auto t0 = std::chrono::steady_clock::now();
    auto d = n2_decide(q(a), q(b));
    CHECK(std::chrono::steady_clock::now() - t0 < std::chrono::milliseconds(1));
    return d.verdict;
  };
  CHECK(timed("1/3", "0") == N2Verdict::Equivalent);
  CHECK(timed("sqrt2", "1+sqrt2") == N2Verdict::Equivalent);
  CHECK(timed("sqrt2", "sqrt3") == N2Verdict::Inequivalent);
  CHECK(timed("sqrt2", "2*sqrt2") == N2Verdict::Inequivalent);
  CHECK(timed("sqrt2", "1/3") == N2Verdict::Inequivalent);

  // Oracle: random Mobius images are equivalent; equivalent values share a
  // discriminant.
  std::mt19937_64 rng(61);
  std::vector<QuadraticScalar> pool;
  for (int t = 0; t < 60; ++t) {
    const long d = std::vector<long>{2, 3, 5}[rng() % 3];
    const QuadraticScalar x(pktest::random_scalar(rng), Scalar(1 + static_cast<long>(rng() % 3)), d);
    std::uniform_int_distribution<long> e(-3, 3);
    long a, b, c, dd;
    do {
      a = e(rng), b = e(rng), c = e(rng), dd = e(rng);
    } while (std::abs(a * dd - b * c) != 1);
    const QuadraticScalar y = mobius(a, b, c, dd, x);
    CHECK(n2_decide(x, y).verdict == N2Verdict::Equivalent);
    CHECK(discriminant(x) == discriminant(y));
    pool.push_back(x);
    pool.push_back(y);
  }
  for (std::size_t i = 0; i < pool.size(); ++i)
    for (std::size_t j = 0; j < pool.size(); ++j) {
      const bool eq = n2_decide(pool[i], pool[j]).verdict == N2Verdict::Equivalent;
      CHECK(eq == (n2_decide(pool[j], pool[i]).verdict == N2Verdict::Equivalent));
      if (eq) CHECK(discriminant(pool[i]) == discriminant(pool[j]));
    }
  for (int t = 0; t < 300; ++t) {
    const auto& a = pool[rng() % pool.size()];
    const auto& b = pool[rng() % pool.size()];
    const auto& c = pool[rng() % pool.size()];
    if (n2_decide(a, b).verdict == N2Verdict::Equivalent && n2_decide(b, c).verdict == N2Verdict::Equivalent)
      CHECK(n2_decide(a, c).verdict == N2Verdict::Equivalent);
  }
}

TEST_CASE("n = 2 decision agrees with orbit search") {
  std::mt19937_64 rng(62);
  for (int t = 0; t < 30; ++t) {
    const QuadraticScalar x(pktest::random_scalar(rng), Scalar(1), 2 + static_cast<long>(rng() % 2));
    const QuadraticScalar y(pktest::random_scalar(rng), Scalar(1), 2 + static_cast<long>(rng() % 2));
    auto res = orbit_bfs(SkewParam::theta(x), SkewParam::theta(y), 4, 5000);
    if (res.status == OrbitStatus::Equivalent) CHECK(n2_decide(x, y).verdict == N2Verdict::Equivalent);
  }
}

TEST_CASE("nctorus json") {
  using nlohmann::json;
  CHECK(quadratic_from_json(json{{"p", 1}, {"q", 2}, {"d", 3}, {"r", 5}}) == q("(1+2*sqrt3)/5"));
  CHECK(quadratic_from_json(to_json(q("(1-2*sqrt3)/5"))) == q("(1-2*sqrt3)/5"));
  CHECK(quadratic_from_json(json("1+sqrt2")) == q("1+sqrt2"));
  try {
    skew_param_from_json(json::parse(R"({"pi": [[0, "sqrt2"], ["sqrt2", 0]]})"));
    FAIL("expected NotSkew");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotSkew);
    CHECK(e.path() == "/pi");
  }
  try {
    skew_param_from_json(json::parse(R"({"pi": [[0, 0.5], [-0.5, 0]]})"));
    FAIL("expected Schema");
  } catch (const Error& e) {
    CHECK(e.path() == "/tol");
  }
  try {
    skew_param_from_json(json::parse(R"({"pi": [[0, 0.5], ["-1/2", 0]], "tol": 1e-9})"));
    FAIL("expected DomainRejection");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DomainRejection);
  }
  const SkewParam p = skew_param_from_json(json::parse(R"({"theta": {"p": 0, "q": 1, "d": 2, "r": 1}})"));
  CHECK(skew_param_from_json(to_json(p)).matches(p));
  std::mt19937_64 rng(71);
  const TorusElement f = random_element(rng, 3, 5);
  CHECK(torus_element_from_json(to_json(f)).distance(f) == 0);
  const SOnnMatrix g = random_sonn(2, 5, 3);
  CHECK(sonn_from_json(to_json(g)) == g);
}
