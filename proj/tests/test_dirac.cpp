#include <doctest.h>

#include <random>

#include "poissonkit/dirac/dirac.hpp"
#include "support.hpp"

using namespace poissonkit;
using namespace poissonkit::dirac;
using exactlin::GaussianRational;
using pktest::span_rows;

namespace {

// Independent pairing: a(Y) + b(X) written out by hand.
bool pairwise_isotropic(const Matrix& basis, std::size_t n) {
  for (std::size_t i = 0; i < basis.rows(); ++i)
    for (std::size_t j = 0; j < basis.rows(); ++j) {
      Scalar s;
      for (std::size_t k = 0; k < n; ++k) s += basis(i, n + k) * basis(j, k) + basis(j, n + k) * basis(i, k);
      if (!s.is_zero()) return false;
    }
  return true;
}

bool valid(const DiracSubspace& l) {
  return l.basis().rows() == l.v_dim() && pairwise_isotropic(l.basis(), l.v_dim());
}

ExactSubspace random_subspace(std::mt19937_64& rng, std::size_t n) {
  return ExactSubspace::span(n, pktest::random_generators(rng, rng() % (n + 1), n));
}

DiracSubspace random_dirac(std::mt19937_64& rng, std::size_t n) {
  switch (rng() % 4) {
    case 0:
      return from_bivector(pktest::random_skew(rng, n));
    case 1:
      return from_two_form(pktest::random_skew(rng, n));
    case 2:
      return foliation(random_subspace(rng, n));
    default: {
      auto r = random_subspace(rng, n);
      return from_pair({r, pktest::random_skew(rng, r.dim())}, n);
    }
  }
}

Matrix standard_omega(std::size_t pairs) { return pktest::canonical_pi(pairs); }

}  // namespace

TEST_CASE("from_bivector examples") {
  auto zero = from_bivector(Matrix(2, 2));
  CHECK(zero.space() == span_rows(4, {{0, 0, 1, 0}, {0, 0, 0, 1}}));

  Matrix pi{{0, 1}, {-1, 0}};
  auto l = from_bivector(pi);
  // pi~(dx1) = d/dx2, pi~(dx2) = -d/dx1.
  CHECK(l.space() == span_rows(4, {{0, 1, 1, 0}, {-1, 0, 0, 1}}));
  CHECK(kernel(l).is_zero());
  CHECK_THROWS_AS(from_bivector(Matrix{{0, 1}, {1, 0}}), Error);
}

TEST_CASE("from_two_form examples") {
  auto zero = from_two_form(Matrix(2, 2));
  CHECK(zero.space() == span_rows(4, {{1, 0, 0, 0}, {0, 1, 0, 0}}));
  auto l = from_two_form(standard_omega(1));
  Matrix cot{{0, 0, 1, 0}, {0, 0, 0, 1}};
  CHECK(exactlin::subspace_intersect(l.space(), ExactSubspace::span(4, cot)).is_zero());
  CHECK_THROWS_AS(from_two_form(Matrix{{1, 0}, {0, 0}}), Error);
}

TEST_CASE("graphs of matched bivector and 2-form coincide") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t n = 2 * (1 + rng() % 3);
    Matrix pi = pktest::random_skew(rng, n);
    auto inv = exactlin::inverse(pi);
    if (!inv) continue;
    CHECK(from_bivector(pi) == from_two_form(graph_matched_form(pi)));
    CHECK(graph_matched_form(pi) == *inv);
    CHECK(symplectic_form_of(pi) == -*inv);
  }
}

TEST_CASE("from_pair examples and roundtrip") {
  std::mt19937_64 rng(5);
  Matrix omega = pktest::random_skew(rng, 3);
  CHECK(from_pair({ExactSubspace::full(3), omega}, 3) == from_two_form(omega));
  CHECK(from_pair({ExactSubspace::zero(3), Matrix(0, 0)}, 3) == from_bivector(Matrix(3, 3)));

  auto r = span_rows(3, {{1, 0, 0}, {0, 1, 0}});
  DiracPair p{r, Matrix{{0, 1}, {-1, 0}}};
  auto l = from_pair(p, 3);
  CHECK(l.basis().rows() == 3);
  CHECK(to_pair(l) == p);
  CHECK(range(l) == r);
}

TEST_CASE("to_pair examples") {
  auto t = to_pair(from_two_form(Matrix(3, 3)));
  CHECK(t.range == ExactSubspace::full(3));
  CHECK(t.theta.is_zero());
  auto c = to_pair(from_bivector(Matrix(2, 2)));
  CHECK(c.range.is_zero());
  CHECK(c.theta.rows() == 0);
}

TEST_CASE("to_pair of a bivector graph inverts pi on its range") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = 1 + rng() % 5;
    Matrix pi = pktest::random_skew(rng, n);
    if (rng() % 2) {
      // Force degeneracy: pi = a^T s a with a rank-deficient.
      Matrix a = pktest::random_matrix(rng, n > 1 ? n - 1 : 1, n);
      pi = a.transpose() * pktest::random_skew(rng, a.rows()) * a;
    }
    auto pr = to_pair(from_bivector(pi));
    CHECK(pr.range == exactlin::column_space(pi));
    // Oracle: theta(r_i, r_j) = a_i(r_j) for any a_i with pi~(a_i) = pi^T a_i = r_i.
    for (std::size_t i = 0; i < pr.range.dim(); ++i) {
      auto a = exactlin::solve(pi.transpose(), pr.range.basis().row(i));
      REQUIRE(a.has_value());
      for (std::size_t j = 0; j < pr.range.dim(); ++j) {
        Scalar s;
        for (std::size_t k = 0; k < n; ++k) s += (*a)[k] * pr.range.basis()(j, k);
        CHECK(pr.theta(i, j) == s);
      }
    }
    if (auto inv = exactlin::inverse(pi)) CHECK(pr.theta == *inv);
  }
}

TEST_CASE("constructors produce maximal isotropic subspaces") {
  std::mt19937_64 rng(1000);
  for (int trial = 0; trial < 1000; ++trial) {
    std::size_t n = 1 + rng() % 8;
    auto l = random_dirac(rng, n);
    REQUIRE(valid(l));
    REQUIRE(certify(l.space(), n).valid());
  }
}

TEST_CASE("from_pair after to_pair is the identity") {
  std::mt19937_64 rng(1001);
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t n = 1 + rng() % 6;
    auto l = random_dirac(rng, n);
    auto p = to_pair(l);
    REQUIRE(p.theta.is_skew());
    REQUIRE(from_pair(p, n) == l);
  }
}

TEST_CASE("invalid subspaces are rejected with a certificate") {
  Matrix g{{1, 0, 1, 0}, {0, 1, 0, 0}};
  try {
    DiracSubspace::from_generators(2, g);
    FAIL("expected rejection");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidStructure);
    CHECK(std::string(e.what()).find("NOT isotropic") != std::string::npos);
  }
  CHECK_THROWS_AS(DiracSubspace::from_generators(2, Matrix{{1, 0, 0, 0}}), Error);
}

TEST_CASE("restrict examples") {
  auto l = from_two_form(standard_omega(2));
  CHECK(restrict_to(l, ExactSubspace::full(4)) == l);

  auto symp = span_rows(4, {{1, 0, 0, 0}, {0, 1, 0, 0}});
  CHECK(restrict_to(l, symp) == from_two_form(standard_omega(1)));

  auto lag = span_rows(4, {{1, 0, 0, 0}, {0, 0, 1, 0}});
  auto lw = restrict_to(l, lag);
  CHECK(lw == from_two_form(Matrix(2, 2)));
  CHECK(to_pair(lw).theta.is_zero());
}

TEST_CASE("restriction: quotient formula agrees with the pair formula") {
  std::mt19937_64 rng(1002);
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t n = 1 + rng() % 6;
    auto l = random_dirac(rng, n);
    auto w = random_subspace(rng, n);
    auto a = restrict_to(l, w);
    auto b = restrict_by_pair(l, w);
    REQUIRE(a.v_dim() == w.dim());
    REQUIRE(a.basis() == b.basis());
  }
}

TEST_CASE("pushforward and pullback examples") {
  const auto id4 = Matrix::identity(4);
  auto l4 = from_bivector(pktest::canonical_pi(2));
  CHECK(pushforward(id4, l4) == l4);
  CHECK(pullback(id4, l4) == l4);

  Matrix proj{{1, 0, 0, 0}, {0, 1, 0, 0}};
  CHECK(pushforward(proj, l4) == from_bivector(pktest::canonical_pi(1)));
  CHECK(pushforward(Matrix(2, 4), l4) == from_bivector(Matrix(2, 2)));

  auto s4 = from_two_form(standard_omega(2));
  Matrix incl = proj.transpose();
  CHECK(pullback(incl, s4) == from_two_form(standard_omega(1)));
  CHECK_THROWS_AS(pushforward(Matrix(2, 3), l4), Error);
  CHECK_THROWS_AS(pullback(Matrix(3, 2), l4), Error);
}

TEST_CASE("pullback along an inclusion equals restriction to the image") {
  std::mt19937_64 rng(1003);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = 2 + rng() % 4;
    auto l = random_dirac(rng, n);
    auto w = random_subspace(rng, n);
    if (w.is_zero()) continue;
    // Include W through its canonical basis, so W-coordinates match.
    Matrix incl = w.basis().transpose();
    REQUIRE(pullback(incl, l) == restrict_to(l, w));
  }
}

TEST_CASE("functoriality of pushforward and pullback") {
  std::mt19937_64 rng(1004);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n1 = 1 + rng() % 4, n2 = 1 + rng() % 4, n3 = 1 + rng() % 4;
    Matrix f = pktest::random_matrix(rng, n2, n1, 1);
    Matrix g = pktest::random_matrix(rng, n3, n2, 1);
    auto l1 = random_dirac(rng, n1);
    auto l3 = random_dirac(rng, n3);
    REQUIRE(pushforward(g * f, l1) == pushforward(g, pushforward(f, l1)));
    REQUIRE(pullback(g * f, l3) == pullback(f, pullback(g, l3)));
  }
}

TEST_CASE("kernel examples and cross-check") {
  CHECK(kernel(from_two_form(standard_omega(2))).is_zero());
  CHECK(kernel(from_bivector(Matrix(3, 3))).is_zero());
  auto f = span_rows(3, {{1, 1, 0}});
  CHECK(kernel(foliation(f)) == f);
  std::mt19937_64 rng(1005);
  for (int trial = 0; trial < 200; ++trial) {
    auto l = random_dirac(rng, 1 + rng() % 6);
    CHECK(kernel(l) == kernel_from_pair(l));
  }
}

TEST_CASE("roundtrip laws") {
  std::mt19937_64 rng(1006);
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t n1 = 1 + rng() % 3, n2 = 1 + rng() % 3;
    Matrix f = pktest::random_matrix(rng, n2, n1, 1);
    auto r = roundtrip_laws(f, random_dirac(rng, n1), random_dirac(rng, n2));
    REQUIRE(r.corrected_laws_hold());
    if (exactlin::rank(f) == n1) CHECK(r.pull_push_identity);
    if (exactlin::rank(f) == n2) CHECK(r.push_pull_identity);
  }
  // Projection whose kernel is not characteristic.
  Matrix proj{{1, 0}};
  auto r = roundtrip_laws(proj, from_two_form(standard_omega(1)), from_two_form(Matrix(1, 1)));
  CHECK_FALSE(r.pull_push_identity);
  CHECK_FALSE(r.kernel_contained);
  CHECK(r.corrected_laws_hold());
  // f = id, L2 = {0} (+) V*: f_* f^* L2 = L2 although f(V1) is not inside R = {0}.
  auto c = roundtrip_laws(Matrix::identity(2), from_bivector(Matrix(2, 2)), from_bivector(Matrix(2, 2)));
  CHECK(c.push_pull_identity);
  CHECK_FALSE(c.image_in_range);
  CHECK(c.range_in_image);
  CHECK_FALSE(c.laws_hold());
  CHECK(c.corrected_laws_hold());
}

TEST_CASE("gauge transformations") {
  std::mt19937_64 rng(1007);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = 1 + rng() % 5;
    auto l = random_dirac(rng, n);
    Matrix b1 = pktest::random_skew(rng, n), b2 = pktest::random_skew(rng, n);
    CHECK(gauge(l, Matrix(n, n)) == l);
    CHECK(gauge(gauge(l, b1), -b1) == l);
    CHECK(gauge(gauge(l, b1), b2) == gauge(l, b1 + b2));
    CHECK(range(gauge(l, b1)) == range(l));
  }
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = 2 * (1 + rng() % 2);
    Matrix pi = pktest::random_skew(rng, n), b = pktest::random_skew(rng, n);
    auto m = exactlin::inverse(Matrix::identity(n) + b * pi);
    if (!m) continue;
    Matrix gauged = pi * *m;
    REQUIRE(gauged.is_skew());
    CHECK(gauge(from_bivector(pi), b) == from_bivector(gauged));
  }
  // B = pi for the canonical pair makes 1 + B pi singular: the result is not a graph.
  Matrix pi = pktest::canonical_pi(1);
  CHECK_FALSE(exactlin::inverse(Matrix::identity(2) + pi * pi).has_value());
  CHECK_FALSE(kernel(gauge(from_bivector(pi), pi)).is_zero());
  CHECK_THROWS_AS(gauge(from_bivector(pi), Matrix{{1, 0}, {0, 0}}), Error);
}

TEST_CASE("generalized complex checks") {
  Matrix j{{0, -1}, {1, 0}};
  auto lj = from_complex_structure(j);
  CHECK(is_generalized_complex(lj));
  CHECK_FALSE(is_generalized_complex(complexify(from_bivector(pktest::canonical_pi(1)))));
  CHECK_FALSE(is_generalized_complex(complexify(from_two_form(Matrix(2, 2)))));
  CHECK(is_generalized_complex(from_symplectic(standard_omega(1))));
  CHECK(is_generalized_complex(from_symplectic(standard_omega(2))));
  // L_J = T^{0,1} (+) (T^{1,0})^*: the vector part is the -i eigenspace of J.
  for (std::size_t r = 0; r < lj.space().dim(); ++r) {
    const auto row = lj.space().basis().row(r);
    std::vector<GaussianRational> x(row.begin(), row.begin() + 2);
    std::vector<GaussianRational> jx{-x[1], x[0]};
    for (std::size_t k = 0; k < 2; ++k) CHECK(jx[k] == -GaussianRational::i() * x[k]);
  }
  CHECK_THROWS_AS(from_complex_structure(Matrix{{1, 0}, {0, 1}}), Error);
}

TEST_CASE("Cartan-Dirac fibers") {
  Matrix beta = Matrix::identity(2);
  CHECK(cartan_dirac_fiber(Matrix::identity(2), beta) == from_bivector(Matrix(2, 2)));
  CHECK(cartan_dirac_fiber(-Matrix::identity(2), beta) == from_two_form(Matrix(2, 2)));
  Matrix lor{{1, 0}, {0, -1}};
  CHECK(cartan_dirac_fiber(-Matrix::identity(2), lor) == from_two_form(Matrix(2, 2)));

  // Rational rotation by the 3-4-5 angle.
  Matrix a{{Scalar(3, 5), Scalar(-4, 5)}, {Scalar(4, 5), Scalar(3, 5)}};
  auto l = cartan_dirac_fiber(a, beta);
  auto p = to_pair(l);
  CHECK(p.range == ExactSubspace::full(2));
  Matrix a_inv = *exactlin::inverse(a);
  // Oracle: theta(v, w) = 1/2 beta((A^{-1} - A) u, w') with v = (A - 1)u, w = (A - 1)w'.
  Matrix pre = *exactlin::inverse(a - Matrix::identity(2));
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      auto ui = pre.apply(p.range.basis().row(i));
      auto uj = pre.apply(p.range.basis().row(j));
      auto d = (a_inv - a).apply(ui);
      Scalar s;
      for (std::size_t k = 0; k < 2; ++k) s += d[k] * uj[k];
      CHECK(p.theta(i, j) == Scalar(1, 2) * s);
    }
  CHECK(p.theta == ghjw_form(a, beta));
  CHECK_FALSE(p.theta.is_zero());

  CHECK_THROWS_AS(cartan_dirac_fiber(Matrix{{2, 0}, {0, 1}}, beta), Error);
  CHECK_THROWS_AS(cartan_dirac_fiber(a, Matrix{{1, 1}, {0, 1}}), Error);
}
