#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "poissonkit/cli/cli.hpp"
#include "poissonkit/dirac/dirac.hpp"
#include "poissonkit/error.hpp"
#include "poissonkit/morita/bispace.hpp"
#include "poissonkit/multivec/poisson.hpp"
#include "poissonkit/nctorus/sonn.hpp"
#include "poissonkit/nctorus/torus.hpp"
#include "poissonkit/tss/tss.hpp"

namespace poissonkit::cli {

namespace {

using exactlin::Matrix;
using exactlin::Scalar;

struct Battery {
  std::vector<SelftestRow> rows;
  std::mt19937_64 rng;

  explicit Battery(std::uint64_t seed) : rng(seed) {}

  template <class Fn>
  void check(const std::string& suite, const std::string& name, Fn&& fn) {
    SelftestRow row{suite, name, false, ""};
    try {
      row.passed = fn(row.detail);
    } catch (const std::exception& e) {
      row.passed = false;
      row.detail = std::string("threw: ") + e.what();
    }
    rows.push_back(std::move(row));
  }

  Scalar scalar(int range = 3) {
    std::uniform_int_distribution<int> num(-range, range), den(1, 3);
    return Scalar(num(rng), den(rng));
  }
  Matrix matrix(std::size_t r, std::size_t c) {
    Matrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m(i, j) = scalar();
    return m;
  }
  Matrix skew(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        m(i, j) = scalar();
        m(j, i) = -m(i, j);
      }
    return m;
  }
  std::size_t size(std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng); }
};

void exactlin_suite(Battery& b) {
  b.check("exactlin", "rank_nullity", [&](std::string& d) {
    for (int t = 0; t < 50; ++t) {
      const Matrix m = b.matrix(b.size(1, 5), b.size(1, 6));
      if (exactlin::rank(m) + exactlin::nullspace(m).rows() != m.cols()) {
        d = "rank + nullity != cols";
        return false;
      }
    }
    return true;
  });
  b.check("exactlin", "inverse", [&](std::string& d) {
    for (int t = 0; t < 50; ++t) {
      const Matrix m = b.matrix(4, 4);
      const auto inv = exactlin::inverse(m);
      if (inv && !(m * *inv == Matrix::identity(4))) {
        d = "m * m^-1 != 1";
        return false;
      }
      if (!inv && exactlin::rank(m) == 4) {
        d = "full rank matrix reported singular";
        return false;
      }
    }
    return true;
  });
}

void dirac_suite(Battery& b) {
  b.check("dirac", "constructors_maximal_isotropic", [&](std::string& d) {
    for (int t = 0; t < 40; ++t) {
      const std::size_t n = b.size(1, 6);
      const auto l1 = dirac::from_bivector(b.skew(n));
      const auto l2 = dirac::from_two_form(b.skew(n));
      if (!dirac::certify(l1.space(), n).valid() || !dirac::certify(l2.space(), n).valid()) {
        d = "certificate failed";
        return false;
      }
    }
    return true;
  });
  b.check("dirac", "pair_roundtrip", [&](std::string& d) {
    for (int t = 0; t < 40; ++t) {
      const std::size_t n = b.size(1, 5);
      const auto l = dirac::gauge(dirac::from_bivector(b.skew(n)), b.skew(n));
      if (!(dirac::from_pair(dirac::to_pair(l), n) == l)) {
        d = "from_pair(to_pair(L)) != L";
        return false;
      }
    }
    return true;
  });
  b.check("dirac", "gauge_additive", [&](std::string& d) {
    for (int t = 0; t < 40; ++t) {
      const std::size_t n = b.size(1, 5);
      const auto l = dirac::from_bivector(b.skew(n));
      const Matrix b1 = b.skew(n), b2 = b.skew(n);
      if (!(dirac::gauge(dirac::gauge(l, b2), b1) == dirac::gauge(l, b1 + b2)) ||
          !(dirac::range(dirac::gauge(l, b1)) == dirac::range(l))) {
        d = "gauge composition or range invariance failed";
        return false;
      }
    }
    return true;
  });
  b.check("dirac", "pullback_pushforward_laws", [&](std::string& d) {
    for (int t = 0; t < 30; ++t) {
      const std::size_t n1 = b.size(1, 3), n2 = b.size(1, 3);
      Matrix f = b.matrix(n2, n1);
      if (t % 3 == 0)
        for (std::size_t j = 0; j < n1; ++j) f(0, j) = Scalar(0);
      const auto r = dirac::roundtrip_laws(f, dirac::from_bivector(b.skew(n1)), dirac::from_two_form(b.skew(n2)));
      if (!r.corrected_laws_hold()) {
        d = "f^*f_*L = L iff ker f in ker L, or f_*f^*L = L iff R in f(V) failed";
        return false;
      }
    }
    return true;
  });
}

multivec::PolyBivector random_bivector(Battery& b, std::size_t n, int degree) {
  multivec::PolyBivector pi(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      multivec::Poly p = multivec::Poly::constant(n, b.scalar());
      for (int k = 0; k < degree; ++k) {
        multivec::Poly m = multivec::Poly::constant(n, b.scalar());
        for (int e = 0; e <= k; ++e) m = m * multivec::Poly::variable(n, b.size(0, n - 1));
        p = p + m;
      }
      pi.add({i, j}, p);
    }
  return pi;
}

void multivec_suite(Battery& b) {
  b.check("multivec", "so3_lie_poisson", [&](std::string& d) {
    const bool ok = multivec::jacobi_check(multivec::lie_poisson(multivec::so3_constants())).holds;
    if (!ok) d = "[pi, pi] != 0";
    return ok;
  });
  b.check("multivec", "non_jacobi_bracket_rejected", [&](std::string& d) {
    auto c = multivec::StructureConstants::zero(3);
    c.set(0, 1, 2, Scalar(1));
    c.set(1, 0, 2, Scalar(-1));
    c.set(1, 2, 0, Scalar(1));
    c.set(2, 1, 0, Scalar(-1));
    c.set(2, 0, 0, Scalar(1));
    c.set(0, 2, 0, Scalar(-1));
    c.set(2, 0, 1, Scalar(1));
    c.set(0, 2, 1, Scalar(-1));
    const auto r = multivec::jacobi_check(multivec::lie_poisson(c));
    if (r.holds || r.residual.is_zero()) d = "accepted a bracket violating Jacobi";
    return !r.holds && !r.residual.is_zero();
  });
  b.check("multivec", "plane_bivectors_poisson", [&](std::string& d) {
    for (int t = 0; t < 20; ++t)
      if (!multivec::jacobi_check(random_bivector(b, 2, 3)).holds) {
        d = "a bivector on R^2 failed Jacobi";
        return false;
      }
    return true;
  });
  b.check("multivec", "twisted_check_matches_closure", [&](std::string& d) {
    for (int t = 0; t < 10; ++t) {
      const std::size_t n = b.size(3, 4);
      const auto pi = random_bivector(b, n, t % 2);
      multivec::PolyThreeForm phi(n);
      if (t % 3 != 0) phi.add({0, 1, 2}, multivec::Poly::constant(n, b.scalar()));
      if (multivec::twisted_poisson_check(pi, phi).holds != multivec::graph_closure_check(pi, phi).closed) {
        d = "twisted_poisson_check and graph_closure_check disagree";
        return false;
      }
    }
    return true;
  });
}

nctorus::SkewParam rational_param(Battery& b, std::size_t n) {
  const Matrix m = b.skew(n);
  nctorus::QMatrix q(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) q(i, j) = nctorus::QuadraticScalar(m(i, j));
  return nctorus::SkewParam::exact(q);
}

void nctorus_suite(Battery& b, const Config& config) {
  b.check("nctorus", "generator_relations", [&](std::string& d) {
    for (int t = 0; t < 20; ++t) {
      const auto r = nctorus::generator_relation_check(rational_param(b, b.size(2, 4)), config.tol("relation"));
      if (!r.passed) {
        d = "deviation " + std::to_string(r.max_deviation);
        return false;
      }
    }
    return true;
  });
  b.check("nctorus", "partial_action_compatible", [&](std::string& d) {
    for (int t = 0; t < 40; ++t) {
      const std::size_t n = b.size(2, 3);
      const auto g1 = nctorus::random_sonn(n, 4, b.rng());
      const auto g2 = nctorus::random_sonn(n, 4, b.rng());
      if (!nctorus::sonn_check(g1) || !nctorus::sonn_check(g2) || !nctorus::sonn_check(g2 * g1)) {
        d = "product left SO(n,n|Z)";
        return false;
      }
      const auto pi = rational_param(b, n);
      const auto step = nctorus::fractional_action(g1, pi);
      if (!step) continue;
      const auto two = nctorus::fractional_action(g2, *step);
      const auto one = nctorus::fractional_action(g2 * g1, pi);
      if (two.has_value() != one.has_value() || (two && !two->matches(*one))) {
        d = "g2.(g1.pi) != (g2 g1).pi";
        return false;
      }
    }
    return true;
  });
  b.check("nctorus", "n2_decisions", [&](std::string& d) {
    using nctorus::QuadraticScalar;
    const auto eq = nctorus::N2Verdict::Equivalent;
    const bool ok = nctorus::n2_decide(QuadraticScalar::parse("1/3"), QuadraticScalar::parse("0")).verdict == eq &&
                    nctorus::n2_decide(QuadraticScalar::parse("sqrt2"), QuadraticScalar::parse("1+sqrt2")).verdict == eq &&
                    nctorus::n2_decide(QuadraticScalar::parse("sqrt2"), QuadraticScalar::parse("sqrt3")).verdict != eq;
    if (!ok) d = "a reference decision changed";
    return ok;
  });
}

void tss_suite(Battery& b) {
  b.check("tss", "sine_graph_and_periods", [&](std::string& d) {
    const auto g = tss::build_graph(tss::TorusFunction::sine(0, 1));
    bool ok = g.vertices.size() == 2 && g.edges.size() == 2;
    for (const auto& v : g.vertices) ok = ok && v.genus == 0;
    for (const auto& e : g.edges) ok = ok && std::abs(e.period - 1 / (2 * std::numbers::pi)) < 1e-6;
    if (!ok) d = "expected two genus-0 vertices and periods 1/(2 pi)";
    return ok;
  });
  b.check("tss", "period_scaling_and_rigidity", [&](std::string& d) {
    const auto g1 = tss::build_graph(tss::TorusFunction::sine(0, 1));
    const auto g2 = tss::build_graph(tss::TorusFunction::sine(0, 1, 3.0));
    bool ok = true;
    for (std::size_t k = 0; k < g1.edges.size(); ++k) ok = ok && std::abs(g1.edges[k].period / 3 - g2.edges[k].period) < 1e-8;
    ok = ok && !tss::graphs_isomorphic(g1, g2).isomorphic;
    ok = ok && tss::graphs_isomorphic(g1, tss::build_graph(tss::TorusFunction::sine(0, 1).translated(0.3, 0.17))).isomorphic;
    if (!ok) d = "scaling or isomorphism verdict wrong";
    return ok;
  });
}

void morita_suite(Battery& b) {
  using morita::FiniteGroup;
  b.check("morita", "picard_orders", [&](std::string& d) {
    std::ostringstream ss;
    bool ok = true;
    for (const auto& [name, expected] : std::vector<std::pair<std::string, std::size_t>>{{"s3", 1}, {"cyclic:4", 2}, {"klein", 6}}) {
      const auto p = morita::picard_group(std::make_shared<const FiniteGroup>(FiniteGroup::preset(name)));
      ss << name << "=" << p.order << " ";
      ok = ok && p.order == expected && p.matches_out;
    }
    if (!ok) d = ss.str();
    return ok;
  });
  b.check("morita", "tensor_associative", [&](std::string& d) {
    const std::vector<std::string> pool = {"cyclic:2", "cyclic:3", "klein", "s3"};
    for (int t = 0; t < 6; ++t) {
      std::vector<morita::GroupPtr> gs;
      for (int k = 0; k < 4; ++k) gs.push_back(std::make_shared<const FiniteGroup>(FiniteGroup::preset(pool[b.size(0, 3)])));
      auto pick = [&](const morita::GroupPtr& g, const morita::GroupPtr& h) {
        const auto all = morita::transitive_bispaces(g, h);
        return all[b.size(0, all.size() - 1)];
      };
      const auto x = pick(gs[0], gs[1]), y = pick(gs[1], gs[2]), z = pick(gs[2], gs[3]);
      if (!morita::bispace_iso(morita::tensor(morita::tensor(x, y), z), morita::tensor(x, morita::tensor(y, z)))) {
        d = "(X Y) Z not isomorphic to X (Y Z)";
        return false;
      }
    }
    return true;
  });
}

}  // namespace

std::vector<SelftestRow> selftest(const Config& config) {
  Battery b(config.seed);
  exactlin_suite(b);
  dirac_suite(b);
  multivec_suite(b);
  nctorus_suite(b, config);
  tss_suite(b);
  morita_suite(b);
  return std::move(b.rows);
}

}  // namespace poissonkit::cli
