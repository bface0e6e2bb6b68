#include "poissonkit/multivec/poisson.hpp"

#include <random>
#include <stdexcept>

namespace poissonkit::multivec {

namespace {

void same_vars(std::size_t a, std::size_t b) {
  if (a != b) throw Error(ErrorCode::DimensionMismatch, "operands live on different R^n");
}

PolyOneForm coordinate_form(std::size_t n, std::size_t i) {
  PolyOneForm e(n);
  e.set({i}, Poly::constant(n, Scalar(1)));
  return e;
}

PolyVectorField coordinate_field(std::size_t n, std::size_t i) {
  PolyVectorField e(n);
  e.set({i}, Poly::constant(n, Scalar(1)));
  return e;
}

std::vector<Scalar> section_row(const Section& s, std::span<const Scalar> x) {
  auto row = evaluate(s.x, x);
  auto a = evaluate(s.alpha, x);
  row.insert(row.end(), a.begin(), a.end());
  return row;
}

}  // namespace

Poly apply(const PolyVectorField& x, const Poly& f) {
  same_vars(x.n_vars(), f.n_vars());
  Poly s(f.n_vars());
  for (const auto& [idx, xi] : x.components()) s += xi * f.derivative(idx[0]);
  return s;
}

Poly pair(const PolyOneForm& alpha, const PolyVectorField& x) {
  same_vars(alpha.n_vars(), x.n_vars());
  Poly s(x.n_vars());
  for (const auto& [idx, a] : alpha.components()) s += a * x.get(idx);
  return s;
}

PolyVectorField lie_bracket(const PolyVectorField& x, const PolyVectorField& y) {
  same_vars(x.n_vars(), y.n_vars());
  const std::size_t n = x.n_vars();
  PolyVectorField out(n);
  for (std::size_t j = 0; j < n; ++j) out.set({j}, apply(x, y.get({j})) - apply(y, x.get({j})));
  return out;
}

PolyOneForm d(const Poly& f) {
  PolyOneForm out(f.n_vars());
  for (std::size_t i = 0; i < f.n_vars(); ++i) out.set({i}, f.derivative(i));
  return out;
}

PolyOneForm lie_derivative(const PolyVectorField& x, const PolyOneForm& beta) {
  return interior(x, d(beta)) + d(pair(beta, x));
}

Poly poisson_bracket(const Poly& f, const Poly& g, const PolyBivector& pi) {
  same_vars(f.n_vars(), pi.n_vars());
  same_vars(g.n_vars(), pi.n_vars());
  Poly s(f.n_vars());
  for (const auto& [idx, p] : pi.components()) {
    const auto i = idx[0], j = idx[1];
    s += p * (f.derivative(i) * g.derivative(j) - f.derivative(j) * g.derivative(i));
  }
  return s;
}

PolyVectorField sharp(const PolyBivector& pi, const PolyOneForm& alpha) {
  same_vars(pi.n_vars(), alpha.n_vars());
  const std::size_t n = pi.n_vars();
  PolyVectorField out(n);
  for (const auto& [idx, a] : alpha.components())
    for (std::size_t j = 0; j < n; ++j) {
      Poly pij = pi.get({idx[0], j});
      if (!pij.is_zero()) out.add({j}, a * pij);
    }
  return out;
}

PolyVectorField hamiltonian_vf(const Poly& f, const PolyBivector& pi) { return sharp(pi, d(f)); }

PolyTrivector schouten_square(const PolyBivector& pi) {
  const std::size_t n = pi.n_vars();
  PolyTrivector t(n);
  for (const auto& idx : PolyTrivector::increasing_indices(n)) {
    const auto i = idx[0], j = idx[1], k = idx[2];
    Poly s(n);
    for (std::size_t l = 0; l < n; ++l) {
      s += pi.get({l, i}) * pi.get({j, k}).derivative(l);
      s += pi.get({l, j}) * pi.get({k, i}).derivative(l);
      s += pi.get({l, k}) * pi.get({i, j}).derivative(l);
    }
    t.set(idx, Scalar(2) * s);
  }
  return t;
}

PolyTrivector wedge3_sharp(const PolyBivector& pi, const PolyThreeForm& phi) {
  same_vars(pi.n_vars(), phi.n_vars());
  const std::size_t n = pi.n_vars();
  PolyTrivector t(n);
  if (phi.is_zero() || pi.is_zero()) return t;
  std::vector<PolyVectorField> rows;
  for (std::size_t i = 0; i < n; ++i) rows.push_back(sharp(pi, coordinate_form(n, i)));
  for (const auto& idx : PolyTrivector::increasing_indices(n)) {
    // phi(X_i, X_j, X_k) with X_i = pi~(dx_i).
    Poly s = pair(interior(rows[idx[1]], interior(rows[idx[0]], phi)), rows[idx[2]]);
    t.set(idx, std::move(s));
  }
  return t;
}

TwistedCheck twisted_poisson_check(const PolyBivector& pi, const PolyThreeForm& phi) {
  same_vars(pi.n_vars(), phi.n_vars());
  if (!d(phi).is_zero()) throw Error(ErrorCode::NotClosed, "background 3-form is not closed");
  TwistedCheck r;
  r.residual = Scalar(1, 2) * schouten_square(pi) - wedge3_sharp(pi, phi);
  r.holds = r.residual.is_zero();
  return r;
}

TwistedCheck jacobi_check(const PolyBivector& pi) { return twisted_poisson_check(pi, PolyThreeForm(pi.n_vars())); }

Section courant_bracket(const Section& s1, const Section& s2, const PolyThreeForm& phi) {
  const std::size_t n = s1.x.n_vars();
  for (std::size_t m : {s1.alpha.n_vars(), s2.x.n_vars(), s2.alpha.n_vars(), phi.n_vars()}) same_vars(n, m);
  Section out;
  out.x = lie_bracket(s1.x, s2.x);
  out.alpha = lie_derivative(s1.x, s2.alpha) - interior(s2.x, d(s1.alpha));
  if (!phi.is_zero()) out.alpha += interior(s2.x, interior(s1.x, phi));
  return out;
}

ClosureCheck graph_closure_check(const PolyBivector& pi, const PolyThreeForm& phi) {
  same_vars(pi.n_vars(), phi.n_vars());
  const auto frame = DiracFrame::graph_of(pi);
  const std::size_t n = pi.n_vars();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto b = courant_bracket(frame.sections[i], frame.sections[j], phi);
      if (!(b.x == sharp(pi, b.alpha))) return {false, i, j};
    }
  return {};
}

DiracFrame DiracFrame::graph_of(const PolyBivector& pi) {
  const std::size_t n = pi.n_vars();
  DiracFrame f{n, {}};
  for (std::size_t i = 0; i < n; ++i) {
    auto dx = coordinate_form(n, i);
    f.sections.push_back({sharp(pi, dx), dx});
  }
  return f;
}

DiracFrame DiracFrame::graph_of(const PolyTwoForm& omega) {
  const std::size_t n = omega.n_vars();
  DiracFrame f{n, {}};
  for (std::size_t i = 0; i < n; ++i) {
    auto e = coordinate_field(n, i);
    f.sections.push_back({e, interior(e, omega)});
  }
  return f;
}

DiracFrame DiracFrame::foliation(const exactlin::ExactSubspace& sub) {
  const std::size_t n = sub.ambient_dim();
  DiracFrame f{n, {}};
  const auto ann = exactlin::annihilator(sub);
  for (std::size_t r = 0; r < sub.dim(); ++r) {
    PolyVectorField x(n);
    for (std::size_t j = 0; j < n; ++j) x.set({j}, Poly::constant(n, sub.basis()(r, j)));
    f.sections.push_back({x, PolyOneForm(n)});
  }
  for (std::size_t r = 0; r < ann.dim(); ++r) {
    PolyOneForm a(n);
    for (std::size_t j = 0; j < n; ++j) a.set({j}, Poly::constant(n, ann.basis()(r, j)));
    f.sections.push_back({PolyVectorField(n), a});
  }
  return f;
}

dirac::DiracSubspace DiracFrame::at(std::span<const Scalar> x) const {
  Matrix rows(0, 2 * n_vars);
  for (const auto& s : sections) rows.append_row(section_row(s, x));
  return dirac::DiracSubspace::from_generators(n_vars, rows);
}

ClosureCheck frame_closure_check(const DiracFrame& frame, const PolyThreeForm& phi, const std::vector<Point>& points) {
  const std::size_t k = frame.sections.size();
  std::vector<dirac::DiracSubspace> fibers;
  fibers.reserve(points.size());
  for (const auto& p : points) fibers.push_back(frame.at(p));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      const auto b = courant_bracket(frame.sections[i], frame.sections[j], phi);
      for (std::size_t p = 0; p < points.size(); ++p)
        if (!fibers[p].space().contains(std::span<const Scalar>(section_row(b, points[p])))) return {false, i, j};
    }
  return {};
}

std::vector<Point> sample_points(std::size_t n, std::size_t extra, std::uint64_t seed) {
  std::vector<Point> pts;
  if (n <= 6) {
    std::size_t total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= 3;
    for (std::size_t code = 0; code < total; ++code) {
      Point p(n);
      std::size_t c = code;
      for (std::size_t i = 0; i < n; ++i, c /= 3) p[i] = Scalar(static_cast<long>(c % 3) - 1);
      pts.push_back(std::move(p));
    }
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> num(-7, 7), den(1, 5);
  for (std::size_t e = 0; e < extra; ++e) {
    Point p(n);
    for (auto& v : p) v = Scalar(num(rng), den(rng));
    pts.push_back(std::move(p));
  }
  return pts;
}

bool StructureConstants::is_antisymmetric() const {
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (!(get(i, j, k) + get(j, i, k)).is_zero()) return false;
  return true;
}

bool StructureConstants::satisfies_jacobi() const {
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t m = 0; m < n; ++m) {
          Scalar s;
          for (std::size_t l = 0; l < n; ++l)
            s += get(i, j, l) * get(l, k, m) + get(j, k, l) * get(l, i, m) + get(k, i, l) * get(l, j, m);
          if (!s.is_zero()) return false;
        }
  return true;
}

PolyBivector lie_poisson(const StructureConstants& c) {
  if (c.c.size() != c.n * c.n * c.n) throw Error(ErrorCode::DimensionMismatch, "structure constant array has wrong size");
  if (!c.is_antisymmetric()) throw Error(ErrorCode::NotSkew, "structure constants are not antisymmetric in (i, j)");
  PolyBivector pi(c.n);
  for (std::size_t i = 0; i < c.n; ++i)
    for (std::size_t j = i + 1; j < c.n; ++j) {
      Poly p(c.n);
      for (std::size_t k = 0; k < c.n; ++k) p += c.get(i, j, k) * Poly::variable(c.n, k);
      pi.set({i, j}, std::move(p));
    }
  return pi;
}

StructureConstants so3_constants() {
  auto c = StructureConstants::zero(3);
  for (std::size_t i = 0; i < 3; ++i) {
    const std::size_t j = (i + 1) % 3, k = (i + 2) % 3;
    c.set(i, j, k, Scalar(1));
    c.set(j, i, k, Scalar(-1));
  }
  return c;
}

PolyOneForm one_form_bracket(const PolyOneForm& alpha, const PolyOneForm& beta, const PolyBivector& pi) {
  const auto xa = sharp(pi, alpha);
  const auto xb = sharp(pi, beta);
  return lie_derivative(xa, beta) - lie_derivative(xb, alpha) - d(pair(beta, xa));
}

std::size_t leaf_rank(const PolyBivector& pi, std::span<const Scalar> x) { return exactlin::rank(evaluate(pi, x)); }

std::optional<Matrix> gauge_bivector_at(const PolyBivector& pi, const PolyTwoForm& b, std::span<const Scalar> x) {
  same_vars(pi.n_vars(), b.n_vars());
  const Matrix p = evaluate(pi, x);
  const Matrix bm = evaluate(b, x);
  auto inv = exactlin::inverse(Matrix::identity(p.rows()) + bm * p);
  if (!inv) return std::nullopt;
  Matrix out = p * *inv;
  if (!out.is_skew()) throw std::logic_error("gauged bivector is not skew");
  return out;
}

namespace {

struct Lift {
  std::vector<Scalar> x;
  std::vector<Scalar> x_shifted;
};

/// Some X with (X, a) in L, plus a second choice shifted by characteristic vectors.
std::optional<Lift> lift_covector(const dirac::DiracSubspace& l, const std::vector<Scalar>& a) {
  const std::size_t n = l.v_dim();
  const Matrix& b = l.basis();
  const Matrix xs = b.block(0, b.rows(), 0, n);
  const Matrix cov_t = b.block(0, b.rows(), n, 2 * n).transpose();
  auto c = exactlin::solve(cov_t, std::span<const Scalar>(a));
  if (!c) return std::nullopt;
  const Matrix null = exactlin::nullspace(cov_t);
  auto shifted = *c;
  for (std::size_t k = 0; k < null.rows(); ++k)
    for (std::size_t m = 0; m < shifted.size(); ++m) shifted[m] += Scalar(static_cast<long>(k + 2)) * null(k, m);
  const Matrix xt = xs.transpose();
  return Lift{xt.apply(*c), xt.apply(shifted)};
}

Scalar dot(const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
  Scalar s;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

AdmissibleBracket admissible_bracket(const Poly& f, const Poly& g, const DiracFrame& frame,
                                     const std::vector<Point>& points) {
  same_vars(f.n_vars(), frame.n_vars);
  same_vars(g.n_vars(), frame.n_vars);
  const auto df = d(f), dg = d(g);
  AdmissibleBracket out;
  for (const auto& p : points) {
    const auto l = frame.at(p);
    const auto a = evaluate(df, p), b = evaluate(dg, p);
    auto lf = lift_covector(l, a);
    auto lg = lift_covector(l, b);
    if (!lf || !lg) {
      out.admissible = false;
      out.witness = p;
      out.values.clear();
      return out;
    }
    // theta(X_f, X_g) = df(X_g).
    Scalar v = dot(a, lg->x);
    if (!(v == dot(a, lg->x_shifted)) || !(v == -dot(b, lf->x_shifted)))
      throw std::logic_error("admissible bracket depends on the lift");
    out.values.push_back(std::move(v));
  }
  return out;
}

}  // namespace poissonkit::multivec
