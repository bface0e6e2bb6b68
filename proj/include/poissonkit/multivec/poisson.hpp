#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "poissonkit/dirac/dirac.hpp"
#include "poissonkit/multivec/tensor.hpp"

namespace poissonkit::multivec {

using Point = std::vector<Scalar>;

// ---------------------------------------------------------------------------
// Calculus

/// X(f) = sum_i X_i d_i f.
Poly apply(const PolyVectorField& x, const Poly& f);
/// alpha(X).
Poly pair(const PolyOneForm& alpha, const PolyVectorField& x);
PolyVectorField lie_bracket(const PolyVectorField& x, const PolyVectorField& y);

PolyOneForm d(const Poly& f);

/// Exterior derivative, (d w)_{i0..ik} = sum_m (-1)^m d_{i_m} w_{i0..^i_m..ik}.
template <std::size_t K>
SkewTensorField<Variance::Covariant, K + 1> d(const SkewTensorField<Variance::Covariant, K>& w) {
  const std::size_t n = w.n_vars();
  SkewTensorField<Variance::Covariant, K + 1> out(n);
  for (const auto& idx : SkewTensorField<Variance::Covariant, K + 1>::increasing_indices(n)) {
    Poly s(n);
    for (std::size_t m = 0; m <= K; ++m) {
      std::array<std::size_t, K> rest{};
      for (std::size_t a = 0, b = 0; a <= K; ++a)
        if (a != m) rest[b++] = idx[a];
      Poly term = w.get(rest).derivative(idx[m]);
      s = (m % 2 == 0) ? s + term : s - term;
    }
    out.set(idx, std::move(s));
  }
  return out;
}

/// (i_X w)_{i2..ik} = sum_i X_i w_{i i2..ik}.
template <std::size_t K>
SkewTensorField<Variance::Covariant, K - 1> interior(const PolyVectorField& x,
                                                     const SkewTensorField<Variance::Covariant, K>& w) {
  static_assert(K >= 1);
  const std::size_t n = w.n_vars();
  SkewTensorField<Variance::Covariant, K - 1> out(n);
  for (const auto& [widx, wp] : w.components()) {
    // Each stored component contributes once per slot it can be contracted in.
    for (std::size_t slot = 0; slot < K; ++slot) {
      Poly xi = x.get({widx[slot]});
      if (xi.is_zero()) continue;
      std::array<std::size_t, K - 1> rest{};
      for (std::size_t a = 0, b = 0; a < K; ++a)
        if (a != slot) rest[b++] = widx[a];
      Poly c = xi * wp;
      out.add(rest, slot % 2 == 0 ? c : -c);
    }
  }
  return out;
}

/// L_X beta = i_X d beta + d(i_X beta).
PolyOneForm lie_derivative(const PolyVectorField& x, const PolyOneForm& beta);

// ---------------------------------------------------------------------------
// Poisson geometry

/// {f, g} = pi(df, dg) = sum pi_ij d_i f d_j g.
Poly poisson_bracket(const Poly& f, const Poly& g, const PolyBivector& pi);
/// pi~(alpha) = sum_ij alpha_i pi_ij d_j, so that beta(pi~(alpha)) = pi(alpha, beta).
PolyVectorField sharp(const PolyBivector& pi, const PolyOneForm& alpha);
/// X_f = {f, .} = pi~(df).
PolyVectorField hamiltonian_vf(const Poly& f, const PolyBivector& pi);
/// T_ijk = 2 sum_l (pi_li d_l pi_jk + pi_lj d_l pi_ki + pi_lk d_l pi_ij), i.e. twice the
/// jacobiator of the coordinate functions.
PolyTrivector schouten_square(const PolyBivector& pi);
/// (wedge^3 pi~ phi)_ijk = phi(pi~ dx_i, pi~ dx_j, pi~ dx_k).
PolyTrivector wedge3_sharp(const PolyBivector& pi, const PolyThreeForm& phi);

struct TwistedCheck {
  bool holds = false;
  /// 1/2 [pi, pi] - wedge^3 pi~ (phi).
  PolyTrivector residual;
};

/// Throws Error(NotClosed) when d phi != 0.
TwistedCheck twisted_poisson_check(const PolyBivector& pi, const PolyThreeForm& phi);
/// Untwisted: [pi, pi] = 0.
TwistedCheck jacobi_check(const PolyBivector& pi);

struct Section {
  PolyVectorField x;
  PolyOneForm alpha;
  friend bool operator==(const Section&, const Section&) = default;
};

/// ([X, Y], L_X beta - i_Y d alpha + phi(X, Y, .)).
Section courant_bracket(const Section& s1, const Section& s2, const PolyThreeForm& phi);

struct ClosureCheck {
  bool closed = true;
  /// First frame pair whose bracket leaves the graph.
  std::size_t witness_i = 0, witness_j = 0;
};

/// Exact test that the frame (pi~ dx_i, dx_i) of the graph is closed under
/// the phi-twisted Courant bracket.
ClosureCheck graph_closure_check(const PolyBivector& pi, const PolyThreeForm& phi);

/// A finite frame of sections spanning a Dirac structure pointwise.
struct DiracFrame {
  std::size_t n_vars = 0;
  std::vector<Section> sections;

  static DiracFrame graph_of(const PolyBivector& pi);
  static DiracFrame graph_of(const PolyTwoForm& omega);
  /// F (+) F° for a constant subspace F.
  static DiracFrame foliation(const exactlin::ExactSubspace& f);

  /// The fiber at x; throws if the frame does not span a Dirac subspace there.
  dirac::DiracSubspace at(std::span<const Scalar> x) const;
};

/// Closure of an arbitrary frame, tested at the given rational points by
/// exact membership of every bracket in the fiber.
ClosureCheck frame_closure_check(const DiracFrame& frame, const PolyThreeForm& phi,
                                 const std::vector<Point>& points);

/// Deterministic sample points: the grid {-1, 0, 1}^n followed by `extra`
/// seeded rationals.
std::vector<Point> sample_points(std::size_t n, std::size_t extra, std::uint64_t seed);

struct StructureConstants {
  std::size_t n = 0;
  /// c[(i * n + j) * n + k] = c_ij^k.
  std::vector<Scalar> c;

  Scalar get(std::size_t i, std::size_t j, std::size_t k) const { return c[(i * n + j) * n + k]; }
  void set(std::size_t i, std::size_t j, std::size_t k, const Scalar& v) { c[(i * n + j) * n + k] = v; }
  static StructureConstants zero(std::size_t n) { return {n, std::vector<Scalar>(n * n * n)}; }
  bool is_antisymmetric() const;
  /// Lie algebra Jacobi identity on the constants themselves.
  bool satisfies_jacobi() const;
};

/// {x_i, x_j} = sum_k c_ij^k x_k.
PolyBivector lie_poisson(const StructureConstants& c);
StructureConstants so3_constants();

/// [alpha, beta] = L_{pi~ alpha} beta - L_{pi~ beta} alpha - d pi(alpha, beta).
PolyOneForm one_form_bracket(const PolyOneForm& alpha, const PolyOneForm& beta, const PolyBivector& pi);

std::size_t leaf_rank(const PolyBivector& pi, std::span<const Scalar> x);

/// pi(x) (1 + B(x) pi(x))^{-1}, the matrix of pi~(1 + B~ pi~)^{-1}; nullopt when
/// 1 + B~ pi~ is singular at x.
std::optional<Matrix> gauge_bivector_at(const PolyBivector& pi, const PolyTwoForm& b, std::span<const Scalar> x);

struct AdmissibleBracket {
  bool admissible = true;
  /// First sample point where df or dg is not in pr_2(L).
  std::optional<Point> witness;
  /// theta(X_f, X_g) at each sample point (empty if not admissible).
  std::vector<Scalar> values;
};

/// {f, g} := theta(X_f, X_g) with (X_f, df) in L, sampled at `points`. The value
/// is recomputed with a second lift of X_f and X_g to confirm independence.
AdmissibleBracket admissible_bracket(const Poly& f, const Poly& g, const DiracFrame& frame,
                                     const std::vector<Point>& points);

}  // namespace poissonkit::multivec
