#pragma once

#include <cstddef>
#include <string>

#include "poissonkit/exactlin/gaussian.hpp"
#include "poissonkit/exactlin/matrix.hpp"
#include "poissonkit/exactlin/subspace.hpp"

namespace poissonkit::dirac {

using exactlin::ExactSubspace;
using exactlin::Matrix;
using exactlin::Scalar;

/// Symmetric pairing <(X,a),(Y,b)> = a(Y) + b(X) on F^n (+) F^n*, with vectors
/// stored as (X_1..X_n, a_1..a_n).
template <exactlin::ExactField F>
F pairing(std::span<const F> u, std::span<const F> v, std::size_t n) {
  F s(0);
  for (std::size_t j = 0; j < n; ++j) s = s + u[n + j] * v[j] + v[n + j] * u[j];
  return s;
}

/// Outcome of the maximal-isotropic test on a subspace of V (+) V*.
struct Certificate {
  std::size_t v_dim = 0;
  std::size_t dim = 0;
  bool maximal = false;
  bool isotropic = false;
  /// First basis pair (i, j) with nonzero pairing, if any.
  std::size_t witness_i = 0, witness_j = 0;

  bool valid() const { return maximal && isotropic; }
  std::string describe() const;
};

template <exactlin::ExactField F>
Certificate certify(const exactlin::BasicSubspace<F>& space, std::size_t v_dim) {
  Certificate c;
  c.v_dim = v_dim;
  c.dim = space.dim();
  c.maximal = space.ambient_dim() == 2 * v_dim && space.dim() == v_dim;
  c.isotropic = true;
  const auto& b = space.basis();
  for (std::size_t i = 0; i < b.rows() && c.isotropic; ++i)
    for (std::size_t j = i; j < b.rows(); ++j)
      if (!pairing<F>(b.row(i), b.row(j), v_dim).is_zero()) {
        c.isotropic = false;
        c.witness_i = i;
        c.witness_j = j;
        break;
      }
  return c;
}

/// A vector Dirac structure: a maximal isotropic subspace of V (+) V*. The
/// invariant is checked on construction.
class DiracSubspace {
 public:
  static DiracSubspace from_space(std::size_t v_dim, ExactSubspace space);
  static DiracSubspace from_generators(std::size_t v_dim, const Matrix& rows);

  std::size_t v_dim() const { return v_dim_; }
  const ExactSubspace& space() const { return space_; }
  const Matrix& basis() const { return space_.basis(); }

  friend bool operator==(const DiracSubspace&, const DiracSubspace&) = default;

 private:
  DiracSubspace(std::size_t v_dim, ExactSubspace space) : v_dim_(v_dim), space_(std::move(space)) {}

  std::size_t v_dim_ = 0;
  ExactSubspace space_;
};

/// The pair (R, theta): R = pr_1(L) and theta the skew form on R, written in
/// the canonical basis of R.
struct DiracPair {
  ExactSubspace range;
  Matrix theta;

  friend bool operator==(const DiracPair&, const DiracPair&) = default;
};

/// Graph of the bundle map beta(pi~(alpha)) = pi(alpha, beta).
DiracSubspace from_bivector(const Matrix& pi);
/// Graph of the bundle map omega~(v)(u) = omega(v, u).
DiracSubspace from_two_form(const Matrix& omega);
/// L = {(X, a) : X in R, a|_R = i_X theta}.
DiracSubspace from_pair(const DiracPair& p, std::size_t v_dim);
DiracPair to_pair(const DiracSubspace& l);
/// F (+) F° for a subspace F of V.
DiracSubspace foliation(const ExactSubspace& f);

/// pr_1(L).
ExactSubspace range(const DiracSubspace& l);
/// Characteristic subspace V ∩ L; cross-checked against ker(theta) inside R.
ExactSubspace kernel(const DiracSubspace& l);
/// ker(theta) computed from the pair, expressed in V.
ExactSubspace kernel_from_pair(const DiracSubspace& l);

/// L_W via the quotient L ∩ (W (+) V*) / L ∩ W°, in the coordinates of the
/// canonical basis of W.
DiracSubspace restrict_to(const DiracSubspace& l, const ExactSubspace& w);
/// L_W via the pair (R ∩ W, ι*theta); must agree with restrict_to.
DiracSubspace restrict_by_pair(const DiracSubspace& l, const ExactSubspace& w);

/// Forward image along f : V1 -> V2 (f has shape dim V2 x dim V1).
DiracSubspace pushforward(const Matrix& f, const DiracSubspace& l);
/// Backward image along f : V1 -> V2 of a structure on V2.
DiracSubspace pullback(const Matrix& f, const DiracSubspace& l);

struct RoundtripReport {
  bool pull_push_identity = false;  // f^* f_* L1 = L1
  bool kernel_contained = false;    // Ker f ⊆ Ker L1
  bool push_pull_identity = false;  // f_* f^* L2 = L2
  bool image_in_range = false;      // f(V1) ⊆ pr_1(L2)
  bool range_in_image = false;      // pr_1(L2) ⊆ f(V1)

  /// The two equivalences in the form usually quoted: the second one with
  /// f(V1) ⊆ R. That form fails already for f = id and L2 = {0} (+) V*.
  bool laws_hold() const {
    return pull_push_identity == kernel_contained && push_pull_identity == image_in_range;
  }
  /// Second equivalence with R ⊆ f(V1), which is what f_* f^* L2 = L2 amounts to.
  bool corrected_laws_hold() const {
    return pull_push_identity == kernel_contained && push_pull_identity == range_in_image;
  }
};

RoundtripReport roundtrip_laws(const Matrix& f, const DiracSubspace& source, const DiracSubspace& target);

/// tau_B(L) = {(X, a + B~(X))}.
DiracSubspace gauge(const DiracSubspace& l, const Matrix& b);

/// Fiber of the Cartan-Dirac structure at a group element whose adjoint
/// matrix is `ad`, using v_r -> v, v_l -> ad^{-1} v:
/// span{((ad - 1)w, 1/2 beta((ad + 1)w, .))}.
DiracSubspace cartan_dirac_fiber(const Matrix& ad, const Matrix& beta);
/// 1/2 beta((ad^{-1} - ad)v, w) on im(ad - 1), in the canonical basis of the
/// range, with v, w any preimages under ad - 1.
Matrix ghjw_form(const Matrix& ad, const Matrix& beta);

/// Classical symplectic form (omega_ij) = (-pi_ij)^{-1} of a nondegenerate pi.
Matrix symplectic_form_of(const Matrix& pi);
/// The 2-form whose graph equals the graph of pi: omega~ = pi~^{-1}.
Matrix graph_matched_form(const Matrix& pi);

/// Complexified maximal isotropic subspace of (V (+) V*) ⊗ C.
class ComplexDiracSubspace {
 public:
  using Space = exactlin::BasicSubspace<exactlin::GaussianRational>;

  static ComplexDiracSubspace from_space(std::size_t v_dim, Space space);

  std::size_t v_dim() const { return v_dim_; }
  const Space& space() const { return space_; }
  ComplexDiracSubspace conjugate() const;

  friend bool operator==(const ComplexDiracSubspace&, const ComplexDiracSubspace&) = default;

 private:
  ComplexDiracSubspace(std::size_t v_dim, Space space) : v_dim_(v_dim), space_(std::move(space)) {}

  std::size_t v_dim_ = 0;
  Space space_;
};

ComplexDiracSubspace complexify(const DiracSubspace& l);
/// i-eigenspace of (X, a) -> (-J X, J^* a) for J with J^2 = -1.
ComplexDiracSubspace from_complex_structure(const Matrix& j);
/// i-eigenspace of (X, a) -> (-omega~^{-1}(a), omega~(X)) for nondegenerate omega.
ComplexDiracSubspace from_symplectic(const Matrix& omega);
/// L ∩ conj(L) = {0}.
bool is_generalized_complex(const ComplexDiracSubspace& lc);

}  // namespace poissonkit::dirac
