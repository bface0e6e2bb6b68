#include "poissonkit/dirac/dirac.hpp"

#include <sstream>
#include <stdexcept>

namespace poissonkit::dirac {

using exactlin::annihilator;
using exactlin::GaussianRational;
using exactlin::subspace_intersect;

namespace {

constexpr std::size_t kNoCap = 1u << 20;

void require_skew(const Matrix& m, const char* what) {
  if (!m.is_skew()) throw Error(ErrorCode::NotSkew, std::string(what) + " must be a square skew-symmetric matrix");
}

/// [[a, 0], [0, b]].
Matrix diag_blocks(const Matrix& a, const Matrix& b) {
  return exactlin::block_matrix(a, Matrix(a.rows(), b.cols()), Matrix(b.rows(), a.cols()), b);
}

/// Rows (X, a) of a matrix with 2n columns.
Matrix stack_rows(std::size_t n, const std::vector<std::vector<Scalar>>& xs,
                  const std::vector<std::vector<Scalar>>& as) {
  Matrix g(0, 2 * n);
  for (std::size_t k = 0; k < xs.size(); ++k) {
    std::vector<Scalar> row = xs[k];
    row.insert(row.end(), as[k].begin(), as[k].end());
    g.append_row(row);
  }
  return g;
}

/// Columns (rows) of the canonical basis of span(vs) expressed through the
/// independent vectors vs: returns T with canonical_b = sum_a T(b, a) vs_a.
Matrix change_to_canonical(const Matrix& vs, const ExactSubspace& span) {
  Matrix t(span.dim(), vs.rows());
  const Matrix vt = vs.transpose();
  for (std::size_t b = 0; b < span.dim(); ++b) {
    auto sol = exactlin::solve(vt, span.basis().row(b));
    if (!sol) throw std::logic_error("canonical basis vector outside the span");
    for (std::size_t a = 0; a < vs.rows(); ++a) t(b, a) = (*sol)[a];
  }
  return t;
}

/// Selection of the pivot coordinates of a subspace: coordinates in its
/// canonical basis of any vector lying in it.
Matrix coordinate_map(const ExactSubspace& w) {
  Matrix c(w.dim(), w.ambient_dim());
  for (std::size_t i = 0; i < w.dim(); ++i) c(i, w.pivots()[i]) = Scalar(1);
  return c;
}

}  // namespace

std::string Certificate::describe() const {
  std::ostringstream os;
  os << "dim(L) = " << dim << ", dim(V) = " << v_dim << ": " << (maximal ? "maximal" : "NOT maximal")
     << "; pairing on basis: " << (isotropic ? "all zero (isotropic)" : "nonzero (NOT isotropic)");
  if (!isotropic) os << " at basis pair (" << witness_i << ", " << witness_j << ")";
  return os.str();
}

DiracSubspace DiracSubspace::from_space(std::size_t v_dim, ExactSubspace space) {
  auto cert = certify(space, v_dim);
  if (!cert.valid()) throw Error(ErrorCode::InvalidStructure, "not a vector Dirac structure: " + cert.describe());
  return DiracSubspace(v_dim, std::move(space));
}

DiracSubspace DiracSubspace::from_generators(std::size_t v_dim, const Matrix& rows) {
  return from_space(v_dim, ExactSubspace::span(2 * v_dim, rows, std::max<std::size_t>(2 * v_dim, exactlin::kDefaultAmbientCap)));
}

DiracSubspace from_bivector(const Matrix& pi) {
  require_skew(pi, "bivector");
  const std::size_t n = pi.rows();
  // pi~(dx_i) = sum_j pi_ij d/dx_j, i.e. row i of pi.
  Matrix g(0, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Scalar> row(2 * n);
    for (std::size_t j = 0; j < n; ++j) row[j] = pi(i, j);
    row[n + i] = Scalar(1);
    g.append_row(row);
  }
  return DiracSubspace::from_generators(n, g);
}

DiracSubspace from_two_form(const Matrix& omega) {
  require_skew(omega, "2-form");
  const std::size_t n = omega.rows();
  // omega~(e_i) = sum_j omega_ij dx_j.
  Matrix g(0, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Scalar> row(2 * n);
    row[i] = Scalar(1);
    for (std::size_t j = 0; j < n; ++j) row[n + j] = omega(i, j);
    g.append_row(row);
  }
  return DiracSubspace::from_generators(n, g);
}

DiracSubspace from_pair(const DiracPair& p, std::size_t v_dim) {
  const auto& r = p.range;
  if (r.ambient_dim() != v_dim) throw Error(ErrorCode::DimensionMismatch, "range lives in a different space");
  if (p.theta.rows() != r.dim() || p.theta.cols() != r.dim())
    throw Error(ErrorCode::DimensionMismatch, "theta size differs from dim(range)");
  require_skew(p.theta, "theta");
  std::vector<std::vector<Scalar>> xs, as;
  for (std::size_t i = 0; i < r.dim(); ++i) {
    xs.push_back(r.basis().row_vector(i));
    // Pivot coordinates make a(r_j) = theta(r_i, r_j).
    std::vector<Scalar> a(v_dim);
    for (std::size_t j = 0; j < r.dim(); ++j) a[r.pivots()[j]] = p.theta(i, j);
    as.push_back(std::move(a));
  }
  const auto ann = annihilator(r);
  for (std::size_t i = 0; i < ann.dim(); ++i) {
    xs.emplace_back(v_dim, Scalar(0));
    as.push_back(ann.basis().row_vector(i));
  }
  return DiracSubspace::from_generators(v_dim, stack_rows(v_dim, xs, as));
}

ExactSubspace range(const DiracSubspace& l) {
  const std::size_t n = l.v_dim();
  return ExactSubspace::span(n, l.basis().block(0, l.basis().rows(), 0, n), kNoCap);
}

DiracPair to_pair(const DiracSubspace& l) {
  const std::size_t n = l.v_dim();
  const Matrix& b = l.basis();
  const Matrix xs = b.block(0, b.rows(), 0, n);
  const Matrix as = b.block(0, b.rows(), n, 2 * n);
  const ExactSubspace r = range(l);
  const Matrix xt = xs.transpose();
  const Matrix lifts_kernel = exactlin::nullspace(xt);

  auto lift = [&](std::span<const Scalar> x, bool shifted) {
    auto c = exactlin::solve(xt, x);
    if (!c) throw std::logic_error("range vector without a lift");
    if (shifted)
      for (std::size_t k = 0; k < lifts_kernel.rows(); ++k)
        for (std::size_t m = 0; m < c->size(); ++m) (*c)[m] += Scalar(static_cast<long>(k + 1)) * lifts_kernel(k, m);
    std::vector<Scalar> alpha(n);
    for (std::size_t m = 0; m < c->size(); ++m)
      if (!(*c)[m].is_zero())
        for (std::size_t j = 0; j < n; ++j) alpha[j] += (*c)[m] * as(m, j);
    return alpha;
  };

  const std::size_t k = r.dim();
  Matrix theta(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    const auto alpha = lift(r.basis().row(i), false);
    const auto alpha2 = lift(r.basis().row(i), true);
    for (std::size_t j = 0; j < k; ++j) {
      Scalar t1, t2;
      for (std::size_t m = 0; m < n; ++m) {
        t1 += alpha[m] * r.basis()(j, m);
        t2 += alpha2[m] * r.basis()(j, m);
      }
      if (!(t1 == t2)) throw Error(ErrorCode::InconsistentLift, "theta depends on the choice of covector lift");
      theta(i, j) = t1;
    }
  }
  return {r, theta};
}

DiracSubspace foliation(const ExactSubspace& f) {
  const std::size_t n = f.ambient_dim();
  const auto ann = annihilator(f);
  Matrix g(0, 2 * n);
  for (std::size_t i = 0; i < f.dim(); ++i) {
    auto row = f.basis().row_vector(i);
    row.resize(2 * n);
    g.append_row(row);
  }
  for (std::size_t i = 0; i < ann.dim(); ++i) {
    std::vector<Scalar> row(n);
    auto a = ann.basis().row_vector(i);
    row.insert(row.end(), a.begin(), a.end());
    g.append_row(row);
  }
  return DiracSubspace::from_generators(n, g);
}

ExactSubspace kernel(const DiracSubspace& l) {
  const std::size_t n = l.v_dim();
  Matrix vee(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) vee(i, i) = Scalar(1);
  const auto in_v = subspace_intersect(l.space(), ExactSubspace::span(2 * n, vee, kNoCap));
  auto ker = ExactSubspace::span(n, in_v.basis().block(0, in_v.dim(), 0, n), kNoCap);
  if (!(ker == kernel_from_pair(l))) throw std::logic_error("V∩L differs from ker(theta)");
  return ker;
}

ExactSubspace kernel_from_pair(const DiracSubspace& l) {
  const auto p = to_pair(l);
  const std::size_t n = l.v_dim();
  if (p.range.dim() == 0) return ExactSubspace::zero(n);
  const Matrix null = exactlin::nullspace(p.theta);  // theta skew: left and right kernels agree
  return ExactSubspace::span(n, null * p.range.basis(), kNoCap);
}

DiracSubspace restrict_to(const DiracSubspace& l, const ExactSubspace& w) {
  const std::size_t n = l.v_dim();
  if (w.ambient_dim() != n) throw Error(ErrorCode::DimensionMismatch, "W lives in a different space");
  // W (+) V* inside V (+) V*.
  Matrix gens(0, 2 * n);
  for (std::size_t i = 0; i < w.dim(); ++i) {
    auto row = w.basis().row_vector(i);
    row.resize(2 * n);
    gens.append_row(row);
  }
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Scalar> row(2 * n);
    row[n + j] = Scalar(1);
    gens.append_row(row);
  }
  const auto k = subspace_intersect(l.space(), ExactSubspace::span(2 * n, gens, kNoCap));
  // (X, a) -> (coords_W(X), iota^* a); the second block has kernel W°.
  const auto [restriction, wdim] = exactlin::quotient_map(n, annihilator(w));
  const Matrix to_w = diag_blocks(coordinate_map(w), restriction);
  return DiracSubspace::from_space(wdim, exactlin::image(to_w, k));
}

DiracSubspace restrict_by_pair(const DiracSubspace& l, const ExactSubspace& w) {
  const std::size_t n = l.v_dim();
  if (w.ambient_dim() != n) throw Error(ErrorCode::DimensionMismatch, "W lives in a different space");
  const auto p = to_pair(l);
  const auto rw = subspace_intersect(p.range, w);
  // theta restricted to R∩W, on the canonical basis of R∩W (in V).
  const Matrix in_r = rw.basis() * coordinate_map(p.range).transpose();
  const Matrix theta_rw = in_r * p.theta * in_r.transpose();
  // Move to W coordinates and re-canonicalize the basis there.
  const Matrix vs = rw.basis() * coordinate_map(w).transpose();
  const auto range_w = ExactSubspace::span(w.dim(), vs, kNoCap);
  const Matrix t = change_to_canonical(vs, range_w);
  return from_pair({range_w, t * theta_rw * t.transpose()}, w.dim());
}

DiracSubspace pushforward(const Matrix& f, const DiracSubspace& l) {
  const std::size_t n = l.v_dim();
  if (f.cols() != n) throw Error(ErrorCode::DimensionMismatch, "pushforward: map domain differs from dim V");
  const std::size_t m = f.rows();
  // {(X, b) : (X, f^T b) in L} then (X, b) -> (f X, b).
  const Matrix lift = diag_blocks(Matrix::identity(n), f.transpose());
  const Matrix push = diag_blocks(f, Matrix::identity(m));
  return DiracSubspace::from_space(m, exactlin::image(push, exactlin::preimage(lift, l.space())));
}

DiracSubspace pullback(const Matrix& f, const DiracSubspace& l) {
  const std::size_t m = l.v_dim();
  if (f.rows() != m) throw Error(ErrorCode::DimensionMismatch, "pullback: map codomain differs from dim V");
  const std::size_t n = f.cols();
  // {(X, b) : (f X, b) in L} then (X, b) -> (X, f^T b).
  const Matrix push = diag_blocks(f, Matrix::identity(m));
  const Matrix lift = diag_blocks(Matrix::identity(n), f.transpose());
  return DiracSubspace::from_space(n, exactlin::image(lift, exactlin::preimage(push, l.space())));
}

RoundtripReport roundtrip_laws(const Matrix& f, const DiracSubspace& source, const DiracSubspace& target) {
  RoundtripReport r;
  r.pull_push_identity = pullback(f, pushforward(f, source)) == source;
  r.kernel_contained = kernel(source).contains(exactlin::kernel_of(f));
  r.push_pull_identity = pushforward(f, pullback(f, target)) == target;
  r.image_in_range = range(target).contains(exactlin::column_space(f));
  r.range_in_image = exactlin::column_space(f).contains(range(target));
  return r;
}

DiracSubspace gauge(const DiracSubspace& l, const Matrix& b) {
  require_skew(b, "gauge 2-form");
  const std::size_t n = l.v_dim();
  if (b.rows() != n) throw Error(ErrorCode::DimensionMismatch, "gauge 2-form size differs from dim V");
  // Column convention: (X, a) -> (X, a + b~ X) with b~ = b^T.
  const Matrix shear = exactlin::block_matrix(Matrix::identity(n), Matrix(n, n), b.transpose(), Matrix::identity(n));
  return DiracSubspace::from_space(n, exactlin::image(shear, l.space()));
}

namespace {

void check_cartan_inputs(const Matrix& ad, const Matrix& beta) {
  if (!ad.is_square() || !beta.is_square() || ad.rows() != beta.rows())
    throw Error(ErrorCode::DimensionMismatch, "ad and beta must be square of the same size");
  if (!beta.is_symmetric()) throw Error(ErrorCode::NotSymmetric, "beta must be symmetric");
  if (exactlin::determinant(beta).is_zero()) throw Error(ErrorCode::InvalidStructure, "beta must be nondegenerate");
  if (exactlin::determinant(ad).is_zero()) throw Error(ErrorCode::InvalidStructure, "ad must be invertible");
  if (!(ad.transpose() * beta * ad == beta)) throw Error(ErrorCode::NotInvariant, "beta is not invariant under ad");
}

}  // namespace

DiracSubspace cartan_dirac_fiber(const Matrix& ad, const Matrix& beta) {
  check_cartan_inputs(ad, beta);
  const std::size_t n = ad.rows();
  const Matrix id = Matrix::identity(n);
  const Matrix x_part = ad - id;
  const Matrix a_part = Scalar(1, 2) * (beta * (ad + id));
  Matrix g(0, 2 * n);
  for (std::size_t k = 0; k < n; ++k) {
    auto row = x_part.col_vector(k);
    auto a = a_part.col_vector(k);
    row.insert(row.end(), a.begin(), a.end());
    g.append_row(row);
  }
  return DiracSubspace::from_generators(n, g);
}

Matrix ghjw_form(const Matrix& ad, const Matrix& beta) {
  check_cartan_inputs(ad, beta);
  const std::size_t n = ad.rows();
  const Matrix a_minus = ad - Matrix::identity(n);
  const auto r = exactlin::column_space(a_minus);
  const Matrix diff = *exactlin::inverse(ad) - ad;
  Matrix pre(r.dim(), n);
  for (std::size_t i = 0; i < r.dim(); ++i) {
    auto v = exactlin::solve(a_minus, r.basis().row(i));
    for (std::size_t j = 0; j < n; ++j) pre(i, j) = (*v)[j];
  }
  // theta_ij = 1/2 beta(diff v_i, v_j).
  return Scalar(1, 2) * (pre * diff.transpose() * beta * pre.transpose());
}

Matrix symplectic_form_of(const Matrix& pi) {
  require_skew(pi, "bivector");
  auto inv = exactlin::inverse(-pi);
  if (!inv) throw Error(ErrorCode::InvalidStructure, "bivector is degenerate");
  return *inv;
}

Matrix graph_matched_form(const Matrix& pi) {
  require_skew(pi, "bivector");
  auto inv = exactlin::inverse(pi);
  if (!inv) throw Error(ErrorCode::InvalidStructure, "bivector is degenerate");
  return *inv;
}

// ---------------------------------------------------------------------------
// Complex Dirac structures

namespace {

using CMatrix = exactlin::BasicMatrix<GaussianRational>;

CMatrix to_complex(const Matrix& m) {
  CMatrix c(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) c(i, j) = GaussianRational(m(i, j));
  return c;
}

/// ker(M - i) for a real 2n x 2n matrix acting on column vectors (X, a).
ComplexDiracSubspace i_eigenspace(const Matrix& m, std::size_t n) {
  CMatrix shifted = to_complex(m);
  for (std::size_t k = 0; k < 2 * n; ++k) shifted(k, k) = shifted(k, k) - GaussianRational::i();
  return ComplexDiracSubspace::from_space(n, exactlin::kernel_of(shifted));
}

}  // namespace

ComplexDiracSubspace ComplexDiracSubspace::from_space(std::size_t v_dim, Space space) {
  auto cert = certify(space, v_dim);
  if (!cert.valid())
    throw Error(ErrorCode::InvalidStructure, "not a complex Dirac structure: " + cert.describe());
  return ComplexDiracSubspace(v_dim, std::move(space));
}

ComplexDiracSubspace ComplexDiracSubspace::conjugate() const {
  CMatrix b = space_.basis();
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) b(i, j) = b(i, j).conj();
  return ComplexDiracSubspace(v_dim_, Space::span(space_.ambient_dim(), b, kNoCap));
}

ComplexDiracSubspace complexify(const DiracSubspace& l) {
  return ComplexDiracSubspace::from_space(l.v_dim(), ComplexDiracSubspace::Space::span(2 * l.v_dim(), to_complex(l.basis()), kNoCap));
}

ComplexDiracSubspace from_complex_structure(const Matrix& j) {
  if (!j.is_square()) throw Error(ErrorCode::DimensionMismatch, "J must be square");
  const std::size_t n = j.rows();
  if (!(j * j == -Matrix::identity(n))) throw Error(ErrorCode::InvalidStructure, "J must satisfy J^2 = -1");
  // J^* a = a o J, i.e. J^T a on components.
  return i_eigenspace(exactlin::block_matrix(-j, Matrix(n, n), Matrix(n, n), j.transpose()), n);
}

ComplexDiracSubspace from_symplectic(const Matrix& omega) {
  require_skew(omega, "symplectic form");
  const std::size_t n = omega.rows();
  const Matrix tilde = omega.transpose();  // omega~ X = omega^T X on components
  auto inv = exactlin::inverse(tilde);
  if (!inv) throw Error(ErrorCode::InvalidStructure, "symplectic form must be nondegenerate");
  return i_eigenspace(exactlin::block_matrix(Matrix(n, n), -*inv, tilde, Matrix(n, n)), n);
}

bool is_generalized_complex(const ComplexDiracSubspace& lc) {
  return subspace_intersect(lc.space(), lc.conjugate().space()).is_zero();
}

}  // namespace poissonkit::dirac
