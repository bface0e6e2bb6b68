#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "poissonkit/exactlin/matrix.hpp"
#include "poissonkit/nctorus/param.hpp"

namespace poissonkit::nctorus {

using exactlin::Matrix;

/// A 2n x 2n matrix [[A, B], [C, D]] offered as an element of SO(n,n|Z).
struct SOnnMatrix {
  std::size_t n = 0;
  Matrix m;

  static SOnnMatrix from_blocks(const Matrix& a, const Matrix& b, const Matrix& c, const Matrix& d);
  static SOnnMatrix identity(std::size_t n);
  /// A = R, D = R^-T, B = C = 0.
  static SOnnMatrix rho(const Matrix& r);
  /// A = D = 1, B = N, C = 0.
  static SOnnMatrix nu(const Matrix& skew_n);

  Matrix a() const { return m.block(0, n, 0, n); }
  Matrix b() const { return m.block(0, n, n, 2 * n); }
  Matrix c() const { return m.block(n, 2 * n, 0, n); }
  Matrix d() const { return m.block(n, 2 * n, n, 2 * n); }

  friend SOnnMatrix operator*(const SOnnMatrix& g, const SOnnMatrix& h);
  friend bool operator==(const SOnnMatrix& g, const SOnnMatrix& h) { return g.n == h.n && g.m == h.m; }
};

/// Block identities, integrality and det = 1.
bool sonn_check(const SOnnMatrix& g);

/// (A pi + B)(C pi + D)^-1, or nullopt when C pi + D is singular (within the
/// tolerance for floating parameters). Throws Error(InvalidStructure) if g
/// fails sonn_check, Error(DimensionMismatch) on size mismatch.
std::optional<SkewParam> fractional_action(const SOnnMatrix& g, const SkewParam& pi);

/// Same, without re-running sonn_check; for generators known to be valid.
std::optional<SkewParam> fractional_action_unchecked(const SOnnMatrix& g, const SkewParam& pi);

struct Generator {
  std::string name;
  SOnnMatrix g;
};

/// The fixed generator set searched by orbit_bfs, in search order:
///   rho(I+Eij), rho(I-Eij)   transvections, i != j
///   rho(flip_i)             R = diag with -1 in slot i
///   nu(+Eij), nu(-Eij)       B = +-(Eij - Eji), i < j
///   sigma_ij                A = D = 1 - Eii - Ejj, B = C = Eij - Eji, i < j
/// Indices in names are 1-based. For n = 2, sigma_12 sends theta to -1/theta.
const std::vector<Generator>& generator_set(std::size_t n);
/// Throws Error(Parse) for an unknown name.
const Generator& generator_by_name(std::size_t n, const std::string& name);

/// Applies the word left to right (first name acts first). nullopt if some
/// intermediate product is undefined.
std::optional<SkewParam> replay(const SkewParam& pi, const std::vector<std::string>& word);

enum class OrbitStatus { Equivalent, Unknown };

struct OrbitResult {
  OrbitStatus status = OrbitStatus::Unknown;
  std::vector<std::string> word;
  std::size_t visited = 0;
  /// True when the node cap stopped the search before `depth` was exhausted.
  bool capped = false;
};

/// Breadth-first search from pi for pi2 through generator_set(n). Throws
/// Error(DimensionMismatch) on size mismatch and Error(DomainRejection) when
/// exact and floating parameters are mixed.
OrbitResult orbit_bfs(const SkewParam& pi, const SkewParam& pi2, std::size_t depth,
                      std::size_t node_cap = 200000);

enum class N2Verdict { Equivalent, Inequivalent };

struct N2Decision {
  N2Verdict verdict = N2Verdict::Inequivalent;
  std::string reason;
};

/// Decides whether theta1, theta2 lie in one GL(2,Z) fractional-linear orbit:
/// rationals form a single orbit; quadratic irrationals are equivalent iff
/// their continued fractions share a tail.
N2Decision n2_decide(const QuadraticScalar& theta1, const QuadraticScalar& theta2);

/// Random element of SO(n,n|Z) as a product of `length` generators and their
/// inverses; used by tests and the self-check.
SOnnMatrix random_sonn(std::size_t n, std::size_t length, std::uint64_t seed);

}  // namespace poissonkit::nctorus
