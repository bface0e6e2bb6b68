#pragma once

#include <optional>
#include <string>
#include <vector>

#include "poissonkit/tss/field.hpp"

namespace poissonkit::tss {

struct TraceParams {
  std::size_t grid = 512;
  /// Every polished point satisfies |f| < curve_tol.
  double curve_tol = 1e-12;
  /// Zeros with |grad f| below this are degenerate.
  double gradient_min = 1e-6;
};

/// A closed zero curve. `points` is a continuous lift to the plane, ordered
/// along the modular vector field X = (f_y, -f_x); the closing segment runs
/// from the last point back to points.front() + homology.
struct ZeroCurve {
  std::vector<Vec2> points;
  std::array<long, 2> homology{0, 0};
  /// Grid node indices (row-major) on the f > 0 and f < 0 sides.
  std::size_t positive_node = 0, negative_node = 0;
};

/// Marching squares on the node grid x_i = x0 + (i + 1/2) h, with saddle cells
/// resolved by the centre value, crossings polished on their grid edge.
/// Throws Error(DomainRejection) for a degenerate zero (critical point on the
/// zero set) or a curve leaving a non-periodic chart, Error(NonConvergence)
/// if polishing misses curve_tol.
std::vector<ZeroCurve> find_zero_curves(const Field2D& f, const TraceParams& params = {});
std::vector<ZeroCurve> find_zero_curves(const TorusFunction& f, const TraceParams& params = {});

/// The closed polyline including the closing point.
std::vector<Vec2> closed_points(const ZeroCurve& c);

/// Period of the modular vector field along the curve, the line integral of
/// ds / |grad f|. Trapezoid sums on the traced polyline and on its bisection
/// (midpoints projected back onto the curve), combined by Richardson.
double modular_period(const ZeroCurve& curve, const Field2D& f);
double modular_period(const ZeroCurve& curve, const TorusFunction& f);

/// Return time of the RK4 flow of X = (f_y, -f_x) started on the curve.
/// Throws Error(NonConvergence) if no return before max_time.
double modular_period_by_flow(const ZeroCurve& curve, const Field2D& f, double dt = 1e-4, double max_time = 1e3);

struct TSSVertex {
  long genus = 0;
  /// +1 where f > 0, -1 where f < 0, 0 for an f-free component (never here).
  int sign = 0;
  long euler_characteristic = 0;
  std::size_t boundary_curves = 0;
};

struct TSSEdge {
  /// Oriented from the f < 0 component to the f > 0 component.
  std::size_t from = 0, to = 0;
  double period = 0;
  std::array<long, 2> homology{0, 0};
};

struct TSSGraph {
  std::vector<TSSVertex> vertices;
  std::vector<TSSEdge> edges;
};

/// Components of {f != 0}, their genus from the Euler characteristic of the
/// grid complex, and one edge per zero curve. Throws Error(DomainRejection)
/// for f with zeros but no sign change.
TSSGraph build_graph(const TorusFunction& f, const TraceParams& params = {});

struct Isomorphism {
  bool isomorphic = false;
  std::vector<std::size_t> vertex_map;
  std::vector<std::size_t> edge_map;
  /// Why not, when not.
  std::string reason;
};

/// Backtracking search for a vertex bijection preserving genus and sign with
/// edges matched by orientation and period within period_tol.
Isomorphism graphs_isomorphic(const TSSGraph& g1, const TSSGraph& g2, double period_tol = 1e-6);

struct VolumeResult {
  double value = 0;
  /// Truncated integrals, one per eps.
  std::vector<double> truncated;
  /// Richardson tableau diagonal.
  std::vector<double> extrapolated;
  /// Always "principal value": the regularization is a choice.
  std::string regularization = "principal value";
};

/// Principal value of the integral of 1/f over the torus: integrals over
/// {|f| > eps} for each eps (a geometric sequence with ratio 1/2), combined by
/// Richardson extrapolation in eps. The inner y-integrals split at the exact
/// roots of f = +-eps. Throws Error(NonConvergence) when the last two
/// extrapolants differ by more than tol.
VolumeResult regularized_volume(const TorusFunction& f, const std::vector<double>& eps_sequence, std::size_t nx = 256,
                                double tol = 1e-6);
/// eps = 1e-2 * 2^-k, k = 0..5.
std::vector<double> default_eps_sequence();

std::string to_dot(const TSSGraph& g);

}  // namespace poissonkit::tss
