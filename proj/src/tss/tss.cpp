#include "poissonkit/tss/tss.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "poissonkit/error.hpp"

namespace poissonkit::tss {

namespace {

double norm(const Vec2& v) { return std::hypot(v[0], v[1]); }

/// Root of g on [0, 1] given a sign change, by TOMS 748.
double bracketed_root(const std::function<double(double)>& g, double g0, double g1) {
  if (g0 == 0) return 0;
  if (g1 == 0) return 1;
  std::uintmax_t iters = 200;
  auto [a, b] = boost::math::tools::toms748_solve(g, 0.0, 1.0, g0, g1, boost::math::tools::eps_tolerance<double>(52),
                                                  iters);
  return 0.5 * (a + b);
}

class Grid {
 public:
  Grid(const Field2D& f, std::size_t n) : f_(f), n_(n) {
    if (n < 4) throw Error(ErrorCode::Config, "grid must have at least 4 nodes per side");
    hx_ = (f.x1 - f.x0) / static_cast<double>(n);
    hy_ = (f.y1 - f.y0) / static_cast<double>(n);
    values_.resize(n * n);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i) values_[j * n + i] = f.value(x(i), y(j));
  }

  std::size_t n() const { return n_; }
  std::size_t cells() const { return f_.periodic ? n_ : n_ - 1; }
  double hx() const { return hx_; }
  double hy() const { return hy_; }
  double x(std::size_t i) const { return f_.x0 + (static_cast<double>(i) + 0.5) * hx_; }
  double y(std::size_t j) const { return f_.y0 + (static_cast<double>(j) + 0.5) * hy_; }
  std::size_t wrap(std::size_t i) const { return i % n_; }
  std::size_t node(std::size_t i, std::size_t j) const { return wrap(j) * n_ + wrap(i); }
  double value(std::size_t i, std::size_t j) const { return values_[node(i, j)]; }
  int sign(std::size_t i, std::size_t j) const { return value(i, j) >= 0 ? 1 : -1; }

 private:
  const Field2D& f_;
  std::size_t n_;
  double hx_, hy_;
  std::vector<double> values_;
};

/// Edge ids: 2 * node for the edge to the +x neighbour, 2 * node + 1 for +y.
struct Crossing {
  Vec2 point;
  std::size_t positive_node, negative_node;
};

struct Tracer {
  const Field2D& f;
  const TraceParams& params;
  Grid grid;
  std::unordered_map<std::size_t, Crossing> crossings;
  /// Two link slots per crossing edge: the other edge of the segment.
  std::unordered_map<std::size_t, std::vector<std::size_t>> links;
  double critical_tol;

  Tracer(const Field2D& field, const TraceParams& p)
      : f(field), params(p), grid(field, p.grid), critical_tol(std::max(1e3 * p.curve_tol, 1e-9)) {}

  const Crossing& crossing(std::size_t edge) {
    auto it = crossings.find(edge);
    if (it != crossings.end()) return it->second;
    const std::size_t node = edge / 2, i = node % grid.n(), j = node / grid.n();
    const bool horizontal = edge % 2 == 0;
    const std::size_t i2 = horizontal ? i + 1 : i, j2 = horizontal ? j : j + 1;
    const Vec2 p0{grid.x(i), grid.y(j)};
    const Vec2 step{horizontal ? grid.hx() : 0, horizontal ? 0 : grid.hy()};
    auto g = [&](double t) { return f.value(p0[0] + t * step[0], p0[1] + t * step[1]); };
    const double t = bracketed_root(g, grid.value(i, j), grid.value(i2, j2));
    Crossing c{{p0[0] + t * step[0], p0[1] + t * step[1]}, grid.node(i, j), grid.node(i2, j2)};
    if (grid.sign(i, j) < 0) std::swap(c.positive_node, c.negative_node);
    const double fv = std::abs(f.value(c.point[0], c.point[1]));
    if (!(fv < params.curve_tol))
      throw Error(ErrorCode::NonConvergence, "zero polishing reached only |f| = " + std::to_string(fv));
    const double gn = norm(f.gradient(c.point[0], c.point[1]));
    if (gn < params.gradient_min)
      throw Error(ErrorCode::DomainRejection, "degenerate zero: |grad f| = " + std::to_string(gn) + " at (" +
                                                  std::to_string(c.point[0]) + ", " + std::to_string(c.point[1]) +
                                                  "); not a topologically stable structure");
    return crossings.emplace(edge, c).first->second;
  }

  void link(std::size_t a, std::size_t b) {
    crossing(a);
    crossing(b);
    links[a].push_back(b);
    links[b].push_back(a);
  }

  [[noreturn]] void reject_critical(double x, double y, double v) const {
    throw Error(ErrorCode::DomainRejection, "degenerate zero: critical point with f = " + std::to_string(v) + " at (" +
                                                std::to_string(x) + ", " + std::to_string(y) +
                                                "); not a topologically stable structure");
  }

  /// Newton iteration on grad f = 0 from (x, y). Rejects if it lands on the
  /// zero set near the start.
  void check_saddle(double x, double y) const {
    const double x0 = x, y0 = y, reach = 2 * std::max(grid.hx(), grid.hy());
    for (int it = 0; it < 40; ++it) {
      const Vec2 g = f.gradient(x, y);
      if (norm(g) < 1e-13) break;
      const Hess2 h = f.hessian(x, y);
      const double det = h[0] * h[3] - h[1] * h[2];
      if (std::abs(det) < 1e-300) return;
      x -= (h[3] * g[0] - h[1] * g[1]) / det;
      y -= (-h[2] * g[0] + h[0] * g[1]) / det;
      if (std::hypot(x - x0, y - y0) > reach) return;
    }
    const double v = f.value(x, y);
    if (std::abs(v) < critical_tol && norm(f.gradient(x, y)) < params.gradient_min) reject_critical(x, y, v);
  }

  /// Nodes with no sign change nearby: follow -f grad f / |grad f|^2 towards a
  /// possible zero.
  void check_tangential(std::size_t i, std::size_t j) const {
    double x = grid.x(i), y = grid.y(j);
    const double r = std::sqrt(2.0) * std::max(grid.hx(), grid.hy());
    const double v0 = grid.value(i, j), reach = 0.9 * std::min(grid.hx(), grid.hy());
    if (std::abs(v0) - norm(f.gradient(x, y)) * r - 0.5 * f.hessian_bound * r * r > 0) return;
    for (int it = 0; it < 80; ++it) {
      const double v = f.value(x, y);
      const Vec2 g = f.gradient(x, y);
      const double gg = g[0] * g[0] + g[1] * g[1];
      if (std::abs(v) < critical_tol) break;
      if (gg == 0) return;
      x -= v * g[0] / gg;
      y -= v * g[1] / gg;
      // Beyond this distance a regular zero would show a sign change among the neighbours.
      if (std::hypot(x - grid.x(i), y - grid.y(j)) > reach) return;
    }
    // A regular zero always comes with a sign change; none was seen here.
    const double v = f.value(x, y);
    if (std::abs(v) < critical_tol)
      throw Error(ErrorCode::DomainRejection, "zero without sign change near (" + std::to_string(x) + ", " +
                                                  std::to_string(y) +
                                                  "): degenerate, or finer than the grid resolves");
  }

  void march() {
    const std::size_t n = grid.n(), m = grid.cells();
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t i = 0; i < m; ++i) {
        const int s[4] = {grid.sign(i, j), grid.sign(i + 1, j), grid.sign(i + 1, j + 1), grid.sign(i, j + 1)};
        const std::size_t e[4] = {2 * grid.node(i, j), 2 * grid.node(i + 1, j) + 1, 2 * grid.node(i, j + 1),
                                  2 * grid.node(i, j) + 1};
        std::vector<std::size_t> cut;
        for (int k = 0; k < 4; ++k)
          if (s[k] != s[(k + 1) % 4]) cut.push_back(e[k]);
        if (cut.size() == 2) {
          link(cut[0], cut[1]);
        } else if (cut.size() == 4) {
          const double cx = grid.x(i) + grid.hx() / 2, cy = grid.y(j) + grid.hy() / 2;
          check_saddle(cx, cy);
          const int sc = f.value(cx, cy) >= 0 ? 1 : -1;
          if (sc == s[0]) {
            link(e[0], e[1]);
            link(e[2], e[3]);
          } else {
            link(e[3], e[0]);
            link(e[1], e[2]);
          }
        }
      }
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i) {
        bool mixed = false;
        for (int dj = -1; dj <= 1 && !mixed; ++dj)
          for (int di = -1; di <= 1 && !mixed; ++di) {
            const long ii = static_cast<long>(i) + di, jj = static_cast<long>(j) + dj;
            if (!f.periodic && (ii < 0 || jj < 0 || ii >= static_cast<long>(n) || jj >= static_cast<long>(n)))
              continue;
            const std::size_t wi = static_cast<std::size_t>((ii + static_cast<long>(n)) % static_cast<long>(n));
            const std::size_t wj = static_cast<std::size_t>((jj + static_cast<long>(n)) % static_cast<long>(n));
            mixed = grid.sign(wi, wj) != grid.sign(i, j);
          }
        if (!mixed) check_tangential(i, j);
      }
  }

  Vec2 reduce(Vec2 p) const {
    if (!f.periodic) return p;
    const double lx = f.x1 - f.x0, ly = f.y1 - f.y0;
    p[0] -= lx * std::floor((p[0] - f.x0) / lx);
    p[1] -= ly * std::floor((p[1] - f.y0) / ly);
    return p;
  }

  Vec2 nearest_lift(Vec2 raw, const Vec2& prev) const {
    raw = reduce(raw);
    if (!f.periodic) return raw;
    const double lx = f.x1 - f.x0, ly = f.y1 - f.y0;
    raw[0] += lx * std::round((prev[0] - raw[0]) / lx);
    raw[1] += ly * std::round((prev[1] - raw[1]) / ly);
    return raw;
  }

  std::vector<ZeroCurve> curves() {
    march();
    std::vector<std::size_t> order;
    for (const auto& [edge, l] : links) {
      if (l.size() != 2) {
        if (!f.periodic)
          throw Error(ErrorCode::DomainRejection, "a zero curve leaves the chart; enlarge the plane window");
        throw std::logic_error("zero-set edge with " + std::to_string(l.size()) + " links");
      }
      order.push_back(edge);
    }
    std::sort(order.begin(), order.end());
    std::unordered_map<std::size_t, bool> used;
    std::vector<ZeroCurve> out;
    for (std::size_t start : order) {
      if (used[start]) continue;
      std::vector<std::size_t> loop{start};
      used[start] = true;
      std::size_t prev = start, cur = links[start][0];
      while (cur != start) {
        loop.push_back(cur);
        used[cur] = true;
        const auto& l = links[cur];
        std::size_t next = l[0] == prev ? l[1] : l[0];
        if (l[0] == prev && l[1] == prev) next = prev;
        prev = cur;
        cur = next;
      }
      ZeroCurve c;
      Vec2 last = reduce(crossings.at(loop[0]).point);
      for (std::size_t e : loop) {
        last = nearest_lift(crossings.at(e).point, last);
        c.points.push_back(last);
      }
      if (f.periodic) {
        const Vec2 back = nearest_lift(c.points.front(), c.points.back());
        c.homology = {std::lround((back[0] - c.points.front()[0]) / (f.x1 - f.x0)),
                      std::lround((back[1] - c.points.front()[1]) / (f.y1 - f.y0))};
      }
      c.positive_node = crossings.at(loop[0]).positive_node;
      c.negative_node = crossings.at(loop[0]).negative_node;
      orient(c);
      out.push_back(std::move(c));
    }
    return out;
  }

  void orient(ZeroCurve& c) const {
    const auto pts = closed_points(c);
    double flux = 0;
    for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
      const Vec2 g = f.gradient(0.5 * (pts[k][0] + pts[k + 1][0]), 0.5 * (pts[k][1] + pts[k + 1][1]));
      flux += (pts[k + 1][0] - pts[k][0]) * g[1] - (pts[k + 1][1] - pts[k][1]) * g[0];
    }
    if (flux < 0) {
      std::reverse(c.points.begin(), c.points.end());
      c.homology = {-c.homology[0], -c.homology[1]};
    }
  }
};

Vec2 project_to_zero(const Field2D& f, Vec2 p) {
  for (int it = 0; it < 5; ++it) {
    const double v = f.value(p[0], p[1]);
    const Vec2 g = f.gradient(p[0], p[1]);
    const double gg = g[0] * g[0] + g[1] * g[1];
    if (gg == 0 || v == 0) break;
    p[0] -= v * g[0] / gg;
    p[1] -= v * g[1] / gg;
  }
  return p;
}

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

}  // namespace

std::vector<ZeroCurve> find_zero_curves(const Field2D& f, const TraceParams& params) {
  Tracer t(f, params);
  return t.curves();
}

std::vector<ZeroCurve> find_zero_curves(const TorusFunction& f, const TraceParams& params) {
  return find_zero_curves(f.field(), params);
}

std::vector<Vec2> closed_points(const ZeroCurve& c) {
  std::vector<Vec2> pts = c.points;
  if (pts.empty()) return pts;
  pts.push_back({c.points.front()[0] + static_cast<double>(c.homology[0]),
                 c.points.front()[1] + static_cast<double>(c.homology[1])});
  return pts;
}

double modular_period(const ZeroCurve& curve, const Field2D& f) {
  // Closing offsets are in units of the domain size.
  std::vector<Vec2> pts = curve.points;
  pts.push_back({curve.points.front()[0] + static_cast<double>(curve.homology[0]) * (f.x1 - f.x0),
                 curve.points.front()[1] + static_cast<double>(curve.homology[1]) * (f.y1 - f.y0)});
  auto w = [&f](const Vec2& p) { return 1.0 / norm(f.gradient(p[0], p[1])); };
  auto dist = [](const Vec2& a, const Vec2& b) { return std::hypot(a[0] - b[0], a[1] - b[1]); };
  double coarse = 0, fine = 0;
  double wprev = w(pts[0]);
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
    const double wnext = w(pts[k + 1]);
    coarse += dist(pts[k], pts[k + 1]) * (wprev + wnext) / 2;
    const Vec2 mid = project_to_zero(f, {(pts[k][0] + pts[k + 1][0]) / 2, (pts[k][1] + pts[k + 1][1]) / 2});
    const double wm = w(mid);
    fine += dist(pts[k], mid) * (wprev + wm) / 2 + dist(mid, pts[k + 1]) * (wm + wnext) / 2;
    wprev = wnext;
  }
  return fine + (fine - coarse) / 3;
}

double modular_period(const ZeroCurve& curve, const TorusFunction& f) { return modular_period(curve, f.field()); }

double modular_period_by_flow(const ZeroCurve& curve, const Field2D& f, double dt, double max_time) {
  auto field = [&f](const Vec2& p) {
    const Vec2 g = f.gradient(p[0], p[1]);
    return Vec2{g[1], -g[0]};
  };
  auto rk4 = [&field](const Vec2& p, double h) {
    auto add = [](const Vec2& a, const Vec2& b, double s) { return Vec2{a[0] + s * b[0], a[1] + s * b[1]}; };
    const Vec2 k1 = field(p), k2 = field(add(p, k1, h / 2)), k3 = field(add(p, k2, h / 2)), k4 = field(add(p, k3, h));
    return Vec2{p[0] + h / 6 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0]),
                p[1] + h / 6 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1])};
  };
  const Vec2 start = curve.points.front();
  const Vec2 target{start[0] + static_cast<double>(curve.homology[0]) * (f.x1 - f.x0),
                    start[1] + static_cast<double>(curve.homology[1]) * (f.y1 - f.y0)};
  const Vec2 x0 = field(start);
  const double speed = norm(x0);
  if (speed == 0) throw Error(ErrorCode::DomainRejection, "modular field vanishes on the curve");
  const Vec2 dir{x0[0] / speed, x0[1] / speed};
  auto section = [&](const Vec2& p) { return (p[0] - target[0]) * dir[0] + (p[1] - target[1]) * dir[1]; };
  // Leave the start before looking for the return.
  const double near = 10 * dt * speed;
  Vec2 p = start;
  double t = 0, s_prev = section(p);
  bool left = curve.homology[0] != 0 || curve.homology[1] != 0;
  while (t < max_time) {
    const Vec2 q = rk4(p, dt);
    const double s = section(q);
    if (!left && std::hypot(q[0] - start[0], q[1] - start[1]) > near) left = true;
    if (left && s_prev < 0 && s >= 0 && std::hypot(q[0] - target[0], q[1] - target[1]) < 2 * near) {
      auto g = [&](double tau) { return section(rk4(p, tau * dt)); };
      const double tau = bracketed_root(g, s_prev, s);
      return t + tau * dt;
    }
    p = q;
    s_prev = s;
    t += dt;
  }
  throw Error(ErrorCode::NonConvergence, "modular flow did not return within " + std::to_string(max_time));
}

TSSGraph build_graph(const TorusFunction& f, const TraceParams& params) {
  const Field2D field = f.field();
  Tracer tracer(field, params);
  const std::vector<ZeroCurve> curves = tracer.curves();
  const Grid& grid = tracer.grid;
  const std::size_t n = grid.n();

  UnionFind uf(n * n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) {
      if (grid.sign(i, j) == grid.sign(i + 1, j)) uf.unite(grid.node(i, j), grid.node(i + 1, j));
      if (grid.sign(i, j) == grid.sign(i, j + 1)) uf.unite(grid.node(i, j), grid.node(i, j + 1));
    }
  // Saddle cells join the diagonal whose sign matches the centre.
  std::vector<std::pair<std::size_t, std::size_t>> diagonals;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) {
      const int s0 = grid.sign(i, j), s1 = grid.sign(i + 1, j), s2 = grid.sign(i + 1, j + 1), s3 = grid.sign(i, j + 1);
      if (!(s0 == s2 && s1 == s3 && s0 != s1)) continue;
      const int sc = field.value(grid.x(i) + grid.hx() / 2, grid.y(j) + grid.hy() / 2) >= 0 ? 1 : -1;
      if (sc == s0) diagonals.emplace_back(grid.node(i, j), grid.node(i + 1, j + 1));
      else diagonals.emplace_back(grid.node(i + 1, j), grid.node(i, j + 1));
    }
  for (auto [a, b] : diagonals) uf.unite(a, b);

  std::unordered_map<std::size_t, std::size_t> comp_index;
  TSSGraph g;
  std::vector<long> chi;
  auto component = [&](std::size_t node) {
    const std::size_t root = uf.find(node);
    auto [it, inserted] = comp_index.try_emplace(root, g.vertices.size());
    if (inserted) {
      TSSVertex v;
      v.sign = grid.value(node % n, node / n) >= 0 ? 1 : -1;
      g.vertices.push_back(v);
      chi.push_back(0);
    }
    return it->second;
  };
  // Deterministic numbering: curves first, then remaining components by node.
  for (const auto& c : curves) {
    component(c.negative_node);
    component(c.positive_node);
  }
  for (std::size_t node = 0; node < n * n; ++node) component(node);

  // Euler characteristic of the grid complex restricted to each component.
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t v = grid.node(i, j), c = component(v);
      chi[c] += 1;
      if (uf.find(grid.node(i + 1, j)) == uf.find(v)) chi[c] -= 1;
      if (uf.find(grid.node(i, j + 1)) == uf.find(v)) chi[c] -= 1;
      if (uf.find(grid.node(i + 1, j)) == uf.find(v) && uf.find(grid.node(i + 1, j + 1)) == uf.find(v) &&
          uf.find(grid.node(i, j + 1)) == uf.find(v))
        chi[c] += 1;
    }
  for (auto [a, b] : diagonals) chi[component(a)] -= 1;

  for (const auto& c : curves) {
    TSSEdge e;
    e.from = component(c.negative_node);
    e.to = component(c.positive_node);
    e.period = modular_period(c, field);
    e.homology = c.homology;
    g.vertices[e.from].boundary_curves += 1;
    g.vertices[e.to].boundary_curves += 1;
    g.edges.push_back(e);
  }
  for (std::size_t k = 0; k < g.vertices.size(); ++k) {
    auto& v = g.vertices[k];
    v.euler_characteristic = chi[k];
    const long twice = 2 - chi[k] - static_cast<long>(v.boundary_curves);
    if (twice < 0 || twice % 2 != 0)
      throw std::logic_error("inconsistent Euler characteristic " + std::to_string(chi[k]) + " with " +
                             std::to_string(v.boundary_curves) + " boundary curves");
    v.genus = twice / 2;
  }
  return g;
}

namespace {

struct IsoSearch {
  const TSSGraph& a;
  const TSSGraph& b;
  double tol;
  std::vector<std::size_t> map;
  std::vector<bool> taken;
  /// Edges of a graph between an ordered vertex pair, sorted by period.
  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> ea, eb;

  IsoSearch(const TSSGraph& g1, const TSSGraph& g2, double t) : a(g1), b(g2), tol(t) {
    for (std::size_t k = 0; k < a.edges.size(); ++k) ea[{a.edges[k].from, a.edges[k].to}].push_back(k);
    for (std::size_t k = 0; k < b.edges.size(); ++k) eb[{b.edges[k].from, b.edges[k].to}].push_back(k);
    auto by_period = [](const TSSGraph& g) {
      return [&g](std::size_t x, std::size_t y) { return g.edges[x].period < g.edges[y].period; };
    };
    for (auto& [k, v] : ea) std::sort(v.begin(), v.end(), by_period(a));
    for (auto& [k, v] : eb) std::sort(v.begin(), v.end(), by_period(b));
  }

  const std::vector<std::size_t>& edges_b(std::size_t u, std::size_t v) const {
    static const std::vector<std::size_t> none;
    auto it = eb.find({u, v});
    return it == eb.end() ? none : it->second;
  }
  const std::vector<std::size_t>& edges_a(std::size_t u, std::size_t v) const {
    static const std::vector<std::size_t> none;
    auto it = ea.find({u, v});
    return it == ea.end() ? none : it->second;
  }

  bool same_edges(const std::vector<std::size_t>& x, const std::vector<std::size_t>& y) const {
    if (x.size() != y.size()) return false;
    for (std::size_t k = 0; k < x.size(); ++k)
      if (std::abs(a.edges[x[k]].period - b.edges[y[k]].period) > tol) return false;
    return true;
  }

  /// Edges among assigned vertices agree, both directions.
  bool consistent(std::size_t u) const {
    for (std::size_t w = 0; w <= u; ++w) {
      if (!same_edges(edges_a(u, w), edges_b(map[u], map[w]))) return false;
      if (!same_edges(edges_a(w, u), edges_b(map[w], map[u]))) return false;
    }
    return true;
  }

  bool extend(std::size_t u) {
    if (u == a.vertices.size()) return true;
    for (std::size_t c = 0; c < b.vertices.size(); ++c) {
      if (taken[c] || a.vertices[u].genus != b.vertices[c].genus) continue;
      map[u] = c;
      taken[c] = true;
      if (consistent(u) && extend(u + 1)) return true;
      taken[c] = false;
    }
    return false;
  }
};

}  // namespace

Isomorphism graphs_isomorphic(const TSSGraph& g1, const TSSGraph& g2, double period_tol) {
  Isomorphism r;
  if (g1.vertices.size() != g2.vertices.size()) {
    r.reason = "vertex counts differ: " + std::to_string(g1.vertices.size()) + " vs " + std::to_string(g2.vertices.size());
    return r;
  }
  if (g1.edges.size() != g2.edges.size()) {
    r.reason = "edge counts differ: " + std::to_string(g1.edges.size()) + " vs " + std::to_string(g2.edges.size());
    return r;
  }
  auto genera = [](const TSSGraph& g) {
    std::vector<long> v;
    for (const auto& x : g.vertices) v.push_back(x.genus);
    std::sort(v.begin(), v.end());
    return v;
  };
  if (genera(g1) != genera(g2)) {
    r.reason = "genus labels differ";
    return r;
  }
  IsoSearch s(g1, g2, period_tol);
  s.map.assign(g1.vertices.size(), 0);
  s.taken.assign(g2.vertices.size(), false);
  if (!s.extend(0)) {
    r.reason = "no genus-preserving vertex bijection matches oriented edges with periods within " +
               std::to_string(period_tol);
    return r;
  }
  r.isomorphic = true;
  r.vertex_map = s.map;
  r.edge_map.assign(g1.edges.size(), 0);
  for (const auto& [key, list] : s.ea) {
    const auto& other = s.edges_b(s.map[key.first], s.map[key.second]);
    for (std::size_t k = 0; k < list.size(); ++k) r.edge_map[list[k]] = other[k];
  }
  return r;
}

namespace {

/// Integral over y in [0, 1) of 1/f(x, y) restricted to |f| > eps.
double truncated_slice(const TorusFunction& f, double x, double eps, std::size_t samples) {
  auto g = [&f, x](double y) { return f(x, y); };
  std::vector<double> ys(samples + 1), gs(samples + 1);
  for (std::size_t k = 0; k <= samples; ++k) {
    ys[k] = static_cast<double>(k) / static_cast<double>(samples);
    gs[k] = k == samples ? gs[0] : g(ys[k]);
  }
  std::vector<double> breaks{0.0, 1.0};
  for (double level : {eps, -eps}) {
    for (std::size_t k = 0; k < samples; ++k) {
      const double a = gs[k] - level, b = gs[k + 1] - level;
      if ((a < 0) == (b < 0)) continue;
      const double y0 = ys[k], y1 = ys[k + 1];
      auto h = [&](double t) { return g(y0 + t * (y1 - y0)) - level; };
      breaks.push_back(y0 + bracketed_root(h, a, b) * (y1 - y0));
    }
  }
  std::sort(breaks.begin(), breaks.end());
  double total = 0;
  for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
    const double a = breaks[k], b = breaks[k + 1];
    if (b - a <= 0) continue;
    if (std::abs(g(0.5 * (a + b))) <= eps) continue;
    auto inv = [&g](double y) { return 1.0 / g(y); };
    total += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(inv, a, b, 12, 1e-11);
  }
  return total;
}

}  // namespace

std::vector<double> default_eps_sequence() {
  std::vector<double> e;
  for (int k = 0; k < 6; ++k) e.push_back(1e-2 * std::ldexp(1.0, -k));
  return e;
}

VolumeResult regularized_volume(const TorusFunction& f, const std::vector<double>& eps_sequence, std::size_t nx,
                                double tol) {
  if (eps_sequence.size() < 2) throw Error(ErrorCode::Config, "need at least two eps values");
  for (std::size_t k = 1; k < eps_sequence.size(); ++k)
    if (std::abs(eps_sequence[k] * 2 - eps_sequence[k - 1]) > 1e-15 * eps_sequence[k - 1])
      throw Error(ErrorCode::Config, "eps sequence must halve at each step");
  long kmax = 1;
  for (const auto& [k, c] : f.coeffs()) kmax = std::max({kmax, std::abs(k.first), std::abs(k.second)});
  const std::size_t samples = std::max<std::size_t>(64, static_cast<std::size_t>(32 * kmax));

  VolumeResult r;
  for (double eps : eps_sequence) {
    double s = 0;
    for (std::size_t i = 0; i < nx; ++i)
      s += truncated_slice(f, (static_cast<double>(i) + 0.5) / static_cast<double>(nx), eps, samples);
    r.truncated.push_back(s / static_cast<double>(nx));
  }
  // I(eps) = I0 + a1 eps + a3 eps^3 + ...: only odd powers survive the
  // symmetric excision around a simple zero.
  std::vector<std::vector<double>> t(eps_sequence.size());
  for (std::size_t k = 0; k < eps_sequence.size(); ++k) {
    t[k].push_back(r.truncated[k]);
    for (std::size_t m = 1; m <= k; ++m) {
      const double factor = std::ldexp(1.0, static_cast<int>(2 * m - 1)) - 1;
      t[k].push_back(t[k][m - 1] + (t[k][m - 1] - t[k - 1][m - 1]) / factor);
    }
    r.extrapolated.push_back(t[k][k]);
  }
  r.value = r.extrapolated.back();
  const double prev = r.extrapolated[r.extrapolated.size() - 2];
  if (std::abs(r.value - prev) > tol * std::max(1.0, std::abs(r.value))) {
    std::ostringstream os;
    os << "regularized volume did not converge; tail estimates";
    for (double v : r.extrapolated) os << ' ' << v;
    throw Error(ErrorCode::NonConvergence, os.str());
  }
  return r;
}

std::string to_dot(const TSSGraph& g) {
  std::ostringstream os;
  os.precision(10);
  os << "digraph tss {\n";
  for (std::size_t k = 0; k < g.vertices.size(); ++k)
    os << "  v" << k << " [label=\"g=" << g.vertices[k].genus << (g.vertices[k].sign > 0 ? " +" : " -") << "\"];\n";
  for (const auto& e : g.edges) os << "  v" << e.from << " -> v" << e.to << " [label=\"" << e.period << "\"];\n";
  os << "}\n";
  return os.str();
}

}  // namespace poissonkit::tss
