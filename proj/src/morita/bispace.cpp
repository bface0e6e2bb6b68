#include "poissonkit/morita/bispace.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>
#include <string>

#include "poissonkit/error.hpp"

namespace poissonkit::morita {

namespace {

bool same_group(const GroupPtr& a, const GroupPtr& b) { return a == b || *a == *b; }

std::size_t sz(int v) { return static_cast<std::size_t>(v); }

}  // namespace

Bispace::Bispace(GroupPtr left, GroupPtr right, std::size_t points, std::vector<int> l_act, std::vector<int> r_act)
    : left_(std::move(left)), right_(std::move(right)), points_(points), l_act_(std::move(l_act)), r_act_(std::move(r_act)) {
  if (!left_ || !right_) throw Error(ErrorCode::InvalidStructure, "bispace needs two groups");
  const std::size_t ng = left_->order(), nh = right_->order();
  if (l_act_.size() != ng * points_) throw Error(ErrorCode::InvalidStructure, "left action table has the wrong size", "/l_act");
  if (r_act_.size() != nh * points_) throw Error(ErrorCode::InvalidStructure, "right action table has the wrong size", "/r_act");
  for (int v : l_act_)
    if (v < 0 || sz(v) >= points_) throw Error(ErrorCode::InvalidStructure, "left action leaves the point set", "/l_act");
  for (int v : r_act_)
    if (v < 0 || sz(v) >= points_) throw Error(ErrorCode::InvalidStructure, "right action leaves the point set", "/r_act");
  const int np = static_cast<int>(points_);
  const Element eg = left_->identity(), eh = right_->identity();
  for (int x = 0; x < np; ++x) {
    if (act_left(eg, x) != x) throw Error(ErrorCode::InvalidStructure, "identity does not act trivially on the left", "/l_act");
    if (act_right(x, eh) != x) throw Error(ErrorCode::InvalidStructure, "identity does not act trivially on the right", "/r_act");
  }
  for (Element a = 0; a < static_cast<Element>(ng); ++a)
    for (Element b = 0; b < static_cast<Element>(ng); ++b)
      for (int x = 0; x < np; ++x)
        if (act_left(left_->mul(a, b), x) != act_left(a, act_left(b, x)))
          throw Error(ErrorCode::InvalidStructure, "left action is not compatible with the group law", "/l_act");
  for (Element a = 0; a < static_cast<Element>(nh); ++a)
    for (Element b = 0; b < static_cast<Element>(nh); ++b)
      for (int x = 0; x < np; ++x)
        if (act_right(x, right_->mul(a, b)) != act_right(act_right(x, a), b))
          throw Error(ErrorCode::InvalidStructure, "right action is not compatible with the group law", "/r_act");
  for (Element g = 0; g < static_cast<Element>(ng); ++g)
    for (Element h = 0; h < static_cast<Element>(nh); ++h)
      for (int x = 0; x < np; ++x)
        if (act_right(act_left(g, x), h) != act_left(g, act_right(x, h)))
          throw Error(ErrorCode::InvalidStructure, "left and right actions do not commute");
}

Bispace Bispace::regular(GroupPtr g) { return twisted(g, [&] {
  ElementMap id(g->order());
  for (std::size_t k = 0; k < id.size(); ++k) id[k] = static_cast<Element>(k);
  return id;
}()); }

Bispace Bispace::twisted(GroupPtr g, const ElementMap& q) {
  const std::size_t n = g->order();
  if (q.size() != n) throw Error(ErrorCode::InvalidStructure, "automorphism has the wrong length");
  std::vector<bool> hit(n, false);
  for (Element v : q) {
    if (v < 0 || sz(v) >= n || hit[sz(v)]) throw Error(ErrorCode::InvalidStructure, "automorphism is not a bijection");
    hit[sz(v)] = true;
  }
  for (Element a = 0; a < static_cast<Element>(n); ++a)
    for (Element b = 0; b < static_cast<Element>(n); ++b)
      if (q[sz(g->mul(a, b))] != g->mul(q[sz(a)], q[sz(b)]))
        throw Error(ErrorCode::InvalidStructure, "map is not a homomorphism");
  std::vector<int> l(n * n), r(n * n);
  for (Element a = 0; a < static_cast<Element>(n); ++a)
    for (Element x = 0; x < static_cast<Element>(n); ++x) {
      l[sz(a) * n + sz(x)] = g->mul(a, x);
      r[sz(x) * n + sz(a)] = g->mul(x, q[sz(a)]);
    }
  return Bispace(g, g, n, std::move(l), std::move(r));
}

Bispace Bispace::flip(const Bispace& x) {
  const std::size_t ng = x.left().order(), nh = x.right().order(), np = x.points();
  std::vector<int> l(nh * np), r(np * ng);
  for (int p = 0; p < static_cast<int>(np); ++p) {
    for (Element h = 0; h < static_cast<Element>(nh); ++h) l[sz(h) * np + sz(p)] = x.act_right(p, x.right().inv(h));
    for (Element g = 0; g < static_cast<Element>(ng); ++g) r[sz(p) * ng + sz(g)] = x.act_left(x.left().inv(g), p);
  }
  return Bispace(x.right_ptr(), x.left_ptr(), np, std::move(l), std::move(r));
}

Bispace Bispace::disjoint_union(const Bispace& x, const Bispace& y) {
  if (!same_group(x.left_ptr(), y.left_ptr()) || !same_group(x.right_ptr(), y.right_ptr()))
    throw Error(ErrorCode::DimensionMismatch, "disjoint union needs the same group pair");
  const std::size_t ng = x.left().order(), nh = x.right().order(), nx = x.points(), ny = y.points(), np = nx + ny;
  std::vector<int> l(ng * np), r(np * nh);
  for (Element g = 0; g < static_cast<Element>(ng); ++g) {
    for (std::size_t p = 0; p < nx; ++p) l[sz(g) * np + p] = x.act_left(g, static_cast<int>(p));
    for (std::size_t p = 0; p < ny; ++p) l[sz(g) * np + nx + p] = static_cast<int>(nx) + y.act_left(g, static_cast<int>(p));
  }
  for (Element h = 0; h < static_cast<Element>(nh); ++h) {
    for (std::size_t p = 0; p < nx; ++p) r[p * nh + sz(h)] = x.act_right(static_cast<int>(p), h);
    for (std::size_t p = 0; p < ny; ++p) r[(nx + p) * nh + sz(h)] = static_cast<int>(nx) + y.act_right(static_cast<int>(p), h);
  }
  return Bispace(x.left_ptr(), x.right_ptr(), np, std::move(l), std::move(r));
}

Bispace Bispace::cosets(GroupPtr g, GroupPtr h, const std::vector<Element>& subgroup) {
  const std::size_t ng = g->order(), nh = h->order(), n = ng * nh;
  auto mul = [&](Element s, Element t) {
    return g->mul(s / static_cast<Element>(nh), t / static_cast<Element>(nh)) * static_cast<Element>(nh) +
           h->mul(s % static_cast<Element>(nh), t % static_cast<Element>(nh));
  };
  std::vector<char> in(n, 0);
  for (Element s : subgroup) {
    if (s < 0 || sz(s) >= n) throw Error(ErrorCode::InvalidStructure, "subgroup element out of range");
    in[sz(s)] = 1;
  }
  const Element e = g->identity() * static_cast<Element>(nh) + h->identity();
  if (!in[sz(e)]) throw Error(ErrorCode::InvalidStructure, "subgroup lacks the identity");
  for (Element s : subgroup)
    for (Element t : subgroup)
      if (!in[sz(mul(s, t))]) throw Error(ErrorCode::InvalidStructure, "subset is not closed under multiplication");

  std::vector<int> label(n, -1);
  std::vector<Element> rep;
  for (Element t = 0; t < static_cast<Element>(n); ++t) {
    if (label[sz(t)] >= 0) continue;
    const int c = static_cast<int>(rep.size());
    rep.push_back(t);
    for (Element s : subgroup) label[sz(mul(t, s))] = c;
  }
  const std::size_t np = rep.size();
  std::vector<int> l(ng * np), r(np * nh);
  for (std::size_t c = 0; c < np; ++c) {
    for (Element a = 0; a < static_cast<Element>(ng); ++a)
      l[sz(a) * np + c] = label[sz(mul(a * static_cast<Element>(nh) + h->identity(), rep[c]))];
    for (Element b = 0; b < static_cast<Element>(nh); ++b)
      r[c * nh + sz(b)] = label[sz(mul(g->identity() * static_cast<Element>(nh) + h->inv(b), rep[c]))];
  }
  return Bispace(std::move(g), std::move(h), np, std::move(l), std::move(r));
}

std::vector<int> Bispace::orbit_labels(std::size_t* count) const {
  std::vector<int> label(points_, -1);
  int next = 0;
  for (std::size_t start = 0; start < points_; ++start) {
    if (label[start] >= 0) continue;
    std::deque<int> queue{static_cast<int>(start)};
    label[start] = next;
    while (!queue.empty()) {
      const int x = queue.front();
      queue.pop_front();
      auto visit = [&](int y) {
        if (label[sz(y)] < 0) {
          label[sz(y)] = next;
          queue.push_back(y);
        }
      };
      for (Element g = 0; g < static_cast<Element>(left_->order()); ++g) visit(act_left(g, x));
      for (Element h = 0; h < static_cast<Element>(right_->order()); ++h) visit(act_right(x, h));
    }
    ++next;
  }
  if (count) *count = static_cast<std::size_t>(next);
  return label;
}

std::vector<Element> Bispace::stabilizer(int x) const {
  std::vector<Element> s;
  const Element nh = static_cast<Element>(right_->order());
  for (Element g = 0; g < static_cast<Element>(left_->order()); ++g)
    for (Element h = 0; h < nh; ++h)
      if (act_left(g, act_right(x, right_->inv(h))) == x) s.push_back(g * nh + h);
  return s;
}

Bispace tensor(const Bispace& x, const Bispace& y) {
  if (!same_group(x.right_ptr(), y.left_ptr()))
    throw Error(ErrorCode::DimensionMismatch, "tensor needs the right group of the first bispace to equal the left group of the second");
  const FiniteGroup& h = x.right();
  const std::size_t nx = x.points(), ny = y.points(), nh = h.order();
  auto pair_index = [ny](int a, int b) { return sz(a) * ny + sz(b); };
  std::vector<int> label(nx * ny, -1);
  std::vector<std::pair<int, int>> rep;
  for (int a = 0; a < static_cast<int>(nx); ++a)
    for (int b = 0; b < static_cast<int>(ny); ++b) {
      if (label[pair_index(a, b)] >= 0) continue;
      const int c = static_cast<int>(rep.size());
      rep.emplace_back(a, b);
      for (Element k = 0; k < static_cast<Element>(nh); ++k)
        label[pair_index(x.act_right(a, k), y.act_left(h.inv(k), b))] = c;
    }
  const std::size_t np = rep.size();
  const std::size_t ng = x.left().order(), nk = y.right().order();
  std::vector<int> l(ng * np, -1), r(np * nk, -1);
  // Fill from every pair and insist on agreement within each orbit.
  for (int a = 0; a < static_cast<int>(nx); ++a)
    for (int b = 0; b < static_cast<int>(ny); ++b) {
      const std::size_t c = sz(label[pair_index(a, b)]);
      for (Element g = 0; g < static_cast<Element>(ng); ++g) {
        const int v = label[pair_index(x.act_left(g, a), b)];
        int& slot = l[sz(g) * np + c];
        if (slot >= 0 && slot != v) throw std::logic_error("tensor: induced left action is not well defined");
        slot = v;
      }
      for (Element k = 0; k < static_cast<Element>(nk); ++k) {
        const int v = label[pair_index(a, y.act_right(b, k))];
        int& slot = r[c * nk + sz(k)];
        if (slot >= 0 && slot != v) throw std::logic_error("tensor: induced right action is not well defined");
        slot = v;
      }
    }
  return Bispace(x.left_ptr(), y.right_ptr(), np, std::move(l), std::move(r));
}

bool left_free(const Bispace& x) {
  for (Element g = 0; g < static_cast<Element>(x.left().order()); ++g) {
    if (g == x.left().identity()) continue;
    for (int p = 0; p < static_cast<int>(x.points()); ++p)
      if (x.act_left(g, p) == p) return false;
  }
  return true;
}

bool right_free(const Bispace& x) {
  for (Element h = 0; h < static_cast<Element>(x.right().order()); ++h) {
    if (h == x.right().identity()) continue;
    for (int p = 0; p < static_cast<int>(x.points()); ++p)
      if (x.act_right(p, h) == p) return false;
  }
  return true;
}

bool left_transitive(const Bispace& x) {
  if (x.points() == 0) return false;
  std::vector<bool> hit(x.points(), false);
  std::size_t seen = 0;
  for (Element g = 0; g < static_cast<Element>(x.left().order()); ++g)
    if (!hit[sz(x.act_left(g, 0))]) {
      hit[sz(x.act_left(g, 0))] = true;
      ++seen;
    }
  return seen == x.points();
}

bool right_transitive(const Bispace& x) {
  if (x.points() == 0) return false;
  std::vector<bool> hit(x.points(), false);
  std::size_t seen = 0;
  for (Element h = 0; h < static_cast<Element>(x.right().order()); ++h)
    if (!hit[sz(x.act_right(0, h))]) {
      hit[sz(x.act_right(0, h))] = true;
      ++seen;
    }
  return seen == x.points();
}

bool is_invertible(const Bispace& x) {
  return left_free(x) && left_transitive(x) && right_free(x) && right_transitive(x);
}

std::optional<std::vector<int>> bispace_iso(const Bispace& x, const Bispace& y) {
  if (!same_group(x.left_ptr(), y.left_ptr()) || !same_group(x.right_ptr(), y.right_ptr())) return std::nullopt;
  if (x.points() != y.points()) return std::nullopt;
  std::size_t nox = 0, noy = 0;
  const auto lx = x.orbit_labels(&nox);
  const auto ly = y.orbit_labels(&noy);
  if (nox != noy) return std::nullopt;

  auto orbit_members = [](const std::vector<int>& labels, std::size_t count) {
    std::vector<std::vector<int>> m(count);
    for (std::size_t p = 0; p < labels.size(); ++p) m[sz(labels[p])].push_back(static_cast<int>(p));
    return m;
  };
  const auto mx = orbit_members(lx, nox);
  const auto my = orbit_members(ly, noy);

  // x_rep of orbit i may go to y iff their stabilizers agree; one such y per
  // target orbit suffices.
  std::vector<std::vector<std::pair<std::size_t, int>>> options(nox);
  std::map<int, std::vector<Element>> ystab;
  for (std::size_t i = 0; i < nox; ++i) {
    const auto sx = x.stabilizer(mx[i][0]);
    for (std::size_t j = 0; j < noy; ++j) {
      if (my[j].size() != mx[i].size()) continue;
      for (int q : my[j]) {
        auto it = ystab.find(q);
        if (it == ystab.end()) it = ystab.emplace(q, y.stabilizer(q)).first;
        if (it->second == sx) {
          options[i].emplace_back(j, q);
          break;
        }
      }
    }
  }
  std::vector<int> target(nox, -1);
  std::vector<bool> used(noy, false);
  auto match = [&](auto&& self, std::size_t i) -> bool {
    if (i == nox) return true;
    for (const auto& [j, q] : options[i]) {
      if (used[j]) continue;
      used[j] = true;
      target[i] = q;
      if (self(self, i + 1)) return true;
      used[j] = false;
    }
    return false;
  };
  if (!match(match, 0)) return std::nullopt;

  std::vector<int> phi(x.points(), -1);
  for (std::size_t i = 0; i < nox; ++i) {
    std::deque<int> queue{mx[i][0]};
    phi[sz(mx[i][0])] = target[i];
    while (!queue.empty()) {
      const int p = queue.front();
      queue.pop_front();
      for (Element g = 0; g < static_cast<Element>(x.left().order()); ++g) {
        const int a = x.act_left(g, p);
        if (phi[sz(a)] < 0) {
          phi[sz(a)] = y.act_left(g, phi[sz(p)]);
          queue.push_back(a);
        }
      }
      for (Element h = 0; h < static_cast<Element>(x.right().order()); ++h) {
        const int a = x.act_right(p, h);
        if (phi[sz(a)] < 0) {
          phi[sz(a)] = y.act_right(phi[sz(p)], h);
          queue.push_back(a);
        }
      }
    }
  }
  std::vector<bool> hit(y.points(), false);
  for (int p = 0; p < static_cast<int>(x.points()); ++p) {
    if (hit[sz(phi[sz(p)])]) throw std::logic_error("bispace_iso: witness is not injective");
    hit[sz(phi[sz(p)])] = true;
    for (Element g = 0; g < static_cast<Element>(x.left().order()); ++g)
      if (phi[sz(x.act_left(g, p))] != y.act_left(g, phi[sz(p)])) throw std::logic_error("bispace_iso: witness not left equivariant");
    for (Element h = 0; h < static_cast<Element>(x.right().order()); ++h)
      if (phi[sz(x.act_right(p, h))] != y.act_right(phi[sz(p)], h)) throw std::logic_error("bispace_iso: witness not right equivariant");
  }
  return phi;
}

std::vector<Bispace> transitive_bispaces(const GroupPtr& g, const GroupPtr& h) {
  std::vector<Bispace> out;
  for (const auto& s : subgroups(FiniteGroup::direct_product(*g, *h))) out.push_back(Bispace::cosets(g, h, s));
  return out;
}

namespace {

// Subgroups S of G x G with |S| = |G| and S meeting G x 1 and 1 x G
// trivially; their coset spaces are exactly the invertible transitive bispaces.
std::vector<std::vector<Element>> graph_subgroups(const FiniteGroup& g) {
  const Element n = static_cast<Element>(g.order());
  const Element e = g.identity();
  auto mul = [&](Element s, Element t) { return g.mul(s / n, t / n) * n + g.mul(s % n, t % n); };
  auto allowed = [&](Element s) { return (s / n == e) == (s % n == e); };
  std::set<std::vector<Element>> seen;
  std::vector<std::vector<Element>> out;
  std::deque<std::pair<std::vector<Element>, std::vector<Element>>> queue;
  const Element id = e * n + e;
  seen.insert({id});
  queue.emplace_back(std::vector<Element>{id}, std::vector<Element>{});
  std::vector<char> member(static_cast<std::size_t>(n * n));
  while (!queue.empty()) {
    auto [elems, gens] = std::move(queue.front());
    queue.pop_front();
    if (elems.size() == sz(n)) {
      out.push_back(elems);
      continue;
    }
    std::fill(member.begin(), member.end(), 0);
    for (Element s : elems) member[sz(s)] = 1;
    for (Element extra = 0; extra < n * n; ++extra) {
      if (member[sz(extra)] || !allowed(extra)) continue;
      std::vector<Element> ngens = gens;
      ngens.push_back(extra);
      std::vector<char> in(static_cast<std::size_t>(n * n), 0);
      std::vector<Element> span{id};
      in[sz(id)] = 1;
      bool ok = true;
      for (std::size_t k = 0; k < span.size() && ok; ++k)
        for (Element s : ngens) {
          const Element t = mul(span[k], s);
          if (in[sz(t)]) continue;
          if (!allowed(t) || span.size() == sz(n)) {
            ok = false;
            break;
          }
          in[sz(t)] = 1;
          span.push_back(t);
        }
      if (!ok) continue;
      std::sort(span.begin(), span.end());
      if (seen.insert(span).second) queue.emplace_back(std::move(span), std::move(ngens));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Least sorted conjugate of a subgroup of G x G; equal keys mean isomorphic
// coset spaces.
std::vector<Element> conjugacy_key(const FiniteGroup& g, const std::vector<Element>& s) {
  const Element n = static_cast<Element>(g.order());
  std::vector<Element> best, cur(s.size());
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b) {
      for (std::size_t k = 0; k < s.size(); ++k)
        cur[k] = g.mul(g.mul(a, s[k] / n), g.inv(a)) * n + g.mul(g.mul(b, s[k] % n), g.inv(b));
      std::sort(cur.begin(), cur.end());
      if (best.empty() || cur < best) best = cur;
    }
  return best;
}

}  // namespace

PicardResult picard_group(const GroupPtr& g, std::size_t cap) {
  if (g->order() > cap)
    throw Error(ErrorCode::CapExceeded, "group order " + std::to_string(g->order()) + " exceeds the Picard cap " + std::to_string(cap));
  PicardResult res;
  std::map<std::vector<Element>, int> class_of_key;
  for (const auto& s : graph_subgroups(*g)) {
    Bispace b = Bispace::cosets(g, g, s);
    if (!is_invertible(b)) throw std::logic_error("picard_group: graph subgroup gave a non-invertible bispace");
    auto key = conjugacy_key(*g, s);
    auto it = class_of_key.find(key);
    if (it == class_of_key.end()) {
      class_of_key.emplace(std::move(key), static_cast<int>(res.classes.size()));
      res.classes.push_back(std::move(b));
    } else if (!bispace_iso(b, res.classes[sz(it->second)])) {
      throw std::logic_error("picard_group: conjugate stabilizers gave non-isomorphic bispaces");
    }
  }
  // Put the regular bispace first.
  auto class_of = [&](const Bispace& b) {
    auto it = class_of_key.find(conjugacy_key(*g, b.stabilizer(0)));
    if (it == class_of_key.end()) throw std::logic_error("picard_group: bispace outside the enumerated classes");
    return it->second;
  };
  const int reg = class_of(Bispace::regular(g));
  if (reg != 0) {
    std::swap(res.classes[0], res.classes[sz(reg)]);
    for (auto& [k, v] : class_of_key) {
      if (v == 0) v = reg;
      else if (v == reg) v = 0;
    }
  }
  const std::size_t m = res.classes.size();
  res.order = m;
  if (m <= 64)
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j)
        if (bispace_iso(res.classes[i], res.classes[j])) throw std::logic_error("picard_group: duplicate class");

  res.table.assign(m, std::vector<int>(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      const Bispace t = tensor(res.classes[i], res.classes[j]);
      if (!is_invertible(t)) throw std::logic_error("picard_group: tensor of invertibles is not invertible");
      res.table[i][j] = class_of(t);
    }

  // Generators: greedily enlarge the span.
  std::vector<bool> span(m, false);
  span[0] = true;
  for (std::size_t c = 1; c < m; ++c) {
    if (span[c]) continue;
    res.generators.push_back(static_cast<int>(c));
    std::vector<int> frontier{0};
    std::fill(span.begin(), span.end(), false);
    span[0] = true;
    for (std::size_t k = 0; k < frontier.size(); ++k)
      for (int gen : res.generators) {
        const int next = res.table[sz(frontier[k])][sz(gen)];
        if (!span[sz(next)]) {
          span[sz(next)] = true;
          frontier.push_back(next);
        }
      }
  }

  const auto auts = automorphisms(*g);
  const auto inns = inner_automorphisms(*g);
  res.aut_order = auts.size();
  res.inn_order = inns.size();
  res.automorphism.assign(m, {});
  std::vector<int> aut_class(auts.size());
  std::vector<std::size_t> fibre(m, 0);
  for (std::size_t k = 0; k < auts.size(); ++k) {
    aut_class[k] = class_of(Bispace::twisted(g, auts[k]));
    if (res.automorphism[sz(aut_class[k])].empty()) res.automorphism[sz(aut_class[k])] = auts[k];
    ++fibre[sz(aut_class[k])];
  }
  bool ok = res.inn_order * m == res.aut_order;
  for (std::size_t c = 0; c < m && ok; ++c) ok = fibre[c] == res.inn_order;
  for (const auto& q : inns) ok = ok && class_of(Bispace::twisted(g, q)) == 0;
  if (ok) {
    // Homomorphism check, on all pairs when affordable and on class
    // representatives otherwise.
    std::vector<std::size_t> idx;
    if (auts.size() * auts.size() <= 40000) {
      for (std::size_t k = 0; k < auts.size(); ++k) idx.push_back(k);
    } else {
      std::vector<bool> taken(m, false);
      for (std::size_t k = 0; k < auts.size(); ++k)
        if (!taken[sz(aut_class[k])]) {
          taken[sz(aut_class[k])] = true;
          idx.push_back(k);
        }
    }
    std::map<ElementMap, std::size_t> aut_index;
    for (std::size_t k = 0; k < auts.size(); ++k) aut_index.emplace(auts[k], k);
    for (std::size_t a : idx)
      for (std::size_t b : idx) {
        const std::size_t ab = aut_index.at(compose(auts[a], auts[b]));
        if (res.table[sz(aut_class[a])][sz(aut_class[b])] != aut_class[ab]) ok = false;
      }
  }
  res.matches_out = ok;
  return res;
}

}  // namespace poissonkit::morita
