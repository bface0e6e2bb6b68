#include "poissonkit/morita/group.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>

#include "poissonkit/error.hpp"

namespace poissonkit::morita {

FiniteGroup::FiniteGroup(std::vector<std::vector<Element>> table, std::string name) : name_(std::move(name)) {
  n_ = table.size();
  if (n_ == 0) throw Error(ErrorCode::InvalidStructure, "a group needs at least one element");
  for (std::size_t i = 0; i < n_; ++i) {
    if (table[i].size() != n_)
      throw Error(ErrorCode::InvalidStructure, "multiplication table is not square", "/" + std::to_string(i));
    for (std::size_t j = 0; j < n_; ++j) {
      const Element v = table[i][j];
      if (v < 0 || static_cast<std::size_t>(v) >= n_)
        throw Error(ErrorCode::InvalidStructure, "table entry out of range",
                    "/" + std::to_string(i) + "/" + std::to_string(j));
      table_.push_back(v);
    }
  }
  finish();
}

void FiniteGroup::finish() {
  const Element n = static_cast<Element>(n_);
  identity_ = -1;
  for (Element e = 0; e < n && identity_ < 0; ++e) {
    bool ok = true;
    for (Element a = 0; a < n && ok; ++a) ok = mul(e, a) == a && mul(a, e) == a;
    if (ok) identity_ = e;
  }
  if (identity_ < 0) throw Error(ErrorCode::InvalidStructure, "no identity element");
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b)
      for (Element c = 0; c < n; ++c)
        if (mul(mul(a, b), c) != mul(a, mul(b, c)))
          throw Error(ErrorCode::InvalidStructure, "not associative at (" + std::to_string(a) + ", " +
                                                       std::to_string(b) + ", " + std::to_string(c) + ")");
  inverse_.assign(n_, -1);
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b)
      if (mul(a, b) == identity_ && mul(b, a) == identity_) inverse_[static_cast<std::size_t>(a)] = b;
  for (Element a = 0; a < n; ++a)
    if (inverse_[static_cast<std::size_t>(a)] < 0)
      throw Error(ErrorCode::InvalidStructure, "element " + std::to_string(a) + " has no inverse");

  // Greedy generators: largest order first, keep an element if it enlarges the span.
  std::vector<Element> by_order(n_);
  std::iota(by_order.begin(), by_order.end(), 0);
  std::stable_sort(by_order.begin(), by_order.end(),
                   [this](Element a, Element b) { return element_order(a) > element_order(b); });
  std::vector<bool> span(n_, false);
  span[static_cast<std::size_t>(identity_)] = true;
  std::size_t covered = 1;
  for (Element a : by_order) {
    if (covered == n_) break;
    if (span[static_cast<std::size_t>(a)]) continue;
    generators_.push_back(a);
    std::deque<Element> queue;
    std::fill(span.begin(), span.end(), false);
    span[static_cast<std::size_t>(identity_)] = true;
    queue.push_back(identity_);
    covered = 1;
    while (!queue.empty()) {
      const Element x = queue.front();
      queue.pop_front();
      for (Element s : generators_) {
        const Element y = mul(x, s);
        if (!span[static_cast<std::size_t>(y)]) {
          span[static_cast<std::size_t>(y)] = true;
          ++covered;
          queue.push_back(y);
        }
      }
    }
  }
}

std::size_t FiniteGroup::element_order(Element a) const {
  std::size_t k = 1;
  for (Element x = a; x != identity_; x = mul(x, a)) ++k;
  return k;
}

std::vector<std::vector<Element>> FiniteGroup::table() const {
  std::vector<std::vector<Element>> t(n_);
  for (std::size_t i = 0; i < n_; ++i) t[i].assign(table_.begin() + static_cast<long>(i * n_), table_.begin() + static_cast<long>((i + 1) * n_));
  return t;
}

bool FiniteGroup::is_abelian() const {
  for (std::size_t a = 0; a < n_; ++a)
    for (std::size_t b = a + 1; b < n_; ++b)
      if (mul(static_cast<Element>(a), static_cast<Element>(b)) != mul(static_cast<Element>(b), static_cast<Element>(a)))
        return false;
  return true;
}

FiniteGroup FiniteGroup::cyclic(std::size_t n) {
  if (n == 0) throw Error(ErrorCode::Parse, "cyclic group of order 0");
  std::vector<std::vector<Element>> t(n, std::vector<Element>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) t[a][b] = static_cast<Element>((a + b) % n);
  return FiniteGroup(std::move(t), "cyclic:" + std::to_string(n));
}

FiniteGroup FiniteGroup::dihedral(std::size_t n) {
  if (n == 0) throw Error(ErrorCode::Parse, "dihedral group of a 0-gon");
  // r^a s^e with s r = r^-1 s; element index e * n + a means s^e r^a.
  const std::size_t m = 2 * n;
  std::vector<std::vector<Element>> t(m, std::vector<Element>(m));
  for (std::size_t x = 0; x < m; ++x)
    for (std::size_t y = 0; y < m; ++y) {
      const std::size_t e1 = x / n, a1 = x % n, e2 = y / n, a2 = y % n;
      // s^e1 r^a1 s^e2 r^a2 = s^(e1+e2) r^(a2 + (e2 ? -a1 : a1))
      const std::size_t a = e2 ? (a2 + n - a1) % n : (a1 + a2) % n;
      t[x][y] = static_cast<Element>(((e1 + e2) % 2) * n + a);
    }
  return FiniteGroup(std::move(t), "dihedral:" + std::to_string(n));
}

FiniteGroup FiniteGroup::s3() {
  std::vector<std::array<int, 3>> perms;
  std::array<int, 3> p{0, 1, 2};
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  std::vector<std::vector<Element>> t(6, std::vector<Element>(6));
  for (std::size_t a = 0; a < 6; ++a)
    for (std::size_t b = 0; b < 6; ++b) {
      std::array<int, 3> c{};
      for (int k = 0; k < 3; ++k) c[static_cast<std::size_t>(k)] = perms[a][static_cast<std::size_t>(perms[b][static_cast<std::size_t>(k)])];
      t[a][b] = static_cast<Element>(std::find(perms.begin(), perms.end(), c) - perms.begin());
    }
  return FiniteGroup(std::move(t), "s3");
}

FiniteGroup FiniteGroup::q8() {
  // Elements +-1, +-i, +-j, +-k as sign * unit: index 2 * unit + (sign < 0).
  const int unit_table[4][4][2] = {
      // {unit, sign} of u_a * u_b with units 1, i, j, k
      {{0, 1}, {1, 1}, {2, 1}, {3, 1}},
      {{1, 1}, {0, -1}, {3, 1}, {2, -1}},
      {{2, 1}, {3, -1}, {0, -1}, {1, 1}},
      {{3, 1}, {2, 1}, {1, -1}, {0, -1}},
  };
  std::vector<std::vector<Element>> t(8, std::vector<Element>(8));
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) {
      const int ua = a / 2, ub = b / 2;
      const int sign = (a % 2 ? -1 : 1) * (b % 2 ? -1 : 1) * unit_table[ua][ub][1];
      t[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = 2 * unit_table[ua][ub][0] + (sign < 0 ? 1 : 0);
    }
  return FiniteGroup(std::move(t), "q8");
}

FiniteGroup FiniteGroup::klein() {
  FiniteGroup g = direct_product(cyclic(2), cyclic(2));
  g.name_ = "klein";
  return g;
}

FiniteGroup FiniteGroup::direct_product(const FiniteGroup& a, const FiniteGroup& b) {
  const std::size_t na = a.order(), nb = b.order();
  std::vector<std::vector<Element>> t(na * nb, std::vector<Element>(na * nb));
  for (std::size_t x = 0; x < na * nb; ++x)
    for (std::size_t y = 0; y < na * nb; ++y) {
      const Element p = a.mul(static_cast<Element>(x / nb), static_cast<Element>(y / nb));
      const Element q = b.mul(static_cast<Element>(x % nb), static_cast<Element>(y % nb));
      t[x][y] = p * static_cast<Element>(nb) + q;
    }
  return FiniteGroup(std::move(t), a.name() + "x" + b.name());
}

FiniteGroup FiniteGroup::preset(const std::string& spec) {
  if (auto x = spec.find('x'); x != std::string::npos && spec.rfind("x", 0) != 0)
    return direct_product(preset(spec.substr(0, x)), preset(spec.substr(x + 1)));
  auto number = [&spec](std::size_t from) {
    const std::string digits = spec.substr(from);
    if (digits.empty() || digits.size() > 4 || !std::all_of(digits.begin(), digits.end(), ::isdigit))
      throw Error(ErrorCode::Parse, "bad group size in '" + spec + "'");
    return static_cast<std::size_t>(std::stoul(digits));
  };
  if (spec.rfind("cyclic:", 0) == 0) return cyclic(number(7));
  if (spec.rfind("dihedral:", 0) == 0) return dihedral(number(9));
  if (spec == "s3") return s3();
  if (spec == "q8") return q8();
  if (spec == "klein") return klein();
  throw Error(ErrorCode::Parse, "unknown group preset '" + spec + "' (cyclic:n, dihedral:n, s3, q8, klein, AxB)");
}

std::optional<ElementMap> extend_homomorphism(const FiniteGroup& g, const FiniteGroup& h,
                                              const std::vector<Element>& generator_images) {
  const auto& gens = g.generators();
  ElementMap phi(g.order(), -1);
  phi[static_cast<std::size_t>(g.identity())] = h.identity();
  std::deque<Element> queue{g.identity()};
  while (!queue.empty()) {
    const Element x = queue.front();
    queue.pop_front();
    for (std::size_t k = 0; k < gens.size(); ++k) {
      const Element y = g.mul(x, gens[k]);
      const Element img = h.mul(phi[static_cast<std::size_t>(x)], generator_images[k]);
      Element& slot = phi[static_cast<std::size_t>(y)];
      if (slot < 0) {
        slot = img;
        queue.push_back(y);
      } else if (slot != img) {
        return std::nullopt;
      }
    }
  }
  return phi;
}

std::vector<ElementMap> isomorphisms(const FiniteGroup& g, const FiniteGroup& h, std::size_t limit) {
  std::vector<ElementMap> out;
  if (g.order() != h.order()) return out;
  const auto& gens = g.generators();
  std::vector<std::vector<Element>> candidates(gens.size());
  for (std::size_t k = 0; k < gens.size(); ++k)
    for (Element y = 0; y < static_cast<Element>(h.order()); ++y)
      if (h.element_order(y) == g.element_order(gens[k])) candidates[k].push_back(y);
  std::vector<Element> images(gens.size());
  auto search = [&](auto&& self, std::size_t k) -> void {
    if (out.size() >= limit) return;
    if (k == gens.size()) {
      auto phi = extend_homomorphism(g, h, images);
      if (!phi) return;
      std::vector<bool> hit(h.order(), false);
      for (Element y : *phi) hit[static_cast<std::size_t>(y)] = true;
      if (std::all_of(hit.begin(), hit.end(), [](bool b) { return b; })) out.push_back(std::move(*phi));
      return;
    }
    for (Element y : candidates[k]) {
      images[k] = y;
      self(self, k + 1);
    }
  };
  search(search, 0);
  return out;
}

bool groups_isomorphic(const FiniteGroup& g, const FiniteGroup& h) { return !isomorphisms(g, h, 1).empty(); }

std::vector<ElementMap> automorphisms(const FiniteGroup& g) { return isomorphisms(g, g); }

std::vector<ElementMap> inner_automorphisms(const FiniteGroup& g) {
  std::set<ElementMap> seen;
  for (Element a = 0; a < static_cast<Element>(g.order()); ++a) {
    ElementMap m(g.order());
    for (Element x = 0; x < static_cast<Element>(g.order()); ++x)
      m[static_cast<std::size_t>(x)] = g.mul(g.mul(a, x), g.inv(a));
    seen.insert(std::move(m));
  }
  return {seen.begin(), seen.end()};
}

ElementMap compose(const ElementMap& a, const ElementMap& b) {
  ElementMap c(b.size());
  for (std::size_t x = 0; x < b.size(); ++x) c[x] = a[static_cast<std::size_t>(b[x])];
  return c;
}

ElementMap inverse_map(const ElementMap& a) {
  ElementMap c(a.size());
  for (std::size_t x = 0; x < a.size(); ++x) c[static_cast<std::size_t>(a[x])] = static_cast<Element>(x);
  return c;
}

bool is_inner(const FiniteGroup& g, const ElementMap& q) {
  for (const auto& c : inner_automorphisms(g))
    if (c == q) return true;
  return false;
}

std::vector<std::vector<Element>> subgroups(const FiniteGroup& g) {
  const std::size_t n = g.order();
  std::set<std::vector<Element>> seen;
  std::vector<std::vector<Element>> out;
  std::deque<std::pair<std::vector<Element>, std::vector<Element>>> queue;  // (elements, generators)
  std::vector<Element> trivial{g.identity()};
  seen.insert(trivial);
  queue.emplace_back(trivial, std::vector<Element>{});
  std::vector<char> member(n);
  while (!queue.empty()) {
    auto [elems, gens] = std::move(queue.front());
    queue.pop_front();
    out.push_back(elems);
    std::fill(member.begin(), member.end(), 0);
    for (Element x : elems) member[static_cast<std::size_t>(x)] = 1;
    for (Element extra = 0; extra < static_cast<Element>(n); ++extra) {
      if (member[static_cast<std::size_t>(extra)]) continue;
      std::vector<Element> ngens = gens;
      ngens.push_back(extra);
      std::vector<char> in(n, 0);
      std::vector<Element> span{g.identity()};
      in[static_cast<std::size_t>(g.identity())] = 1;
      for (std::size_t k = 0; k < span.size(); ++k)
        for (Element s : ngens) {
          const Element y = g.mul(span[k], s);
          if (!in[static_cast<std::size_t>(y)]) {
            in[static_cast<std::size_t>(y)] = 1;
            span.push_back(y);
          }
        }
      std::sort(span.begin(), span.end());
      if (seen.insert(span).second) queue.emplace_back(std::move(span), std::move(ngens));
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.size() != b.size() ? a.size() < b.size() : a < b; });
  return out;
}

}  // namespace poissonkit::morita
