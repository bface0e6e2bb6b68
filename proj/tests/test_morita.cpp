#include <doctest.h>

#include <chrono>
#include <numeric>
#include <random>

#include "poissonkit/error.hpp"
#include "poissonkit/morita/json.hpp"

using namespace poissonkit;
using namespace poissonkit::morita;

namespace {

GroupPtr make(const std::string& spec) { return std::make_shared<const FiniteGroup>(FiniteGroup::preset(spec)); }

// One group of each isomorphism type of order at most 8.
const std::vector<std::string> small_groups = {"cyclic:1", "cyclic:2", "cyclic:3", "cyclic:4",
                                               "klein",    "cyclic:5", "cyclic:6", "s3",
                                               "cyclic:7", "cyclic:8", "cyclic:2xcyclic:4",
                                               "cyclic:2xklein", "dihedral:4", "q8"};

std::size_t totient(std::size_t n) {
  std::size_t c = 0;
  for (std::size_t k = 1; k <= n; ++k) c += std::gcd(k, n) == 1;
  return c;
}

std::size_t center_order(const FiniteGroup& g) {
  std::size_t c = 0;
  for (Element a = 0; a < static_cast<Element>(g.order()); ++a) {
    bool central = true;
    for (Element b = 0; b < static_cast<Element>(g.order()) && central; ++b) central = g.mul(a, b) == g.mul(b, a);
    c += central;
  }
  return c;
}

bool inner_by_search(const FiniteGroup& g, const ElementMap& m) {
  for (Element a = 0; a < static_cast<Element>(g.order()); ++a) {
    bool ok = true;
    for (Element x = 0; x < static_cast<Element>(g.order()) && ok; ++x)
      ok = m[static_cast<std::size_t>(x)] == g.mul(g.mul(a, x), g.inv(a));
    if (ok) return true;
  }
  return false;
}

// A random bispace: a transitive one or a union of two.
Bispace random_bispace(std::mt19937_64& rng, const GroupPtr& g, const GroupPtr& h) {
  auto all = transitive_bispaces(g, h);
  std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
  Bispace x = all[pick(rng)];
  if (rng() % 3 == 0) x = Bispace::disjoint_union(x, all[pick(rng)]);
  return x;
}

bool iso(const Bispace& a, const Bispace& b) { return bispace_iso(a, b).has_value(); }

}  // namespace

TEST_CASE("groups: presets validate and have the expected orders") {
  CHECK(FiniteGroup::cyclic(12).order() == 12);
  CHECK(FiniteGroup::dihedral(6).order() == 12);
  CHECK(FiniteGroup::s3().order() == 6);
  CHECK(FiniteGroup::q8().order() == 8);
  CHECK(FiniteGroup::klein().order() == 4);
  CHECK(FiniteGroup::preset("cyclic:2xcyclic:4").order() == 8);
  CHECK_FALSE(FiniteGroup::s3().is_abelian());
  CHECK_FALSE(FiniteGroup::q8().is_abelian());
  CHECK(FiniteGroup::klein().is_abelian());
  CHECK_THROWS_AS(FiniteGroup::preset("cyclic:"), Error);
  CHECK_THROWS_AS(FiniteGroup::preset("a5"), Error);
}

TEST_CASE("groups: invalid tables are rejected") {
  // A Latin square that is not associative.
  const std::vector<std::vector<int>> latin = {{0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}};
  try {
    FiniteGroup g(latin);
    FAIL("accepted a non-associative table");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidStructure);
  }
  CHECK_THROWS_AS(FiniteGroup({{0, 0}, {0, 0}}), Error);  // no inverse for 1
  CHECK_THROWS_AS(FiniteGroup({{0, 1}, {1, 2}}), Error);  // out of range
  CHECK_THROWS_AS(FiniteGroup({{0, 1}}), Error);          // not square
}

TEST_CASE("groups: isomorphism classes of small groups") {
  CHECK(groups_isomorphic(FiniteGroup::dihedral(3), FiniteGroup::s3()));
  CHECK(groups_isomorphic(FiniteGroup::dihedral(2), FiniteGroup::klein()));
  CHECK(groups_isomorphic(FiniteGroup::preset("cyclic:2xcyclic:3"), FiniteGroup::cyclic(6)));
  CHECK_FALSE(groups_isomorphic(FiniteGroup::cyclic(4), FiniteGroup::klein()));
  CHECK_FALSE(groups_isomorphic(FiniteGroup::dihedral(4), FiniteGroup::q8()));
  for (std::size_t i = 0; i < small_groups.size(); ++i)
    for (std::size_t j = 0; j < small_groups.size(); ++j)
      CHECK(groups_isomorphic(*make(small_groups[i]), *make(small_groups[j])) == (i == j));
}

TEST_CASE("groups: automorphism counts against closed forms") {
  for (std::size_t n = 1; n <= 12; ++n) {
    const auto g = FiniteGroup::cyclic(n);
    CHECK(automorphisms(g).size() == totient(n));
    CHECK(inner_automorphisms(g).size() == 1);
  }
  for (std::size_t n = 3; n <= 6; ++n) {
    const auto g = FiniteGroup::dihedral(n);
    CHECK(automorphisms(g).size() == n * totient(n));
    CHECK(inner_automorphisms(g).size() == g.order() / center_order(g));
  }
  CHECK(automorphisms(FiniteGroup::klein()).size() == 6);
  CHECK(automorphisms(FiniteGroup::s3()).size() == 6);
  CHECK(automorphisms(FiniteGroup::q8()).size() == 24);
  CHECK(inner_automorphisms(FiniteGroup::q8()).size() == 4);
}

TEST_CASE("bispace: validation of actions") {
  auto g = make("cyclic:3");
  // Left action by a non-homomorphism.
  CHECK_THROWS_AS(Bispace(g, g, 3, {0, 1, 2, 1, 2, 0, 1, 2, 0}, {0, 1, 2, 1, 2, 0, 2, 0, 1}), Error);
  // Non-commuting: left multiplication on Z3 with right action twisted by a non-automorphism is caught.
  CHECK_THROWS_AS(Bispace::twisted(g, {0, 0, 0}), Error);
  auto s = make("s3");
  // S3 acting on the left by left multiplication and on the right by left multiplication does not commute.
  std::vector<int> l(36), r(36);
  for (Element a = 0; a < 6; ++a)
    for (Element x = 0; x < 6; ++x) {
      l[static_cast<std::size_t>(a * 6 + x)] = s->mul(a, x);
      r[static_cast<std::size_t>(x * 6 + a)] = s->mul(x, a);
    }
  CHECK_NOTHROW(Bispace(s, s, 6, l, r));
  std::vector<int> bad(36);
  for (Element x = 0; x < 6; ++x)
    for (Element a = 0; a < 6; ++a) bad[static_cast<std::size_t>(x * 6 + a)] = s->mul(s->inv(a), x);
  CHECK_THROWS_AS(Bispace(s, s, 6, l, bad), Error);
}

TEST_CASE("is_invertible: examples") {
  auto g = make("s3");
  CHECK(is_invertible(Bispace::regular(g)));
  const auto u = Bispace::disjoint_union(Bispace::regular(g), Bispace::regular(g));
  std::size_t orbits = 0;
  u.orbit_labels(&orbits);
  CHECK(orbits == 2);
  CHECK_FALSE(is_invertible(u));
  // Different orders: no transitive bispace is invertible.
  auto a = make("cyclic:2"), b = make("cyclic:4");
  for (const auto& x : transitive_bispaces(a, b)) CHECK_FALSE(is_invertible(x));
  for (const auto& x : transitive_bispaces(b, a)) CHECK_FALSE(is_invertible(x));
}

TEST_CASE("tensor: regular bispace is a unit") {
  std::mt19937_64 rng(11);
  for (const char* gs : {"cyclic:4", "s3", "klein"})
    for (const char* hs : {"cyclic:2", "cyclic:3", "s3"}) {
      auto g = make(gs), h = make(hs);
      for (int t = 0; t < 4; ++t) {
        const Bispace y = random_bispace(rng, g, h);
        CHECK(iso(tensor(Bispace::regular(g), y), y));
        CHECK(iso(tensor(y, Bispace::regular(h)), y));
      }
    }
}

TEST_CASE("tensor: twisted bispaces compose like automorphisms") {
  for (const char* gs : {"cyclic:5", "klein", "s3", "dihedral:4", "q8"}) {
    auto g = make(gs);
    const auto auts = automorphisms(*g);
    for (const auto& q1 : auts)
      for (const auto& q2 : auts) {
        const Bispace t = tensor(Bispace::twisted(g, q1), Bispace::twisted(g, q2));
        CHECK(t.points() == g->order());
        CHECK(iso(t, Bispace::twisted(g, compose(q1, q2))));
      }
  }
}

TEST_CASE("tensor: orbit count when the middle action is free") {
  std::mt19937_64 rng(5);
  auto g = make("cyclic:2"), h = make("s3"), k = make("cyclic:3");
  int checked = 0;
  for (int t = 0; t < 60; ++t) {
    const Bispace x = random_bispace(rng, g, h);
    const Bispace y = random_bispace(rng, h, k);
    if (!right_free(x)) continue;
    ++checked;
    CHECK(tensor(x, y).points() * h->order() == x.points() * y.points());
  }
  CHECK(checked > 5);
}

TEST_CASE("tensor: group mismatch") {
  auto g = make("cyclic:2"), h = make("cyclic:3");
  try {
    (void)tensor(Bispace::regular(g), Bispace::regular(h));
    FAIL("expected a mismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DimensionMismatch);
  }
}

TEST_CASE("tensor: associativity up to isomorphism on random triples") {
  std::mt19937_64 rng(2024);
  const std::vector<std::string> pool = {"cyclic:2", "cyclic:3", "cyclic:4", "klein", "s3", "cyclic:2xcyclic:4", "q8", "dihedral:4"};
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  for (int t = 0; t < 30; ++t) {
    auto g = make(pool[pick(rng)]), h = make(pool[pick(rng)]), k = make(pool[pick(rng)]), l = make(pool[pick(rng)]);
    const Bispace x = random_bispace(rng, g, h), y = random_bispace(rng, h, k), z = random_bispace(rng, k, l);
    const Bispace left = tensor(tensor(x, y), z);
    const Bispace right = tensor(x, tensor(y, z));
    CHECK(iso(left, right));
  }
}

TEST_CASE("bispace_iso: witness, cardinality and twisted classes") {
  std::mt19937_64 rng(3);
  auto g = make("s3"), h = make("cyclic:2");
  for (int t = 0; t < 10; ++t) {
    const Bispace x = random_bispace(rng, g, h);
    const auto w = bispace_iso(x, x);
    REQUIRE(w);
    CHECK(w->size() == x.points());
  }
  const auto all = transitive_bispaces(g, h);
  for (const auto& a : all)
    for (const auto& b : all)
      if (a.points() != b.points()) CHECK_FALSE(iso(a, b));
  CHECK_FALSE(iso(Bispace::regular(make("cyclic:4")), Bispace::regular(make("klein"))));

  for (const char* gs : {"cyclic:4", "s3", "q8", "dihedral:4"}) {
    auto grp = make(gs);
    const auto auts = automorphisms(*grp);
    for (const auto& q : auts)
      for (const auto& q2 : auts)
        CHECK(iso(Bispace::twisted(grp, q), Bispace::twisted(grp, q2)) ==
              inner_by_search(*grp, compose(q2, inverse_map(q))));
  }
}

TEST_CASE("bispace_iso: witness is equivariant on a relabelled copy") {
  auto g = make("dihedral:4"), h = make("cyclic:2");
  std::mt19937_64 rng(8);
  for (const auto& x : transitive_bispaces(g, h)) {
    std::vector<int> perm(x.points());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<int> l(x.l_act().size()), r(x.r_act().size());
    for (Element a = 0; a < static_cast<Element>(g->order()); ++a)
      for (int p = 0; p < static_cast<int>(x.points()); ++p)
        l[static_cast<std::size_t>(a) * x.points() + static_cast<std::size_t>(perm[static_cast<std::size_t>(p)])] =
            perm[static_cast<std::size_t>(x.act_left(a, p))];
    for (int p = 0; p < static_cast<int>(x.points()); ++p)
      for (Element b = 0; b < static_cast<Element>(h->order()); ++b)
        r[static_cast<std::size_t>(perm[static_cast<std::size_t>(p)]) * h->order() + static_cast<std::size_t>(b)] =
            perm[static_cast<std::size_t>(x.act_right(p, b))];
    const Bispace y(g, h, x.points(), l, r);
    const auto w = bispace_iso(x, y);
    REQUIRE(w);
    for (int p = 0; p < static_cast<int>(x.points()); ++p)
      for (Element a = 0; a < static_cast<Element>(g->order()); ++a)
        CHECK((*w)[static_cast<std::size_t>(x.act_left(a, p))] == y.act_left(a, (*w)[static_cast<std::size_t>(p)]));
  }
}

TEST_CASE("invertible bispaces: inverse is the flip") {
  for (const char* gs : {"cyclic:6", "s3", "q8", "klein"}) {
    auto g = make(gs);
    for (const auto& x : transitive_bispaces(g, g)) {
      if (!is_invertible(x)) continue;
      CHECK(iso(tensor(x, Bispace::flip(x)), Bispace::regular(g)));
      CHECK(iso(tensor(Bispace::flip(x), x), Bispace::regular(g)));
    }
  }
}

TEST_CASE("invertibility matches free and transitive, exhaustively for small orders") {
  // Algebraic invertibility: some Y with X Y = G and Y X = H. Only transitive
  // X and Y can qualify, since a union on either side makes the product a union.
  const std::vector<std::string> tiny = {"cyclic:1", "cyclic:2", "cyclic:3", "cyclic:4", "klein"};
  for (const auto& gs : tiny)
    for (const auto& hs : tiny) {
      auto g = make(gs), h = make(hs);
      const auto xs = transitive_bispaces(g, h);
      const auto ys = transitive_bispaces(h, g);
      bool any = false;
      for (const auto& x : xs) {
        bool algebraic = false;
        for (const auto& y : ys)
          if (iso(tensor(x, y), Bispace::regular(g)) && iso(tensor(y, x), Bispace::regular(h))) {
            algebraic = true;
            break;
          }
        CHECK(algebraic == is_invertible(x));
        any = any || algebraic;
      }
      CHECK(any == groups_isomorphic(*g, *h));
    }
}

TEST_CASE("picard: examples") {
  const auto s3 = picard_group(make("s3"));
  CHECK(s3.order == 1);
  CHECK(s3.matches_out);
  const auto z4 = picard_group(make("cyclic:4"));
  CHECK(z4.order == 2);
  CHECK(z4.matches_out);
  CHECK(z4.table[1][1] == 0);
  const auto k = picard_group(make("klein"));
  CHECK(k.order == 6);
  CHECK(k.matches_out);
  // GL(2, F2) is not abelian.
  bool abelian = true;
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) abelian = abelian && k.table[i][j] == k.table[j][i];
  CHECK_FALSE(abelian);
}

TEST_CASE("picard: battery against |Aut|/|Inn| from closed forms") {
  auto out_order = [](const std::string& s) -> std::size_t {
    if (s.rfind("cyclic:", 0) == 0) return totient(std::stoul(s.substr(7)));
    if (s.rfind("dihedral:", 0) == 0) {
      const std::size_t n = std::stoul(s.substr(9));
      if (n == 1) return 1;
      if (n == 2) return 6;
      return totient(n) * (n % 2 ? 1 : 2) / 2;
    }
    if (s == "s3") return 1;
    if (s == "q8") return 6;
    if (s == "klein") return 6;
    return 0;
  };
  std::vector<std::string> battery = {"s3", "q8", "klein"};
  for (int n = 1; n <= 12; ++n) battery.push_back("cyclic:" + std::to_string(n));
  for (int n = 1; n <= 6; ++n) battery.push_back("dihedral:" + std::to_string(n));
  for (const auto& s : battery) {
    CAPTURE(s);
    const auto p = picard_group(make(s));
    CHECK(p.order == out_order(s));
    CHECK(p.order * p.inn_order == p.aut_order);
    CHECK(p.matches_out);
    // Table is a group table with identity 0.
    for (std::size_t i = 0; i < p.order; ++i) {
      CHECK(p.table[0][i] == static_cast<int>(i));
      std::vector<bool> row(p.order, false);
      for (std::size_t j = 0; j < p.order; ++j) row[static_cast<std::size_t>(p.table[i][j])] = true;
      CHECK(std::all_of(row.begin(), row.end(), [](bool b) { return b; }));
    }
  }
}

TEST_CASE("picard: graph-subgroup enumeration agrees with all transitive bispaces") {
  for (const auto& s : small_groups) {
    auto g = make(s);
    if (g->order() > 6) continue;
    std::vector<Bispace> classes;
    for (const auto& x : transitive_bispaces(g, g)) {
      if (!is_invertible(x)) continue;
      bool seen = false;
      for (const auto& c : classes) seen = seen || iso(c, x);
      if (!seen) classes.push_back(x);
    }
    CAPTURE(s);
    CHECK(classes.size() == picard_group(g).order);
  }
}

TEST_CASE("picard: cap") {
  try {
    (void)picard_group(make("cyclic:25"));
    FAIL("expected cap");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CapExceeded);
  }
  CHECK(picard_group(make("cyclic:25"), 30).order == 20);
}

TEST_CASE("json: groups, bispaces and Picard results") {
  const auto g = group_from_json(nlohmann::json{{"table", {{0, 1}, {1, 0}}}});
  CHECK(g.order() == 2);
  CHECK(group_from_json("dihedral:3").order() == 6);
  CHECK(group_from_json(nlohmann::json{{"preset", "q8"}}).order() == 8);
  try {
    (void)group_from_json(nlohmann::json{{"table", {{0, 1}, {1, 1}}}}, "/group");
    FAIL("accepted a bad table");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidStructure);
    CHECK(e.path().rfind("/group/table", 0) == 0);
  }
  try {
    (void)group_from_json(nlohmann::json{{"table", {{0, "a"}}}});
    FAIL("accepted a string entry");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Schema);
    CHECK(e.path() == "/table/0/1");
  }
  auto s = make("s3");
  for (const auto& x : transitive_bispaces(s, s)) {
    const Bispace back = bispace_from_json(to_json(x), s, s);
    CHECK(back.l_act() == x.l_act());
    CHECK(back.r_act() == x.r_act());
  }
  const auto j = to_json(picard_group(make("klein")));
  CHECK(j["order"] == 6);
  CHECK(j["out_order"] == 6);
  CHECK(j["matches_out"] == true);
  CHECK(j["generators"].size() == 2);
}
