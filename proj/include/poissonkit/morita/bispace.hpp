#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

#include "poissonkit/morita/group.hpp"

namespace poissonkit::morita {

using GroupPtr = std::shared_ptr<const FiniteGroup>;

/// A finite set with a left G-action and a right H-action that commute.
class Bispace {
 public:
  /// l_act[g * points + x] = g.x, r_act[x * |H| + h] = x.h. Throws
  /// Error(InvalidStructure) if an action law or commutation fails.
  Bispace(GroupPtr left, GroupPtr right, std::size_t points, std::vector<int> l_act, std::vector<int> r_act);

  /// G acting on itself by left and right multiplication.
  static Bispace regular(GroupPtr g);
  /// G with g.x = g x and x.h = x q(h), q an automorphism.
  static Bispace twisted(GroupPtr g, const ElementMap& q);
  /// The (H, G)-bispace h.x = x h^-1, x.g = g^-1 x.
  static Bispace flip(const Bispace& x);
  static Bispace disjoint_union(const Bispace& x, const Bispace& y);
  /// Left cosets of a subgroup S of G x H (encoded (g, h) = g * |H| + h), with
  /// g.x = (g, e) x and x.h = (e, h^-1) x.
  static Bispace cosets(GroupPtr g, GroupPtr h, const std::vector<Element>& subgroup);

  const FiniteGroup& left() const { return *left_; }
  const FiniteGroup& right() const { return *right_; }
  const GroupPtr& left_ptr() const { return left_; }
  const GroupPtr& right_ptr() const { return right_; }
  std::size_t points() const { return points_; }
  int act_left(Element g, int x) const { return l_act_[static_cast<std::size_t>(g) * points_ + static_cast<std::size_t>(x)]; }
  int act_right(int x, Element h) const { return r_act_[static_cast<std::size_t>(x) * right_->order() + static_cast<std::size_t>(h)]; }
  const std::vector<int>& l_act() const { return l_act_; }
  const std::vector<int>& r_act() const { return r_act_; }

  /// Orbits of the combined action (g, h).x = g.x.h^-1, as a label per point.
  std::vector<int> orbit_labels(std::size_t* count = nullptr) const;
  /// {(g, h) : g.x.h^-1 = x}, encoded g * |H| + h, sorted.
  std::vector<Element> stabilizer(int x) const;

 private:
  GroupPtr left_, right_;
  std::size_t points_;
  std::vector<int> l_act_, r_act_;
};

/// (X x Y) / H under (x, y) -> (x h, h^-1 y). Throws Error(DimensionMismatch)
/// when the right group of x is not the left group of y.
Bispace tensor(const Bispace& x, const Bispace& y);

bool left_free(const Bispace& x);
bool left_transitive(const Bispace& x);
bool right_free(const Bispace& x);
bool right_transitive(const Bispace& x);
/// Both actions free and transitive.
bool is_invertible(const Bispace& x);

/// An equivariant bijection X -> Y (witness[x] = image), or nullopt. Bispaces
/// over different group pairs are never isomorphic.
std::optional<std::vector<int>> bispace_iso(const Bispace& x, const Bispace& y);

/// The coset space of every subgroup of G x H. Every transitive bispace is
/// isomorphic to one of these.
std::vector<Bispace> transitive_bispaces(const GroupPtr& g, const GroupPtr& h);

struct PicardResult {
  std::size_t order = 0;
  /// One invertible bispace per isomorphism class; class 0 is the regular one.
  std::vector<Bispace> classes;
  /// table[i][j] = class of classes[i] tensor classes[j].
  std::vector<std::vector<int>> table;
  /// An automorphism q with classes[i] isomorphic to twisted(q).
  std::vector<ElementMap> automorphism;
  std::vector<int> generators;
  std::size_t aut_order = 0;
  std::size_t inn_order = 0;
  /// q -> twisted(q) is a well defined group isomorphism Aut/Inn -> Pic.
  bool matches_out = false;
};

/// Enumerates invertible (G, G)-bispaces as coset spaces of subgroups of G x G
/// meeting both factors trivially, identifies them up to isomorphism, tabulates
/// the tensor product and compares with Aut(G)/Inn(G). Throws
/// Error(CapExceeded) when |G| > cap.
PicardResult picard_group(const GroupPtr& g, std::size_t cap = 24);

}  // namespace poissonkit::morita
