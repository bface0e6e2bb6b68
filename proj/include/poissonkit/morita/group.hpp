#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace poissonkit::morita {

using Element = int;
/// A map of group elements, perm[g] = image of g.
using ElementMap = std::vector<Element>;

/// A finite group given by its multiplication table on 0..n-1.
class FiniteGroup {
 public:
  FiniteGroup() = default;
  /// Throws Error(InvalidStructure) unless the table is a group (closure,
  /// associativity, identity, inverses).
  explicit FiniteGroup(std::vector<std::vector<Element>> table, std::string name = "");

  static FiniteGroup cyclic(std::size_t n);
  /// Symmetries of the regular n-gon, order 2n: r^k = k, s r^k = n + k.
  static FiniteGroup dihedral(std::size_t n);
  /// Permutations of {0, 1, 2} in lexicographic order.
  static FiniteGroup s3();
  static FiniteGroup q8();
  static FiniteGroup klein();
  /// (a, b) = a * |B| + b.
  static FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b);
  /// "cyclic:n", "dihedral:n", "s3", "q8", "klein", and products joined by "x"
  /// such as "cyclic:2xcyclic:4". Throws Error(Parse) otherwise.
  static FiniteGroup preset(const std::string& spec);

  std::size_t order() const { return n_; }
  const std::string& name() const { return name_; }
  Element mul(Element a, Element b) const { return table_[static_cast<std::size_t>(a) * n_ + static_cast<std::size_t>(b)]; }
  Element inv(Element a) const { return inverse_[static_cast<std::size_t>(a)]; }
  Element identity() const { return identity_; }
  std::size_t element_order(Element a) const;
  std::vector<std::vector<Element>> table() const;
  /// A small generating set chosen greedily by element order.
  const std::vector<Element>& generators() const { return generators_; }
  bool is_abelian() const;

  /// Same order and same table.
  friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) { return a.n_ == b.n_ && a.table_ == b.table_; }

 private:
  void finish();

  std::size_t n_ = 0;
  std::string name_;
  std::vector<Element> table_;
  std::vector<Element> inverse_;
  Element identity_ = 0;
  std::vector<Element> generators_;
};

/// Extends generator images to a homomorphism along the Cayley graph, or
/// nullopt when the images are inconsistent.
std::optional<ElementMap> extend_homomorphism(const FiniteGroup& g, const FiniteGroup& h,
                                              const std::vector<Element>& generator_images);

/// All isomorphisms G -> H (up to `limit`), by backtracking over generator
/// images of matching element order.
std::vector<ElementMap> isomorphisms(const FiniteGroup& g, const FiniteGroup& h, std::size_t limit = SIZE_MAX);
bool groups_isomorphic(const FiniteGroup& g, const FiniteGroup& h);
std::vector<ElementMap> automorphisms(const FiniteGroup& g);
/// Distinct conjugation maps x -> a x a^-1.
std::vector<ElementMap> inner_automorphisms(const FiniteGroup& g);

/// a o b (apply b first).
ElementMap compose(const ElementMap& a, const ElementMap& b);
ElementMap inverse_map(const ElementMap& a);
bool is_inner(const FiniteGroup& g, const ElementMap& q);

/// Every subgroup, as sorted element lists ordered by size, found by closing
/// under one extra element at a time.
std::vector<std::vector<Element>> subgroups(const FiniteGroup& g);

}  // namespace poissonkit::morita
