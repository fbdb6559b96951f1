#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <span>
#include <string_view>
#include <vector>

#include "treepack/error.hpp"

namespace treepack {

using Vertex = std::uint32_t;

// A self-map of Z_n stored as its value table: values()[v] == g(v).
class Mapping {
 public:
  Mapping() = default;
  explicit Mapping(std::vector<Vertex> values);

  static Mapping identity(std::size_t n);
  static Mapping transposition(std::size_t n, Vertex a, Vertex b);

  std::size_t size() const noexcept { return values_.size(); }
  Vertex operator()(Vertex v) const { return values_[v]; }
  std::span<const Vertex> values() const noexcept { return values_; }

  bool is_identity() const noexcept;
  bool is_permutation() const noexcept;
  // Throws NotAPermutation when the map is not a bijection.
  Mapping inverse() const;

  friend auto operator<=>(const Mapping&, const Mapping&) = default;

 private:
  std::vector<Vertex> values_;
};

// outer ∘ inner
Mapping compose(const Mapping& outer, const Mapping& inner);
// perm ∘ g ∘ perm^{-1}; relabels every vertex v of g as perm(v).
Mapping conjugate(const Mapping& g, const Mapping& perm);
// g^{(j)}, with g^{(0)} the identity.
Mapping iterate(const Mapping& g, std::uint64_t j);
// Sorted, duplicate-free image g(Z_n).
std::vector<Vertex> image(const Mapping& g);
// True iff |g^{(n-1)}(Z_n)| == 1.
bool is_functional_tree(const Mapping& g);

// A rooted spanning functional tree: every vertex reaches the root, which is
// the only fixed point.
class FuncTree {
 public:
  explicit FuncTree(Mapping map);

  const Mapping& map() const noexcept { return map_; }
  Vertex root() const noexcept { return root_; }
  std::size_t size() const noexcept { return map_.size(); }

 private:
  Mapping map_;
  Vertex root_ = 0;
};

// A functional tree component on part of Z_n; every vertex outside the
// component is an isolated fixed point (a loop).
class AugFuncTree {
 public:
  AugFuncTree(Mapping map, Vertex root);

  std::size_t n() const noexcept { return map_.size(); }
  // Component size m.
  std::size_t size() const noexcept { return component_.size(); }
  Vertex root() const noexcept { return root_; }
  const Mapping& map() const noexcept { return map_; }
  Vertex parent(Vertex v) const { return map_(v); }
  // Sorted component vertex set.
  std::span<const Vertex> component() const noexcept { return component_; }

  bool in_component(Vertex v) const;
  bool is_leaf(Vertex v) const;
  bool is_star() const;
  // Distance to the root, for component vertices.
  std::size_t depth(Vertex v) const;
  // Number of tree edges at v (children plus the parent edge), loop excluded.
  std::size_t degree(Vertex v) const;
  // Component vertices in breadth-first order from the root; children of a
  // vertex are consecutive and ascending.
  std::vector<Vertex> bfs_order() const;
  // Membership in T_{m,n}: component Z_m, root 0, g(u) < u for u in Z_m\{0}.
  bool in_semigroup_form() const;

  friend bool operator==(const AugFuncTree& a, const AugFuncTree& b) {
    return a.root_ == b.root_ && a.map_ == b.map_;
  }

 private:
  Mapping map_;
  Vertex root_ = 0;
  std::vector<Vertex> component_;
};

// Tree on Z_m given by parent array, augmented with loops on Z_n \ Z_m.
AugFuncTree build_tree(std::span<const Vertex> parents, std::size_t n);

struct SiblingLeaves {
  // {v in component \ {root} : g(v) == g(deepest)}, ascending.
  std::vector<Vertex> members;
  // Highest-labeled vertex among those of maximum depth.
  Vertex deepest = 0;
  // Highest-labeled component vertex.
  Vertex top = 0;
  // Transposition (deepest top) that moves the deepest leaf to the top label.
  Mapping relabel;
};

SiblingLeaves sibling_leaf_set(const AugFuncTree& tree);

// Moves every sibling leaf of the deepest vertex to its grandparent.
AugFuncTree local_compose(const AugFuncTree& tree);
AugFuncTree compose_square(const AugFuncTree& tree);
// Number of local_compose steps needed to reach a star.
std::size_t composition_distance(const AugFuncTree& tree);

struct CanonicalForm {
  AugFuncTree tree;
  // gamma with gamma ∘ g ∘ gamma^{-1} == tree.map().
  Mapping witness;
};

CanonicalForm canonical_form(const AugFuncTree& tree);

enum class TreeKind { Star, Path, Caterpillar, RandomRecursive, RandomUniform };

std::string_view to_string(TreeKind kind);
TreeKind parse_tree_kind(std::string_view name);

// Deterministic in (kind, m, n, seed). Output is always in T_{m,n} form.
AugFuncTree generate(TreeKind kind, std::size_t m, std::size_t n,
                     std::uint64_t seed);

// n augmented trees on Z_n, slot k having component size k+1, stored in
// T_{k+1,n} form (root 0).
class AugTreeFamily {
 public:
  explicit AugTreeFamily(std::vector<AugFuncTree> trees);

  // parents[k] has k+1 entries with parents[k][0] == 0 and parents[k][u] < u.
  static AugTreeFamily from_parents(
      const std::vector<std::vector<Vertex>>& parents);
  // Canonicalizes arbitrary trees of sizes 1..n into T form first.
  static AugTreeFamily canonicalized(const std::vector<AugFuncTree>& trees);

  std::size_t n() const noexcept { return trees_.size(); }
  const AugFuncTree& tree(std::size_t k) const { return trees_[k]; }
  std::span<const AugFuncTree> trees() const noexcept { return trees_; }
  std::vector<Vertex> parents(std::size_t k) const;

  // Slot k conjugated by the transposition (0 k): root k, component Z_{k+1}.
  // Labelings act on these maps.
  AugFuncTree slot_tree(std::size_t k) const;

  AugTreeFamily with_tree(std::size_t k, const AugFuncTree& tree) const;

  friend bool operator==(const AugTreeFamily&, const AugTreeFamily&) = default;

 private:
  std::vector<AugFuncTree> trees_;
};

AugTreeFamily compose_square(const AugTreeFamily& family);
AugTreeFamily star_family(std::size_t n);
// Every slot drawn from the same generator kind; slot seeds derived from seed.
AugTreeFamily generate_family(TreeKind kind, std::size_t n, std::uint64_t seed);

// prod_{m=1}^{n} (m-1)!; BoundExceeded past n = 10 (uint64 overflow).
std::uint64_t family_count(std::size_t n);

// Enumerates every family in T form exactly once, in mixed-radix order: the
// parent of the last vertex of the largest tree varies fastest.
class FamilyEnumerator {
 public:
  explicit FamilyEnumerator(std::size_t n);

  std::size_t n() const noexcept { return n_; }
  std::uint64_t count() const noexcept { return count_; }
  AugTreeFamily unrank(std::uint64_t index) const;

  // Raw odometer over parent arrays, cheap enough for counting at n = 7.
  class Cursor {
   public:
    explicit Cursor(std::size_t n);
    const std::vector<std::vector<Vertex>>& parents() const noexcept {
      return parents_;
    }
    // Returns false after the last family.
    bool advance();

   private:
    std::vector<std::vector<Vertex>> parents_;
  };

  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = AugTreeFamily;
    using difference_type = std::ptrdiff_t;

    iterator() = default;
    iterator(std::size_t n, bool at_end);

    AugTreeFamily operator*() const;
    iterator& operator++();
    iterator operator++(int) {
      iterator copy = *this;
      ++*this;
      return copy;
    }
    friend bool operator==(const iterator& a, const iterator& b) {
      return a.done_ == b.done_ && (a.done_ || a.index_ == b.index_);
    }

   private:
    Cursor cursor_{0};
    std::uint64_t index_ = 0;
    bool done_ = true;
  };

  iterator begin() const { return iterator(n_, false); }
  iterator end() const { return iterator(n_, true); }

 private:
  std::size_t n_;
  std::uint64_t count_;
};

}  // namespace treepack
