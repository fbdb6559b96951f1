#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "treepack/functree.hpp"

namespace treepack {

struct Arc {
  Vertex tail = 0;
  Vertex head = 0;
  friend auto operator<=>(const Arc&, const Arc&) = default;
};

// One permutation per family slot. sigma(k) acts on slot_tree(k), i.e. the
// root-at-k form of tree k.
class Labeling {
 public:
  explicit Labeling(std::vector<Mapping> sigmas);
  static Labeling identity(std::size_t n);

  std::size_t n() const noexcept { return sigmas_.size(); }
  const Mapping& sigma(std::size_t k) const { return sigmas_[k]; }
  std::span<const Mapping> sigmas() const noexcept { return sigmas_; }

  Labeling with_sigma(std::size_t k, Mapping sigma) const;
  // (gamma ∘ sigma_0, ..., gamma ∘ sigma_{n-1}): relabels the host graph.
  Labeling relabeled(const Mapping& gamma) const;

  friend auto operator<=>(const Labeling&, const Labeling&) = default;

 private:
  std::vector<Mapping> sigmas_;
};

// Functional: loops count, so the n roots must land on n distinct vertices.
// Classical: loops are ignored and only the C(n,2) tree edges must be disjoint.
enum class LoopMode { Functional, Classical };

class EdgeOrientation {
 public:
  EdgeOrientation(std::size_t n, std::vector<Arc> arcs);

  std::size_t n() const noexcept { return n_; }
  // Sorted lexicographically, no duplicates.
  std::span<const Arc> arcs() const noexcept { return arcs_; }
  // Every loop present and exactly one direction for every pair.
  bool is_complete() const;
  // Row-major n*n 0/1 matrix of arcs plus their reverses.
  std::vector<std::uint8_t> symmetrized() const;

  friend bool operator==(const EdgeOrientation&, const EdgeOrientation&) = default;

 private:
  std::size_t n_;
  std::vector<Arc> arcs_;
};

// {(sigma(v), sigma(g(v))) : v in component}; exactly one loop, at sigma(root).
std::vector<Arc> induced_edges(const AugFuncTree& tree, const Mapping& sigma);

bool is_complete(const AugTreeFamily& family, const Labeling& labeling,
                 LoopMode mode = LoopMode::Functional);

// Union of induced edges; throws NotComplete when any edge repeats.
EdgeOrientation orientation(const AugTreeFamily& family, const Labeling& labeling);

enum class PhiMode { Essential, Full };

struct PhiBounds {
  std::size_t essential_max_n = 6;
  std::size_t full_max_n = 4;
};

struct PhiResult {
  // Essential mode: one member per class of labelings that agree on every
  // component (off-component values filled ascending). Full mode: all of Phi.
  // Sorted either way.
  std::vector<Labeling> members;
  std::uint64_t essential_count = 0;
  // |Phi| = essential_count * prod_k (n-k-1)!
  mpz_class full_count;
};

// collect=false only counts, which lets essential mode run at n = 6.
PhiResult phi_enumerate(const AugTreeFamily& family, PhiMode mode,
                        LoopMode loops = LoopMode::Functional,
                        const PhiBounds& bounds = {}, bool collect = true);

// Pairs of leaves sharing a parent; each pair's transposition is an
// automorphism of the tree.
std::vector<std::pair<Vertex, Vertex>> sibling_leaf_pairs(const AugFuncTree& tree);

// Whether labeling with sigma_k replaced by sigma_k ∘ tau stays complete.
// Throws NotAutomorphism unless tau commutes with slot_tree(k), and
// NotComplete if labeling itself is not complete.
bool closure_check(const AugTreeFamily& family, const Labeling& labeling,
                   const Mapping& tau, std::size_t k);

}  // namespace treepack
