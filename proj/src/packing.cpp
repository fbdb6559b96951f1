#include "treepack/packing.hpp"

#include <algorithm>
#include <functional>
#include <string>

namespace treepack {

// ---------------------------------------------------------------------------
// Labeling

Labeling::Labeling(std::vector<Mapping> sigmas) : sigmas_(std::move(sigmas)) {
  const auto n = sigmas_.size();
  for (std::size_t k = 0; k < n; ++k) {
    if (sigmas_[k].size() != n) {
      throw Error(ErrorKind::DimensionMismatch,
                  "sigma " + std::to_string(k) + " has length " +
                      std::to_string(sigmas_[k].size()) + ", expected " + std::to_string(n));
    }
    if (!sigmas_[k].is_permutation()) {
      throw Error(ErrorKind::NotAPermutation, "sigma " + std::to_string(k));
    }
  }
}

Labeling Labeling::identity(std::size_t n) {
  return Labeling(std::vector<Mapping>(n, Mapping::identity(n)));
}

Labeling Labeling::with_sigma(std::size_t k, Mapping sigma) const {
  auto sigmas = sigmas_;
  sigmas.at(k) = std::move(sigma);
  return Labeling(std::move(sigmas));
}

Labeling Labeling::relabeled(const Mapping& gamma) const {
  std::vector<Mapping> sigmas;
  sigmas.reserve(n());
  for (const auto& s : sigmas_) sigmas.push_back(compose(gamma, s));
  return Labeling(std::move(sigmas));
}

// ---------------------------------------------------------------------------
// EdgeOrientation

EdgeOrientation::EdgeOrientation(std::size_t n, std::vector<Arc> arcs)
    : n_(n), arcs_(std::move(arcs)) {
  for (const auto& a : arcs_) {
    if (a.tail >= n_ || a.head >= n_) {
      throw Error(ErrorKind::OutOfRange, "arc endpoint outside Z_n");
    }
  }
  std::sort(arcs_.begin(), arcs_.end());
  arcs_.erase(std::unique(arcs_.begin(), arcs_.end()), arcs_.end());
}

bool EdgeOrientation::is_complete() const {
  if (arcs_.size() != n_ * (n_ + 1) / 2) return false;
  const auto sym = symmetrized();
  return std::all_of(sym.begin(), sym.end(), [](std::uint8_t b) { return b == 1; }) &&
         std::none_of(arcs_.begin(), arcs_.end(), [this](const Arc& a) {
           return a.tail != a.head &&
                  std::binary_search(arcs_.begin(), arcs_.end(), Arc{a.head, a.tail});
         });
}

std::vector<std::uint8_t> EdgeOrientation::symmetrized() const {
  std::vector<std::uint8_t> m(n_ * n_, 0);
  for (const auto& a : arcs_) {
    m[a.tail * n_ + a.head] = 1;
    m[a.head * n_ + a.tail] = 1;
  }
  return m;
}

// ---------------------------------------------------------------------------
// Induced edges and completeness

std::vector<Arc> induced_edges(const AugFuncTree& tree, const Mapping& sigma) {
  if (sigma.size() != tree.n()) {
    throw Error(ErrorKind::DimensionMismatch, "sigma and tree live on different Z_n");
  }
  if (!sigma.is_permutation()) throw Error(ErrorKind::NotAPermutation, "sigma");
  std::vector<Arc> arcs;
  arcs.reserve(tree.size());
  for (Vertex v : tree.component()) arcs.push_back(Arc{sigma(v), sigma(tree.parent(v))});
  return arcs;
}

namespace {

void check_dimensions(const AugTreeFamily& family, const Labeling& labeling) {
  if (family.n() != labeling.n()) {
    throw Error(ErrorKind::DimensionMismatch,
                "family has n = " + std::to_string(family.n()) + ", labeling has n = " +
                    std::to_string(labeling.n()));
  }
}

// Number of distinct unordered edges in the union; loops skipped in
// classical mode.
std::size_t distinct_edges(const AugTreeFamily& family, const Labeling& labeling,
                           LoopMode mode) {
  const auto n = family.n();
  std::vector<std::uint8_t> seen(n * n, 0);
  std::size_t distinct = 0;
  for (std::size_t k = 0; k < n; ++k) {
    for (const auto& a : induced_edges(family.slot_tree(k), labeling.sigma(k))) {
      if (mode == LoopMode::Classical && a.tail == a.head) continue;
      const auto lo = std::min(a.tail, a.head);
      const auto hi = std::max(a.tail, a.head);
      auto& cell = seen[lo * n + hi];
      if (!cell) {
        cell = 1;
        ++distinct;
      }
    }
  }
  return distinct;
}

}  // namespace

bool is_complete(const AugTreeFamily& family, const Labeling& labeling, LoopMode mode) {
  check_dimensions(family, labeling);
  const auto n = family.n();
  const auto target = mode == LoopMode::Functional ? n * (n + 1) / 2 : n * (n - 1) / 2;
  return distinct_edges(family, labeling, mode) == target;
}

EdgeOrientation orientation(const AugTreeFamily& family, const Labeling& labeling) {
  if (!is_complete(family, labeling)) {
    throw Error(ErrorKind::NotComplete, "induced edges collide");
  }
  std::vector<Arc> arcs;
  for (std::size_t k = 0; k < family.n(); ++k) {
    const auto part = induced_edges(family.slot_tree(k), labeling.sigma(k));
    arcs.insert(arcs.end(), part.begin(), part.end());
  }
  return EdgeOrientation(family.n(), std::move(arcs));
}

// ---------------------------------------------------------------------------
// Phi enumeration

namespace {

struct SlotPlan {
  std::size_t k = 0;
  // Root first, then breadth-first; every later vertex closes one edge.
  std::vector<Vertex> order;
  AugFuncTree tree{Mapping::identity(1), 0};
};

class PhiSearch {
 public:
  PhiSearch(const AugTreeFamily& family, PhiMode mode, LoopMode loops, bool collect)
      : n_(family.n()), mode_(mode), loops_(loops), collect_(collect),
        used_pair_(n_ * n_, 0), used_loop_(n_, 0),
        image_(n_, std::vector<Vertex>(n_, 0)),
        taken_(n_, std::vector<std::uint8_t>(n_, 0)) {
    for (std::size_t k = n_; k-- > 0;) {
      SlotPlan plan;
      plan.k = k;
      plan.tree = family.slot_tree(k);
      plan.order = plan.tree.bfs_order();
      plans_.push_back(std::move(plan));
    }
  }

  void run() { descend(0, 0); }

  std::uint64_t essential_count() const { return essential_count_; }
  std::vector<Labeling> take_members() { return std::move(members_); }

 private:
  void descend(std::size_t s, std::size_t i) {
    if (s == plans_.size()) {
      record();
      return;
    }
    const auto& plan = plans_[s];
    if (i == plan.order.size()) {
      descend(s + 1, 0);
      return;
    }
    const auto k = plan.k;
    const Vertex v = plan.order[i];
    auto& taken = taken_[k];
    if (i == 0) {
      for (Vertex w = 0; w < n_; ++w) {
        if (taken[w]) continue;
        if (loops_ == LoopMode::Functional && used_loop_[w]) continue;
        taken[w] = 1;
        used_loop_[w] += 1;
        image_[k][v] = w;
        descend(s, i + 1);
        used_loop_[w] -= 1;
        taken[w] = 0;
      }
      return;
    }
    const Vertex pw = image_[k][plan.tree.parent(v)];
    for (Vertex w = 0; w < n_; ++w) {
      if (taken[w]) continue;
      auto& cell = used_pair_[std::min(w, pw) * n_ + std::max(w, pw)];
      if (cell) continue;
      taken[w] = 1;
      cell = 1;
      image_[k][v] = w;
      descend(s, i + 1);
      cell = 0;
      taken[w] = 0;
    }
  }

  void record() {
    ++essential_count_;
    if (!collect_) return;
    // Values not used on slot k's component, ascending.
    std::vector<std::vector<Vertex>> rest(n_);
    std::vector<std::vector<Vertex>> base(n_);
    for (std::size_t k = 0; k < n_; ++k) {
      base[k].assign(n_, 0);
      for (Vertex v = 0; v <= k; ++v) base[k][v] = image_[k][v];
      for (Vertex w = 0; w < n_; ++w) {
        if (!taken_[k][w]) rest[k].push_back(w);
      }
    }
    if (mode_ == PhiMode::Essential) {
      std::vector<Mapping> sigmas;
      for (std::size_t k = 0; k < n_; ++k) {
        std::copy(rest[k].begin(), rest[k].end(),
                  base[k].begin() + static_cast<std::ptrdiff_t>(k + 1));
        sigmas.emplace_back(base[k]);
      }
      members_.emplace_back(std::move(sigmas));
      return;
    }
    expand_completions(0, rest, base);
  }

  void expand_completions(std::size_t k, std::vector<std::vector<Vertex>>& rest,
                          std::vector<std::vector<Vertex>>& base) {
    if (k == n_) {
      std::vector<Mapping> sigmas;
      for (const auto& b : base) sigmas.emplace_back(b);
      members_.emplace_back(std::move(sigmas));
      return;
    }
    auto& r = rest[k];
    std::sort(r.begin(), r.end());
    do {
      std::copy(r.begin(), r.end(), base[k].begin() + static_cast<std::ptrdiff_t>(k + 1));
      expand_completions(k + 1, rest, base);
    } while (std::next_permutation(r.begin(), r.end()));
  }

  std::size_t n_;
  PhiMode mode_;
  LoopMode loops_;
  bool collect_;
  std::vector<SlotPlan> plans_;
  std::vector<std::uint8_t> used_pair_;
  std::vector<std::uint8_t> used_loop_;
  std::vector<std::vector<Vertex>> image_;
  std::vector<std::vector<std::uint8_t>> taken_;
  std::uint64_t essential_count_ = 0;
  std::vector<Labeling> members_;
};

}  // namespace

PhiResult phi_enumerate(const AugTreeFamily& family, PhiMode mode, LoopMode loops,
                        const PhiBounds& bounds, bool collect) {
  const auto n = family.n();
  const auto limit = mode == PhiMode::Full ? bounds.full_max_n : bounds.essential_max_n;
  if (n > limit) {
    throw Error(ErrorKind::BoundExceeded,
                "phi enumeration at n = " + std::to_string(n) + " exceeds bound " +
                    std::to_string(limit));
  }
  PhiSearch search(family, mode, loops, collect);
  search.run();

  PhiResult result;
  result.essential_count = search.essential_count();
  mpz_class factor = 1;
  for (std::size_t k = 0; k < n; ++k) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), n - k - 1);
    factor *= f;
  }
  result.full_count = factor * mpz_class(std::to_string(result.essential_count));
  result.members = search.take_members();
  std::sort(result.members.begin(), result.members.end());
  return result;
}

// ---------------------------------------------------------------------------
// Closure

std::vector<std::pair<Vertex, Vertex>> sibling_leaf_pairs(const AugFuncTree& tree) {
  std::vector<Vertex> leaves;
  for (Vertex v : tree.component()) {
    if (v != tree.root() && tree.is_leaf(v)) leaves.push_back(v);
  }
  std::vector<std::pair<Vertex, Vertex>> pairs;
  for (std::size_t i = 0; i < leaves.size(); ++i) {
    for (std::size_t j = i + 1; j < leaves.size(); ++j) {
      if (tree.parent(leaves[i]) == tree.parent(leaves[j])) {
        pairs.emplace_back(leaves[i], leaves[j]);
      }
    }
  }
  return pairs;
}

bool closure_check(const AugTreeFamily& family, const Labeling& labeling,
                   const Mapping& tau, std::size_t k) {
  check_dimensions(family, labeling);
  if (k >= family.n()) throw Error(ErrorKind::OutOfRange, "slot index");
  const auto slot = family.slot_tree(k);
  if (tau.size() != family.n() || !tau.is_permutation()) {
    throw Error(ErrorKind::NotAPermutation, "tau");
  }
  if (conjugate(slot.map(), tau) != slot.map()) {
    throw Error(ErrorKind::NotAutomorphism,
                "tau does not commute with slot " + std::to_string(k));
  }
  if (!is_complete(family, labeling)) {
    throw Error(ErrorKind::NotComplete, "labeling is not a member of Phi");
  }
  return is_complete(family, labeling.with_sigma(k, compose(labeling.sigma(k), tau)));
}

}  // namespace treepack
