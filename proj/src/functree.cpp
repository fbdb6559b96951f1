#include "treepack/functree.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <random>
#include <string>
#include <utility>

namespace treepack {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::vector<std::vector<Vertex>> children_lists(const Mapping& g) {
  std::vector<std::vector<Vertex>> children(g.size());
  for (Vertex v = 0; v < g.size(); ++v) {
    if (g(v) != v) children[g(v)].push_back(v);
  }
  return children;
}

}  // namespace

// ---------------------------------------------------------------------------
// Mapping

Mapping::Mapping(std::vector<Vertex> values) : values_(std::move(values)) {
  const auto n = values_.size();
  for (std::size_t v = 0; v < n; ++v) {
    if (values_[v] >= n) {
      throw Error(ErrorKind::OutOfRange,
                  "value " + std::to_string(values_[v]) + " at index " +
                      std::to_string(v) + " outside Z_" + std::to_string(n));
    }
  }
}

Mapping Mapping::identity(std::size_t n) {
  std::vector<Vertex> values(n);
  std::iota(values.begin(), values.end(), Vertex{0});
  return Mapping(std::move(values));
}

Mapping Mapping::transposition(std::size_t n, Vertex a, Vertex b) {
  std::vector<Vertex> values(n);
  std::iota(values.begin(), values.end(), Vertex{0});
  if (a >= n || b >= n) {
    throw Error(ErrorKind::OutOfRange, "transposition point outside Z_n");
  }
  std::swap(values[a], values[b]);
  return Mapping(std::move(values));
}

bool Mapping::is_identity() const noexcept {
  for (std::size_t v = 0; v < values_.size(); ++v) {
    if (values_[v] != v) return false;
  }
  return true;
}

bool Mapping::is_permutation() const noexcept {
  std::vector<bool> seen(values_.size(), false);
  for (Vertex value : values_) {
    if (seen[value]) return false;
    seen[value] = true;
  }
  return true;
}

Mapping Mapping::inverse() const {
  if (!is_permutation()) {
    throw Error(ErrorKind::NotAPermutation, "mapping has no inverse");
  }
  std::vector<Vertex> inv(values_.size());
  for (Vertex v = 0; v < values_.size(); ++v) inv[values_[v]] = v;
  return Mapping(std::move(inv));
}

Mapping compose(const Mapping& outer, const Mapping& inner) {
  if (outer.size() != inner.size()) {
    throw Error(ErrorKind::DimensionMismatch, "composing maps of different size");
  }
  std::vector<Vertex> values(inner.size());
  for (Vertex v = 0; v < inner.size(); ++v) values[v] = outer(inner(v));
  return Mapping(std::move(values));
}

Mapping conjugate(const Mapping& g, const Mapping& perm) {
  if (g.size() != perm.size()) {
    throw Error(ErrorKind::DimensionMismatch, "conjugating by a map of different size");
  }
  if (!perm.is_permutation()) {
    throw Error(ErrorKind::NotAPermutation, "conjugator is not a bijection");
  }
  std::vector<Vertex> values(g.size());
  for (Vertex v = 0; v < g.size(); ++v) values[perm(v)] = perm(g(v));
  return Mapping(std::move(values));
}

Mapping iterate(const Mapping& g, std::uint64_t j) {
  Mapping result = Mapping::identity(g.size());
  Mapping power = g;
  while (j > 0) {
    if (j & 1U) result = compose(power, result);
    j >>= 1U;
    if (j > 0) power = compose(power, power);
  }
  return result;
}

std::vector<Vertex> image(const Mapping& g) {
  std::vector<Vertex> out(g.values().begin(), g.values().end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool is_functional_tree(const Mapping& g) {
  if (g.size() == 0) return false;
  return image(iterate(g, g.size() - 1)).size() == 1;
}

// ---------------------------------------------------------------------------
// FuncTree / AugFuncTree

FuncTree::FuncTree(Mapping map) : map_(std::move(map)) {
  if (!is_functional_tree(map_)) {
    throw Error(ErrorKind::NotATree, "iterated image does not collapse to a point");
  }
  root_ = iterate(map_, map_.size() - 1)(0);
}

AugFuncTree::AugFuncTree(Mapping map, Vertex root)
    : map_(std::move(map)), root_(root) {
  const auto n = map_.size();
  if (root_ >= n) throw Error(ErrorKind::OutOfRange, "root outside Z_n");
  if (map_(root_) != root_) {
    throw Error(ErrorKind::NotATree, "root is not a fixed point");
  }
  const Mapping collapsed = iterate(map_, n - 1);
  for (Vertex v = 0; v < n; ++v) {
    if (collapsed(v) == root_) {
      component_.push_back(v);
    } else if (map_(v) != v) {
      throw Error(ErrorKind::NotATree,
                  "vertex " + std::to_string(v) +
                      " neither reaches the root nor is an isolated loop");
    }
  }
}

bool AugFuncTree::in_component(Vertex v) const {
  return std::binary_search(component_.begin(), component_.end(), v);
}

bool AugFuncTree::is_leaf(Vertex v) const {
  if (!in_component(v)) return false;
  for (Vertex u = 0; u < n(); ++u) {
    if (u != v && map_(u) == v) return false;
  }
  return true;
}

bool AugFuncTree::is_star() const {
  for (Vertex v : component_) {
    if (map_(v) != root_) return false;
  }
  return true;
}

std::size_t AugFuncTree::depth(Vertex v) const {
  std::size_t d = 0;
  while (v != root_) {
    v = map_(v);
    ++d;
  }
  return d;
}

std::size_t AugFuncTree::degree(Vertex v) const {
  std::size_t d = v == root_ ? 0 : 1;
  for (Vertex u = 0; u < n(); ++u) {
    if (u != v && map_(u) == v) ++d;
  }
  return d;
}

std::vector<Vertex> AugFuncTree::bfs_order() const {
  const auto children = children_lists(map_);
  std::vector<Vertex> order;
  order.reserve(component_.size());
  order.push_back(root_);
  for (std::size_t head = 0; head < order.size(); ++head) {
    for (Vertex c : children[order[head]]) order.push_back(c);
  }
  return order;
}

bool AugFuncTree::in_semigroup_form() const {
  if (root_ != 0) return false;
  for (std::size_t i = 0; i < component_.size(); ++i) {
    if (component_[i] != i) return false;
  }
  for (Vertex u = 1; u < component_.size(); ++u) {
    if (map_(u) >= u) return false;
  }
  return true;
}

AugFuncTree build_tree(std::span<const Vertex> parents, std::size_t n) {
  const auto m = parents.size();
  if (m < 1 || m > n) {
    throw Error(ErrorKind::BadSize, "component size " + std::to_string(m) +
                                        " not in 1.." + std::to_string(n));
  }
  for (std::size_t v = 0; v < m; ++v) {
    if (parents[v] >= m) {
      throw Error(ErrorKind::OutOfRange,
                  "parent " + std::to_string(parents[v]) + " of vertex " +
                      std::to_string(v) + " is not below " + std::to_string(m));
    }
  }
  if (parents[0] != 0) throw Error(ErrorKind::NotATree, "vertex 0 must be the root");
  const Mapping restricted(std::vector<Vertex>(parents.begin(), parents.end()));
  if (!is_functional_tree(restricted)) {
    throw Error(ErrorKind::NotATree, "iterated image does not collapse to a point");
  }
  std::vector<Vertex> values(n);
  std::copy(parents.begin(), parents.end(), values.begin());
  for (std::size_t u = m; u < n; ++u) values[u] = static_cast<Vertex>(u);
  return AugFuncTree(Mapping(std::move(values)), 0);
}

// ---------------------------------------------------------------------------
// Composition

SiblingLeaves sibling_leaf_set(const AugFuncTree& tree) {
  if (tree.size() < 2) {
    throw Error(ErrorKind::SingletonTree, "tree has no leaves to compose");
  }
  SiblingLeaves out;
  std::size_t best_depth = 0;
  for (Vertex v : tree.component()) {
    const auto d = tree.depth(v);
    if (d >= best_depth) {
      best_depth = d;
      out.deepest = v;
    }
  }
  out.top = tree.component().back();
  out.relabel = Mapping::transposition(tree.n(), out.deepest, out.top);

  const Vertex parent = tree.parent(out.deepest);
  for (Vertex v : tree.component()) {
    if (v != tree.root() && tree.parent(v) == parent) {
      if (!tree.is_leaf(v)) {
        throw Error(ErrorKind::NotATree,
                    "sibling " + std::to_string(v) + " of the deepest vertex is internal");
      }
      out.members.push_back(v);
    }
  }
  return out;
}

AugFuncTree local_compose(const AugFuncTree& tree) {
  const auto leaves = sibling_leaf_set(tree);
  std::vector<Vertex> values(tree.map().values().begin(), tree.map().values().end());
  for (Vertex v : leaves.members) values[v] = tree.parent(tree.parent(v));
  return AugFuncTree(Mapping(std::move(values)), tree.root());
}

AugFuncTree compose_square(const AugFuncTree& tree) {
  return AugFuncTree(compose(tree.map(), tree.map()), tree.root());
}

std::size_t composition_distance(const AugFuncTree& tree) {
  const auto n = tree.n();
  const std::size_t limit = n * (n - 1) / 2 * n + 1;
  std::size_t steps = 0;
  AugFuncTree current = tree;
  while (!current.is_star()) {
    current = local_compose(current);
    if (++steps > limit) {
      throw Error(ErrorKind::NotATree, "local composition failed to reach a star");
    }
  }
  return steps;
}

// ---------------------------------------------------------------------------
// Canonical form

CanonicalForm canonical_form(const AugFuncTree& tree) {
  const auto n = tree.n();
  const auto order = tree.bfs_order();
  std::vector<Vertex> gamma(n);
  std::vector<bool> placed(n, false);
  Vertex next = 0;
  for (Vertex v : order) {
    gamma[v] = next++;
    placed[v] = true;
  }
  for (Vertex v = 0; v < n; ++v) {
    if (!placed[v]) gamma[v] = next++;
  }
  Mapping witness(std::move(gamma));
  AugFuncTree h(conjugate(tree.map(), witness), 0);
  return CanonicalForm{std::move(h), std::move(witness)};
}

// ---------------------------------------------------------------------------
// Generators

std::string_view to_string(TreeKind kind) {
  switch (kind) {
    case TreeKind::Star: return "star";
    case TreeKind::Path: return "path";
    case TreeKind::Caterpillar: return "caterpillar";
    case TreeKind::RandomRecursive: return "random-recursive";
    case TreeKind::RandomUniform: return "random-uniform";
  }
  return "unknown";
}

TreeKind parse_tree_kind(std::string_view name) {
  for (auto kind : {TreeKind::Star, TreeKind::Path, TreeKind::Caterpillar,
                    TreeKind::RandomRecursive, TreeKind::RandomUniform}) {
    if (name == to_string(kind)) return kind;
  }
  throw Error(ErrorKind::ValidationError, "unknown tree kind '" + std::string(name) + "'");
}

namespace {

// Uniform labeled tree on Z_m from a uniform Prüfer sequence, as an adjacency
// list.
std::vector<std::vector<Vertex>> prufer_tree(std::size_t m, std::mt19937_64& rng) {
  std::vector<std::vector<Vertex>> adj(m);
  if (m == 2) {
    adj[0].push_back(1);
    adj[1].push_back(0);
    return adj;
  }
  if (m < 2) return adj;
  std::uniform_int_distribution<Vertex> pick(0, static_cast<Vertex>(m - 1));
  std::vector<Vertex> code(m - 2);
  for (auto& c : code) c = pick(rng);
  std::vector<std::size_t> degree(m, 1);
  for (Vertex c : code) ++degree[c];
  for (Vertex c : code) {
    Vertex leaf = 0;
    while (degree[leaf] != 1) ++leaf;
    adj[leaf].push_back(c);
    adj[c].push_back(leaf);
    --degree[leaf];
    --degree[c];
  }
  Vertex a = 0;
  while (degree[a] != 1) ++a;
  Vertex b = a + 1;
  while (degree[b] != 1) ++b;
  adj[a].push_back(b);
  adj[b].push_back(a);
  return adj;
}

}  // namespace

AugFuncTree generate(TreeKind kind, std::size_t m, std::size_t n, std::uint64_t seed) {
  if (m < 1 || m > n) {
    throw Error(ErrorKind::BadSize, "component size " + std::to_string(m) +
                                        " not in 1.." + std::to_string(n));
  }
  std::mt19937_64 rng(seed);
  std::vector<Vertex> parents(m, 0);
  switch (kind) {
    case TreeKind::Star:
      break;
    case TreeKind::Path:
      for (Vertex u = 1; u < m; ++u) parents[u] = u - 1;
      break;
    case TreeKind::Caterpillar: {
      const Vertex spine = static_cast<Vertex>((m + 1) / 2);
      for (Vertex u = 1; u < spine; ++u) parents[u] = u - 1;
      std::uniform_int_distribution<Vertex> pick(0, spine - 1);
      for (Vertex u = spine; u < m; ++u) parents[u] = pick(rng);
      break;
    }
    case TreeKind::RandomRecursive:
      for (Vertex u = 1; u < m; ++u) {
        parents[u] = std::uniform_int_distribution<Vertex>(0, u - 1)(rng);
      }
      break;
    case TreeKind::RandomUniform: {
      const auto adj = prufer_tree(m, rng);
      const Vertex root = std::uniform_int_distribution<Vertex>(
          0, static_cast<Vertex>(m - 1))(rng);
      std::vector<Vertex> labeled(m, root);
      std::vector<bool> seen(m, false);
      std::deque<Vertex> queue{root};
      seen[root] = true;
      while (!queue.empty()) {
        const Vertex v = queue.front();
        queue.pop_front();
        for (Vertex w : adj[v]) {
          if (!seen[w]) {
            seen[w] = true;
            labeled[w] = v;
            queue.push_back(w);
          }
        }
      }
      for (std::size_t u = m; u < n; ++u) labeled.push_back(static_cast<Vertex>(u));
      return canonical_form(AugFuncTree(Mapping(std::move(labeled)), root)).tree;
    }
  }
  return build_tree(parents, n);
}

// ---------------------------------------------------------------------------
// Families

AugTreeFamily::AugTreeFamily(std::vector<AugFuncTree> trees) : trees_(std::move(trees)) {
  const auto n = trees_.size();
  if (n == 0) throw Error(ErrorKind::InvalidFamily, "family is empty");
  for (std::size_t k = 0; k < n; ++k) {
    const auto& t = trees_[k];
    if (t.n() != n) {
      throw Error(ErrorKind::InvalidFamily, "tree " + std::to_string(k) +
                                                " lives on Z_" + std::to_string(t.n()));
    }
    if (t.size() != k + 1) {
      throw Error(ErrorKind::InvalidFamily,
                  "tree " + std::to_string(k) + " has component size " +
                      std::to_string(t.size()) + ", expected " + std::to_string(k + 1));
    }
    if (!t.in_semigroup_form()) {
      throw Error(ErrorKind::InvalidFamily,
                  "tree " + std::to_string(k) + " is not in semigroup form");
    }
  }
}

AugTreeFamily AugTreeFamily::from_parents(const std::vector<std::vector<Vertex>>& parents) {
  std::vector<AugFuncTree> trees;
  trees.reserve(parents.size());
  for (const auto& p : parents) trees.push_back(build_tree(p, parents.size()));
  return AugTreeFamily(std::move(trees));
}

AugTreeFamily AugTreeFamily::canonicalized(const std::vector<AugFuncTree>& trees) {
  std::vector<AugFuncTree> out;
  out.reserve(trees.size());
  for (const auto& t : trees) out.push_back(canonical_form(t).tree);
  return AugTreeFamily(std::move(out));
}

std::vector<Vertex> AugTreeFamily::parents(std::size_t k) const {
  const auto values = trees_[k].map().values();
  return std::vector<Vertex>(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(k + 1));
}

AugFuncTree AugTreeFamily::slot_tree(std::size_t k) const {
  const auto& t = trees_[k];
  if (k == 0) return t;
  const auto swap = Mapping::transposition(n(), 0, static_cast<Vertex>(k));
  return AugFuncTree(conjugate(t.map(), swap), static_cast<Vertex>(k));
}

AugTreeFamily AugTreeFamily::with_tree(std::size_t k, const AugFuncTree& tree) const {
  auto trees = trees_;
  trees.at(k) = tree;
  return AugTreeFamily(std::move(trees));
}

AugTreeFamily compose_square(const AugTreeFamily& family) {
  std::vector<AugFuncTree> trees;
  trees.reserve(family.n());
  for (const auto& t : family.trees()) trees.push_back(compose_square(t));
  return AugTreeFamily(std::move(trees));
}

AugTreeFamily star_family(std::size_t n) {
  std::vector<AugFuncTree> trees;
  trees.reserve(n);
  for (std::size_t k = 0; k < n; ++k) trees.push_back(generate(TreeKind::Star, k + 1, n, 0));
  return AugTreeFamily(std::move(trees));
}

AugTreeFamily generate_family(TreeKind kind, std::size_t n, std::uint64_t seed) {
  std::vector<AugFuncTree> trees;
  trees.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    trees.push_back(generate(kind, k + 1, n, splitmix64(seed + k)));
  }
  return AugTreeFamily(std::move(trees));
}

std::uint64_t family_count(std::size_t n) {
  if (n > 10) {
    throw Error(ErrorKind::BoundExceeded, "family count overflows past n = 10");
  }
  std::uint64_t total = 1;
  std::uint64_t factorial = 1;
  for (std::size_t m = 1; m <= n; ++m) {
    if (m > 1) factorial *= m - 1;
    total *= factorial;
  }
  return total;
}

FamilyEnumerator::FamilyEnumerator(std::size_t n) : n_(n), count_(family_count(n)) {
  if (n == 0) throw Error(ErrorKind::BadSize, "n must be positive");
}

AugTreeFamily FamilyEnumerator::unrank(std::uint64_t index) const {
  if (index >= count_) throw Error(ErrorKind::OutOfRange, "family index past the end");
  std::vector<std::vector<Vertex>> parents(n_);
  for (std::size_t k = 0; k < n_; ++k) parents[k].assign(k + 1, 0);
  for (std::size_t k = n_; k-- > 1;) {
    for (std::size_t u = k; u >= 1; --u) {
      parents[k][u] = static_cast<Vertex>(index % u);
      index /= u;
    }
  }
  return AugTreeFamily::from_parents(parents);
}

FamilyEnumerator::Cursor::Cursor(std::size_t n) : parents_(n) {
  for (std::size_t k = 0; k < n; ++k) parents_[k].assign(k + 1, 0);
}

bool FamilyEnumerator::Cursor::advance() {
  for (std::size_t k = parents_.size(); k-- > 1;) {
    for (std::size_t u = k; u >= 1; --u) {
      if (parents_[k][u] + 1 < u) {
        ++parents_[k][u];
        return true;
      }
      parents_[k][u] = 0;
    }
  }
  return false;
}

FamilyEnumerator::iterator::iterator(std::size_t n, bool at_end)
    : cursor_(at_end ? 0 : n), done_(at_end) {}

AugTreeFamily FamilyEnumerator::iterator::operator*() const {
  return AugTreeFamily::from_parents(cursor_.parents());
}

FamilyEnumerator::iterator& FamilyEnumerator::iterator::operator++() {
  if (!cursor_.advance()) done_ = true;
  ++index_;
  return *this;
}

}  // namespace treepack
