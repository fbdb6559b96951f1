#include "treepack/solver.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cassert>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>

namespace treepack {

std::string_view to_string(TreeOrder order) {
  switch (order) {
    case TreeOrder::LargestFirst: return "largest-first";
    case TreeOrder::SmallestFirst: return "smallest-first";
    case TreeOrder::CompositionGuided: return "composition-guided";
  }
  return "unknown";
}

TreeOrder parse_tree_order(std::string_view name) {
  for (auto o : {TreeOrder::LargestFirst, TreeOrder::SmallestFirst,
                 TreeOrder::CompositionGuided}) {
    if (name == to_string(o)) return o;
  }
  throw Error(ErrorKind::ValidationError, "unknown tree order '" + std::string(name) + "'");
}

std::string_view to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Packed: return "Packed";
    case SolveStatus::Exhausted: return "Exhausted";
    case SolveStatus::TimedOut: return "TimedOut";
  }
  return "unknown";
}

Labeling star_identity_labeling(std::size_t n) {
  if (n == 0) throw Error(ErrorKind::BadSize, "n must be positive");
  return Labeling::identity(n);
}

std::vector<std::size_t> composition_guided_order(const AugTreeFamily& family) {
  struct Key {
    std::size_t slot;
    std::size_t distance;
  };
  std::vector<Key> keys;
  for (std::size_t k = 1; k < family.n(); ++k) {
    keys.push_back(Key{k, composition_distance(family.tree(k))});
  }
  std::stable_sort(keys.begin(), keys.end(), [](const Key& a, const Key& b) {
    if (a.distance != b.distance) return a.distance > b.distance;
    return a.slot > b.slot;
  });
  std::vector<std::size_t> order;
  order.reserve(keys.size());
  for (const auto& key : keys) order.push_back(key.slot);
  return order;
}

namespace {

class Bitset {
 public:
  explicit Bitset(std::size_t bits) : words_((bits + 63) / 64, 0) {}
  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
  void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

 private:
  std::vector<std::uint64_t> words_;
};

struct Step {
  std::size_t slot = 0;
  Vertex vertex = 0;
  // Step index of the parent vertex, or -1 for a root.
  std::ptrdiff_t parent = -1;
  // Previous leaf with the same parent (ascending-image constraint), or -1.
  std::ptrdiff_t prev_sibling = -1;
  std::size_t degree = 0;
  // Set on the last step of a slot: capacity bound for what remains.
  bool closes_slot = false;
  std::size_t remaining_maxdeg = 0;
};

enum class Outcome { Found, Exhausted, Budget, TimedOut };

class Search {
 public:
  Search(const AugTreeFamily& family, const SolveConfig& config)
      : family_(family), config_(config), n_(family.n()),
        pairs_(n_ * (n_ - 1) / 2), loops_(n_), used_degree_(n_, 0),
        slot_taken_(n_, Bitset(n_)), image_(n_, std::vector<Vertex>(n_, 0)),
        tiebreak_(n_) {
    std::iota(tiebreak_.begin(), tiebreak_.end(), Vertex{0});
    build_plan();
  }

  SolveResult run() {
    const auto start = std::chrono::steady_clock::now();
    deadline_ = config_.time_limit_ms
                    ? std::optional(start + std::chrono::milliseconds(*config_.time_limit_ms))
                    : std::nullopt;
    SolveResult result;
    result.symmetry_factor = symmetry_factor();

    std::uint64_t budget = kInitialBudget;
    std::mt19937_64 rng(config_.seed);
    Outcome outcome = Outcome::Budget;
    while (outcome == Outcome::Budget) {
      if (result.attempts > 0) {
        std::shuffle(tiebreak_.begin(), tiebreak_.end(), rng);
        budget *= 2;
      }
      ++result.attempts;
      reset_state();
      attempt_nodes_ = 0;
      attempt_budget_ = budget;
      outcome = descend(0);
    }
    result.nodes_expanded = nodes_;
    result.elapsed = std::chrono::steady_clock::now() - start;

    switch (outcome) {
      case Outcome::Found: {
        auto labeling = extract_labeling();
        const auto mode = config_.classical_mode ? LoopMode::Classical : LoopMode::Functional;
        if (!is_complete(family_, labeling, mode)) {
          throw std::logic_error("solver produced a labeling that fails verification");
        }
        result.status = SolveStatus::Packed;
        result.labeling = std::move(labeling);
        break;
      }
      case Outcome::Exhausted: result.status = SolveStatus::Exhausted; break;
      case Outcome::TimedOut: result.status = SolveStatus::TimedOut; break;
      case Outcome::Budget: break;
    }
    return result;
  }

 private:
  static constexpr std::uint64_t kInitialBudget = 1U << 15;

  std::size_t pair_index(Vertex a, Vertex b) const {
    if (a > b) std::swap(a, b);
    return static_cast<std::size_t>(a) * (2 * n_ - a - 1) / 2 + (b - a - 1);
  }

  bool fixed_largest() const { return config_.symmetry_pruning && n_ > 1; }

  std::vector<std::size_t> slot_order() const {
    std::vector<std::size_t> order;
    switch (config_.order) {
      case TreeOrder::LargestFirst:
        for (std::size_t k = n_; k-- > 0;) order.push_back(k);
        break;
      case TreeOrder::SmallestFirst:
        for (std::size_t k = 0; k < n_; ++k) order.push_back(k);
        break;
      case TreeOrder::CompositionGuided:
        order = composition_guided_order(family_);
        order.push_back(0);
        break;
    }
    if (fixed_largest()) {
      order.erase(std::remove(order.begin(), order.end(), n_ - 1), order.end());
      order.insert(order.begin(), n_ - 1);
    }
    return order;
  }

  void build_plan() {
    const auto order = slot_order();
    std::vector<std::size_t> maxdeg(n_, 0);
    for (std::size_t k : order) {
      const auto tree = family_.slot_tree(k);
      const auto bfs = tree.bfs_order();
      std::vector<std::ptrdiff_t> step_of(n_, -1);
      for (std::size_t i = 0; i < bfs.size(); ++i) {
        Step step;
        step.slot = k;
        step.vertex = bfs[i];
        step.degree = tree.degree(bfs[i]);
        maxdeg[k] = std::max(maxdeg[k], step.degree);
        if (i > 0) {
          step.parent = step_of[tree.parent(bfs[i])];
          if (config_.symmetry_pruning && tree.is_leaf(bfs[i])) {
            // Children of one parent are consecutive in breadth-first order.
            const auto prev = static_cast<std::ptrdiff_t>(steps_.size()) - 1;
            if (prev >= 0 && steps_[prev].slot == k && steps_[prev].parent == step.parent &&
                tree.is_leaf(steps_[prev].vertex)) {
              step.prev_sibling = prev;
            }
          }
        }
        step_of[bfs[i]] = static_cast<std::ptrdiff_t>(steps_.size());
        steps_.push_back(step);
      }
      steps_.back().closes_slot = true;
    }
    // Capacity of the slots after each closing step.
    std::size_t suffix = 0;
    for (std::size_t i = steps_.size(); i-- > 0;) {
      if (steps_[i].closes_slot) steps_[i].remaining_maxdeg = suffix;
      if (i == 0 || steps_[i - 1].closes_slot) suffix += maxdeg[steps_[i].slot];
    }
    fixed_steps_ = fixed_largest() ? n_ : 0;
    candidates_.assign(steps_.size(), {});
    for (auto& c : candidates_) c.reserve(n_);
  }

  mpz_class symmetry_factor() const {
    mpz_class factor = 1;
    if (!config_.symmetry_pruning) return factor;
    if (fixed_largest()) mpz_fac_ui(factor.get_mpz_t(), n_);
    std::size_t run = 1;
    for (std::size_t i = 0; i < steps_.size(); ++i) {
      if (i < fixed_steps_) continue;
      run = steps_[i].prev_sibling >= 0 ? run + 1 : 1;
      const bool run_ends = i + 1 == steps_.size() || steps_[i + 1].prev_sibling < 0;
      if (run_ends && run > 1) {
        mpz_class f;
        mpz_fac_ui(f.get_mpz_t(), run);
        factor *= f;
      }
    }
    return factor;
  }

  void reset_state() {
    pairs_ = Bitset(n_ * (n_ - 1) / 2);
    loops_ = Bitset(n_);
    std::fill(used_degree_.begin(), used_degree_.end(), 0);
    for (auto& t : slot_taken_) t = Bitset(n_);
    embedded_edges_ = 0;
  }

  std::size_t free_degree(Vertex w) const { return n_ - 1 - used_degree_[w]; }

  void place(const Step& step, Vertex w) {
    image_[step.slot][step.vertex] = w;
    slot_taken_[step.slot].set(w);
    if (step.parent < 0) {
      loops_.set(w);
    } else {
      const Vertex pw = image_[step.slot][steps_[step.parent].vertex];
      pairs_.set(pair_index(pw, w));
      ++used_degree_[pw];
      ++used_degree_[w];
      ++embedded_edges_;
    }
  }

  void unplace(const Step& step, Vertex w) {
    slot_taken_[step.slot].reset(w);
    if (step.parent < 0) {
      loops_.reset(w);
    } else {
      const Vertex pw = image_[step.slot][steps_[step.parent].vertex];
      pairs_.reset(pair_index(pw, w));
      --used_degree_[pw];
      --used_degree_[w];
      --embedded_edges_;
    }
  }

  void gather(std::size_t index, std::vector<Vertex>& out) const {
    const Step& step = steps_[index];
    out.clear();
    if (index < fixed_steps_) {
      // Largest tree: breadth-first position i goes to vertex i.
      out.push_back(static_cast<Vertex>(index));
      return;
    }
    const auto& taken = slot_taken_[step.slot];
    const Vertex pw = step.parent < 0 ? 0 : image_[step.slot][steps_[step.parent].vertex];
    const Vertex floor_image =
        step.prev_sibling < 0 ? 0 : image_[step.slot][steps_[step.prev_sibling].vertex] + 1;
    for (Vertex w = floor_image; w < n_; ++w) {
      if (taken.test(w)) continue;
      if (free_degree(w) < step.degree) continue;
      if (step.parent < 0) {
        if (!config_.classical_mode && loops_.test(w)) continue;
      } else if (pairs_.test(pair_index(pw, w))) {
        continue;
      }
      out.push_back(w);
    }
    // Most remaining capacity first; ties by the attempt's tie-break ranking.
    std::sort(out.begin(), out.end(), [this](Vertex a, Vertex b) {
      const auto fa = free_degree(a);
      const auto fb = free_degree(b);
      if (fa != fb) return fa > fb;
      return tiebreak_[a] < tiebreak_[b];
    });
  }

  bool capacity_ok(const Step& step) const {
    for (Vertex x = 0; x < n_; ++x) {
      if (free_degree(x) > step.remaining_maxdeg) return false;
    }
    return true;
  }

  void check_invariants() const {
    if (pairs_.count() != embedded_edges_) {
      throw std::logic_error("used-edge bitset disagrees with embedded edge count");
    }
    std::size_t degree_sum = 0;
    for (auto d : used_degree_) degree_sum += d;
    if (degree_sum != 2 * embedded_edges_) {
      throw std::logic_error("degree bookkeeping disagrees with embedded edge count");
    }
  }

  Outcome descend(std::size_t index) {
    if (index == steps_.size()) return Outcome::Found;
    auto& cands = candidates_[index];
    gather(index, cands);
    const Step& step = steps_[index];
    for (Vertex w : cands) {
      ++nodes_;
      if (++attempt_nodes_ > attempt_budget_) return Outcome::Budget;
      if (deadline_ && (nodes_ & 1023U) == 0 && std::chrono::steady_clock::now() > *deadline_) {
        return Outcome::TimedOut;
      }
      place(step, w);
#ifndef NDEBUG
      check_invariants();
#else
      if (config_.check_invariants) check_invariants();
#endif
      if (!step.closes_slot || capacity_ok(step)) {
        const auto outcome = descend(index + 1);
        if (outcome != Outcome::Exhausted) return outcome;
      }
      unplace(step, w);
    }
    return Outcome::Exhausted;
  }

  Labeling extract_labeling() const {
    std::vector<Mapping> sigmas;
    sigmas.reserve(n_);
    for (std::size_t k = 0; k < n_; ++k) {
      std::vector<Vertex> sigma(n_, 0);
      std::vector<bool> used(n_, false);
      for (Vertex v = 0; v <= k; ++v) {
        sigma[v] = image_[k][v];
        used[image_[k][v]] = true;
      }
      Vertex next = 0;
      for (std::size_t v = k + 1; v < n_; ++v) {
        while (used[next]) ++next;
        sigma[v] = next;
        used[next] = true;
      }
      sigmas.emplace_back(std::move(sigma));
    }
    return Labeling(std::move(sigmas));
  }

  const AugTreeFamily& family_;
  SolveConfig config_;
  std::size_t n_;
  std::vector<Step> steps_;
  std::size_t fixed_steps_ = 0;

  Bitset pairs_;
  Bitset loops_;
  std::vector<std::size_t> used_degree_;
  std::vector<Bitset> slot_taken_;
  std::vector<std::vector<Vertex>> image_;
  std::size_t embedded_edges_ = 0;

  std::vector<Vertex> tiebreak_;
  std::vector<std::vector<Vertex>> candidates_;
  std::uint64_t nodes_ = 0;
  std::uint64_t attempt_nodes_ = 0;
  std::uint64_t attempt_budget_ = 0;
  std::optional<std::chrono::steady_clock::time_point> deadline_;
};

}  // namespace

SolveResult pack(const AugTreeFamily& family, const SolveConfig& config) {
  if (config.time_limit_ms && *config.time_limit_ms <= 0) {
    throw Error(ErrorKind::ValidationError, "time limit must be positive");
  }
  Search search(family, config);
  return search.run();
}

SweepReport sweep(std::size_t n, const SolveConfig& config, const SweepOptions& options) {
  if (n > options.max_n) {
    throw Error(ErrorKind::BoundExceeded,
                "sweep at n = " + std::to_string(n) + " exceeds bound " +
                    std::to_string(options.max_n));
  }
  const FamilyEnumerator families(n);
  const auto start = std::chrono::steady_clock::now();

  SweepReport report;
  report.n = n;
  report.entries.resize(families.count());

  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    for (;;) {
      const auto index = next.fetch_add(1);
      if (index >= families.count()) return;
      const auto result = pack(families.unrank(index), config);
      report.entries[index] = SweepEntry{
          index, result.status, result.nodes_expanded,
          std::chrono::duration<double, std::milli>(result.elapsed).count()};
    }
  };
  const auto workers = std::max<std::size_t>(1, options.workers);
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t i = 0; i < workers; ++i) pool.emplace_back(worker);
  }

  for (const auto& e : report.entries) {
    switch (e.status) {
      case SolveStatus::Packed: ++report.packed; break;
      case SolveStatus::Exhausted: ++report.exhausted; break;
      case SolveStatus::TimedOut: ++report.timed_out; break;
    }
    if (e.status != SolveStatus::Packed) report.falsification_candidates.push_back(e.index);
    report.max_nodes = std::max(report.max_nodes, e.nodes);
  }
  report.wall_millis =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
          .count();
  return report;
}

}  // namespace treepack
