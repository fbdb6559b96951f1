#pragma once

#include <gmpxx.h>

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "treepack/functree.hpp"
#include "treepack/packing.hpp"

namespace treepack {

inline constexpr std::uint64_t kDefaultSeed = 0x7265657061636bULL;

enum class TreeOrder { LargestFirst, SmallestFirst, CompositionGuided };

std::string_view to_string(TreeOrder order);
TreeOrder parse_tree_order(std::string_view name);

struct SolveConfig {
  TreeOrder order = TreeOrder::LargestFirst;
  // Must be positive when set.
  std::optional<std::int64_t> time_limit_ms;
  // Fixes the largest tree's embedding (root on vertex 0) and forces sibling
  // leaves into ascending images.
  bool symmetry_pruning = true;
  // Only perturbs tie-breaking on restarts; the first attempt is ascending.
  std::uint64_t seed = kDefaultSeed;
  bool classical_mode = false;
  // Re-derive the used-edge count from the bitsets at every node.
  bool check_invariants = false;
};

enum class SolveStatus { Packed, Exhausted, TimedOut };

std::string_view to_string(SolveStatus status);

struct SolveResult {
  SolveStatus status = SolveStatus::Exhausted;
  // Present iff Packed; already re-verified with is_complete.
  std::optional<Labeling> labeling;
  std::uint64_t nodes_expanded = 0;
  std::size_t attempts = 0;
  std::chrono::nanoseconds elapsed{0};
  // Size of the labeling orbit represented by each explored leaf: n! for the
  // fixed largest tree times the factorials of every sibling-leaf group.
  // 1 when pruning is off.
  mpz_class symmetry_factor = 1;
};

SolveResult pack(const AugTreeFamily& family, const SolveConfig& config = {});

// Identity sequence; complete for the star family at every n.
Labeling star_identity_labeling(std::size_t n);

// Slots with at least two vertices, those farthest (in local-composition
// steps) from a star first; ties go to the larger slot.
std::vector<std::size_t> composition_guided_order(const AugTreeFamily& family);

struct SweepEntry {
  std::uint64_t index = 0;
  SolveStatus status = SolveStatus::Exhausted;
  std::uint64_t nodes = 0;
  double millis = 0.0;
};

struct SweepOptions {
  std::size_t max_n = 8;
  std::size_t workers = 1;
};

struct SweepReport {
  std::size_t n = 0;
  std::vector<SweepEntry> entries;
  std::uint64_t packed = 0;
  std::uint64_t exhausted = 0;
  std::uint64_t timed_out = 0;
  std::uint64_t max_nodes = 0;
  double wall_millis = 0.0;
  // Indices of non-Packed families.
  std::vector<std::uint64_t> falsification_candidates;
};

SweepReport sweep(std::size_t n, const SolveConfig& config, const SweepOptions& options = {});

}  // namespace treepack
