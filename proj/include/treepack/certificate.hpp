#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "treepack/functree.hpp"
#include "treepack/packing.hpp"
#include "treepack/sparse_poly.hpp"

namespace treepack {

// The variables of an n-family: x_{k,v} has id k*n + v and y has id n*n.
struct CertVars {
  std::size_t n = 0;
  Var x(std::size_t k, std::size_t v) const { return static_cast<Var>(k * n + v); }
  Var y() const { return static_cast<Var>(n * n); }
  std::vector<Var> all_x() const;
  std::string name(Var v) const;
};

// Canonical text form with x[k][v] / y names.
std::string to_text(const SparsePoly& p, std::size_t n);

// One value table per slot: f[k](v) is the value assigned to x_{k,v}.
class LatticePoint {
 public:
  explicit LatticePoint(std::vector<Mapping> f);
  explicit LatticePoint(const Labeling& labeling);

  std::size_t n() const noexcept { return f_.size(); }
  const Mapping& slot(std::size_t k) const { return f_[k]; }
  Vertex operator()(std::size_t k, std::size_t v) const { return f_[k](static_cast<Vertex>(v)); }

  // Lattice points in mixed-radix order, last coordinate fastest.
  static LatticePoint unrank(std::size_t n, std::uint64_t index);

 private:
  std::vector<Mapping> f_;
};

// prod_k prod_{u<v} (f_k(v) - f_k(u))
mpz_class vertex_poly_eval(const LatticePoint& point);
// Product over slot pairs i<j of e_{j,v} - e_{i,u}, with the edge label
// e_{k,v} = (y - x_{k,g_k(v)})(y - x_{k,v}) on root-at-k slot trees.
YPoly edge_poly_eval(const AugTreeFamily& family, const LatticePoint& point);
YPoly certificate_eval(const AugTreeFamily& family, const LatticePoint& point);

// Symbolic certificate, before any reduction. Cost is the product of
// (n(n+1)/2 choose 2)-ish linear factors; only sensible for n <= 2.
SparsePoly certificate_poly(const AugTreeFamily& family);

// Kronecker basis on Z_n: the univariate factor prod_{j != a} (x - j)/(a - j).
SparsePoly lagrange_factor(Var x, Vertex a, std::size_t n);
mpq_class lagrange_factor_eval(Vertex a, const mpq_class& x, std::size_t n);

// L_f on variables vars[i] <-> f(i), evaluated at values[i].
mpq_class lagrange_eval(const Mapping& f, std::span<const mpq_class> values);
mpq_class lagrange_eval(const LatticePoint& f, const LatticePoint& at);

inline constexpr std::size_t kLagrangeMaxVariables = 9;

// Variables x_0..x_{n-1}; BoundExceeded past kLagrangeMaxVariables.
SparsePoly lagrange_expand(const Mapping& f);
// Variables x_{k,v} (ids from CertVars).
SparsePoly lagrange_expand(const LatticePoint& f);

enum class RepMode { PhiSum, Lattice };

struct RepBounds {
  // |Phi| <= (n!)^n summands, each a product of n*n univariate factors.
  std::size_t phi_sum_max_n = 3;
  // n^(n*n) lattice points.
  std::size_t lattice_max_n = 2;
};

SparsePoly canonical_rep(const AugTreeFamily& family, RepMode mode, const RepBounds& bounds = {});

// Replaces each x^e (e >= n) with its remainder modulo the falling factorial
// x(x-1)...(x-n+1) for every x in vars; other variables are untouched.
SparsePoly poly_reduce(const SparsePoly& p, std::span<const Var> vars, std::size_t n);

// (canonical_rep != 0) == (Phi nonempty).
bool nonvanishing_equivalence_check(const AugTreeFamily& family);

// Every monomial of expanded L_sigma uses >= n-1 variables and a missing one
// is always x_{sigma^{-1}(0)}.
bool monomial_support_check(const Mapping& sigma);

// poly_reduce(p^m, S) stays within S. p must only use S.
bool variable_dependency_check(const SparsePoly& p, std::span<const Var> subset, std::uint32_t m,
                               std::size_t n);

// A map on variable ids; entries not listed are fixed.
using VarPermutation = std::vector<Var>;

VarPermutation slot_permutation_action(std::size_t n, std::span<const Mapping> per_slot);
VarPermutation slot_swap_action(std::size_t n, std::size_t i, std::size_t j);

// p(x_{pi(0)}, ...) == p(x_0, ...) term for term.
bool poly_aut_check(const SparsePoly& p, const VarPermutation& pi);
// Same comparison against -p.
bool poly_anti_aut_check(const SparsePoly& p, const VarPermutation& pi);

struct CompositionViolation {
  std::uint64_t family_index = 0;
  // Slot whose local composition was applied; -1 for the full square.
  int slot = -1;
};

struct CompositionReport {
  std::size_t n = 0;
  std::uint64_t families = 0;
  std::uint64_t square_checks = 0;
  std::uint64_t local_checks = 0;
  std::uint64_t antecedent_held = 0;
  std::vector<CompositionViolation> violations;
};

inline constexpr std::size_t kCompositionMaxN = 6;

// Over every family: Phi(g^(2)) nonempty => Phi(g) nonempty, and the same for
// each single local composition of any slot. Uses Phi directly for n <= 3 and
// the solver above.
CompositionReport composition_implication_check(std::size_t n);

}  // namespace treepack
