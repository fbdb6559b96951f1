#include "treepack/certificate.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "treepack/solver.hpp"

namespace treepack {

std::vector<Var> CertVars::all_x() const {
  std::vector<Var> vars(n * n);
  for (std::size_t i = 0; i < vars.size(); ++i) vars[i] = static_cast<Var>(i);
  return vars;
}

std::string CertVars::name(Var v) const {
  if (v == y()) return "y";
  if (n == 0 || v > y()) return "v" + std::to_string(v);
  return "x[" + std::to_string(v / n) + "][" + std::to_string(v % n) + "]";
}

std::string to_text(const SparsePoly& p, std::size_t n) {
  const CertVars vars{n};
  return p.to_string([&](Var v) { return vars.name(v); });
}

LatticePoint::LatticePoint(std::vector<Mapping> f) : f_(std::move(f)) {
  for (const auto& m : f_) {
    if (m.size() != f_.size()) {
      throw Error(ErrorKind::DimensionMismatch, "lattice point slot has wrong length");
    }
  }
}

LatticePoint::LatticePoint(const Labeling& labeling)
    : f_(labeling.sigmas().begin(), labeling.sigmas().end()) {}

LatticePoint LatticePoint::unrank(std::size_t n, std::uint64_t index) {
  std::vector<std::vector<Vertex>> values(n, std::vector<Vertex>(n, 0));
  for (std::size_t i = n * n; i-- > 0;) {
    values[i / n][i % n] = static_cast<Vertex>(index % n);
    index /= n;
  }
  std::vector<Mapping> f;
  for (auto& v : values) f.emplace_back(std::move(v));
  return LatticePoint(std::move(f));
}

mpz_class vertex_poly_eval(const LatticePoint& point) {
  mpz_class prod = 1;
  const auto n = point.n();
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t v = 1; v < n; ++v) {
      for (std::size_t u = 0; u < v; ++u) {
        const long d = static_cast<long>(point(k, v)) - static_cast<long>(point(k, u));
        if (d == 0) return 0;
        prod *= d;
      }
    }
  }
  return prod;
}

namespace {

struct EdgeLabel {
  // (y - a)(y - b)
  long a;
  long b;
};

std::vector<std::vector<EdgeLabel>> edge_labels(const AugTreeFamily& family,
                                                const LatticePoint& point) {
  const auto n = family.n();
  if (point.n() != n) throw Error(ErrorKind::DimensionMismatch, "lattice point size");
  std::vector<std::vector<EdgeLabel>> labels(n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto tree = family.slot_tree(k);
    for (Vertex v = 0; v <= k; ++v) {
      labels[k].push_back(EdgeLabel{point(k, tree.parent(v)), point(k, v)});
    }
  }
  return labels;
}

}  // namespace

YPoly edge_poly_eval(const AugTreeFamily& family, const LatticePoint& point) {
  const auto labels = edge_labels(family, point);
  YPoly prod(1);
  for (std::size_t j = 1; j < labels.size(); ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      for (const auto& ej : labels[j]) {
        for (const auto& ei : labels[i]) {
          // (y-a)(y-b) - (y-c)(y-d) = (c+d-a-b) y + (ab - cd)
          const auto factor = YPoly::linear(ei.a + ei.b - ej.a - ej.b, ej.a * ej.b - ei.a * ei.b);
          if (factor.is_zero()) return {};
          prod *= factor;
        }
      }
    }
  }
  return prod;
}

YPoly certificate_eval(const AugTreeFamily& family, const LatticePoint& point) {
  const mpz_class v = vertex_poly_eval(point);
  if (v == 0) return {};
  return edge_poly_eval(family, point) * YPoly(std::vector<mpz_class>{v});
}

SparsePoly certificate_poly(const AugTreeFamily& family) {
  const auto n = family.n();
  const CertVars vars{n};
  const SparsePoly y = SparsePoly::variable(vars.y());
  SparsePoly prod(1);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t v = 1; v < n; ++v) {
      for (std::size_t u = 0; u < v; ++u) {
        prod *= SparsePoly::variable(vars.x(k, v)) - SparsePoly::variable(vars.x(k, u));
      }
    }
  }
  auto label = [&](std::size_t k, const AugFuncTree& tree, Vertex v) {
    return (y - SparsePoly::variable(vars.x(k, tree.parent(v)))) *
           (y - SparsePoly::variable(vars.x(k, v)));
  };
  for (std::size_t j = 1; j < n; ++j) {
    const auto tj = family.slot_tree(j);
    for (std::size_t i = 0; i < j; ++i) {
      const auto ti = family.slot_tree(i);
      for (Vertex v = 0; v <= j; ++v) {
        for (Vertex u = 0; u <= i; ++u) prod *= label(j, tj, v) - label(i, ti, u);
      }
    }
  }
  return prod;
}

SparsePoly lagrange_factor(Var x, Vertex a, std::size_t n) {
  SparsePoly p(1);
  mpz_class denom = 1;
  const SparsePoly xv = SparsePoly::variable(x);
  for (std::size_t j = 0; j < n; ++j) {
    if (j == a) continue;
    p *= xv - SparsePoly(static_cast<long>(j));
    denom *= static_cast<long>(a) - static_cast<long>(j);
  }
  return p.scaled(mpq_class(1) / mpq_class(denom));
}

mpq_class lagrange_factor_eval(Vertex a, const mpq_class& x, std::size_t n) {
  mpq_class r = 1;
  for (std::size_t j = 0; j < n; ++j) {
    if (j == a) continue;
    r *= (x - static_cast<long>(j)) / mpq_class(static_cast<long>(a) - static_cast<long>(j));
  }
  return r;
}

mpq_class lagrange_eval(const Mapping& f, std::span<const mpq_class> values) {
  if (values.size() != f.size()) throw Error(ErrorKind::DimensionMismatch, "lagrange_eval");
  mpq_class r = 1;
  for (std::size_t i = 0; i < f.size() && r != 0; ++i) {
    r *= lagrange_factor_eval(f(static_cast<Vertex>(i)), values[i], f.size());
  }
  return r;
}

mpq_class lagrange_eval(const LatticePoint& f, const LatticePoint& at) {
  if (f.n() != at.n()) throw Error(ErrorKind::DimensionMismatch, "lagrange_eval");
  mpq_class r = 1;
  const auto n = f.n();
  for (std::size_t k = 0; k < n && r != 0; ++k) {
    for (std::size_t v = 0; v < n && r != 0; ++v) {
      r *= lagrange_factor_eval(f(k, v), mpq_class(at(k, v)), n);
    }
  }
  return r;
}

SparsePoly lagrange_expand(const Mapping& f) {
  if (f.size() > kLagrangeMaxVariables) {
    throw Error(ErrorKind::BoundExceeded, "Lagrange expansion over " + std::to_string(f.size()) +
                                              " variables");
  }
  SparsePoly p(1);
  for (std::size_t i = 0; i < f.size(); ++i) {
    p *= lagrange_factor(static_cast<Var>(i), f(static_cast<Vertex>(i)), f.size());
  }
  return p;
}

namespace {

// Per-slot basis on x_{k,0..n-1}; results cached since slots repeat across Phi.
class SlotBasisCache {
 public:
  explicit SlotBasisCache(std::size_t n) : vars_{n} {}

  const SparsePoly& get(std::size_t k, const Mapping& f) {
    auto key = std::make_pair(k, std::vector<Vertex>(f.values().begin(), f.values().end()));
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    SparsePoly p(1);
    for (std::size_t v = 0; v < vars_.n; ++v) {
      p *= lagrange_factor(vars_.x(k, v), f(static_cast<Vertex>(v)), vars_.n);
    }
    return cache_.emplace(std::move(key), std::move(p)).first->second;
  }

  SparsePoly basis(const LatticePoint& f) {
    SparsePoly p(1);
    for (std::size_t k = 0; k < f.n(); ++k) p *= get(k, f.slot(k));
    return p;
  }

 private:
  CertVars vars_;
  std::map<std::pair<std::size_t, std::vector<Vertex>>, SparsePoly> cache_;
};

}  // namespace

SparsePoly lagrange_expand(const LatticePoint& f) {
  const auto n = f.n();
  if (n * n > kLagrangeMaxVariables) {
    throw Error(ErrorKind::BoundExceeded,
                "Lagrange expansion over " + std::to_string(n * n) + " variables");
  }
  SlotBasisCache cache(n);
  return cache.basis(f);
}

SparsePoly canonical_rep(const AugTreeFamily& family, RepMode mode, const RepBounds& bounds) {
  const auto n = family.n();
  const CertVars vars{n};
  SlotBasisCache cache(n);
  SparsePoly sum;
  auto accumulate = [&](const LatticePoint& point) {
    const auto value = certificate_eval(family, point);
    if (value.is_zero()) return;
    sum += value.to_sparse(vars.y()) * cache.basis(point);
  };

  if (mode == RepMode::PhiSum) {
    if (n > bounds.phi_sum_max_n) {
      throw Error(ErrorKind::BoundExceeded,
                  "phi-sum representative at n = " + std::to_string(n));
    }
    PhiBounds pb;
    pb.full_max_n = std::max(pb.full_max_n, n);
    for (const auto& sigma : phi_enumerate(family, PhiMode::Full, LoopMode::Functional, pb).members) {
      accumulate(LatticePoint(sigma));
    }
    return sum;
  }

  if (n > bounds.lattice_max_n) {
    throw Error(ErrorKind::BoundExceeded, "lattice representative at n = " + std::to_string(n));
  }
  std::uint64_t points = 1;
  for (std::size_t i = 0; i < n * n; ++i) points *= n;
  for (std::uint64_t idx = 0; idx < points; ++idx) accumulate(LatticePoint::unrank(n, idx));
  return sum;
}

SparsePoly poly_reduce(const SparsePoly& p, std::span<const Var> vars, std::size_t n) {
  if (n == 0) throw Error(ErrorKind::BadSize, "n must be positive");
  std::vector<Var> set(vars.begin(), vars.end());
  std::sort(set.begin(), set.end());
  auto reduced = [&](Var v) { return std::binary_search(set.begin(), set.end(), v); };

  // Falling factorial coefficients, ff[i] for x^i, ff[n] == 1.
  std::vector<mpz_class> ff{1};
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<mpz_class> next(ff.size() + 1, 0);
    for (std::size_t i = 0; i < ff.size(); ++i) {
      next[i + 1] += ff[i];
      next[i] -= ff[i] * static_cast<long>(j);
    }
    ff = std::move(next);
  }
  // rem[e] = x^e mod ff, as n coefficients.
  std::vector<std::vector<mpz_class>> rem;
  auto remainder = [&](std::uint32_t e) -> const std::vector<mpz_class>& {
    while (rem.size() <= e) {
      std::vector<mpz_class> r(n + 1, 0);
      if (rem.empty()) {
        r[0] = 1;
      } else {
        const auto& prev = rem.back();
        for (std::size_t i = 0; i < n; ++i) r[i + 1] = prev[i];
      }
      const mpz_class lead = r[n];
      if (lead != 0) {
        for (std::size_t i = 0; i <= n; ++i) r[i] -= lead * ff[i];
      }
      r.resize(n);
      rem.push_back(std::move(r));
    }
    return rem[e];
  };

  SparsePoly out;
  for (const auto& [m, c] : p.terms()) {
    std::vector<std::pair<Var, std::uint32_t>> kept;
    std::vector<std::pair<Var, std::uint32_t>> high;
    for (const auto& [v, e] : m.powers()) {
      if (reduced(v) && e >= n) {
        high.emplace_back(v, e);
      } else {
        kept.emplace_back(v, e);
      }
    }
    if (high.empty()) {
      out.add_scaled(SparsePoly(1), c, m);
      continue;
    }
    SparsePoly t = SparsePoly::term(c, Monomial(std::move(kept)));
    for (const auto& [v, e] : high) {
      const auto& r = remainder(e);
      SparsePoly u;
      for (std::size_t i = 0; i < n; ++i) {
        u += SparsePoly::term(r[i], Monomial::variable(v, static_cast<std::uint32_t>(i)));
      }
      t *= u;
    }
    out += t;
  }
  return out;
}

bool nonvanishing_equivalence_check(const AugTreeFamily& family) {
  const bool poly_nonzero = !canonical_rep(family, RepMode::PhiSum).is_zero();
  const bool phi_nonempty =
      phi_enumerate(family, PhiMode::Essential, LoopMode::Functional, {}, false).essential_count > 0;
  return poly_nonzero == phi_nonempty;
}

bool monomial_support_check(const Mapping& sigma) {
  if (!sigma.is_permutation()) throw Error(ErrorKind::NotAPermutation, "sigma");
  const auto n = sigma.size();
  const Var allowed_missing = sigma.inverse()(0);
  const auto p = lagrange_expand(sigma);
  for (const auto& [m, c] : p.terms()) {
    const auto used = m.powers().size();
    if (used + 1 < n) return false;
    if (used + 1 == n && m.degree_in(allowed_missing) != 0) return false;
  }
  return true;
}

bool variable_dependency_check(const SparsePoly& p, std::span<const Var> subset, std::uint32_t m,
                               std::size_t n) {
  std::vector<Var> set(subset.begin(), subset.end());
  std::sort(set.begin(), set.end());
  auto inside = [&](Var v) { return std::binary_search(set.begin(), set.end(), v); };
  for (Var v : p.variables()) {
    if (!inside(v)) throw Error(ErrorKind::ValidationError, "polynomial uses a variable outside S");
  }
  const auto r = poly_reduce(p.pow(m), set, n);
  const auto used = r.variables();
  return std::all_of(used.begin(), used.end(), inside);
}

VarPermutation slot_permutation_action(std::size_t n, std::span<const Mapping> per_slot) {
  if (per_slot.size() != n) throw Error(ErrorKind::DimensionMismatch, "one permutation per slot");
  const CertVars vars{n};
  VarPermutation pi(n * n + 1);
  pi[vars.y()] = vars.y();
  for (std::size_t k = 0; k < n; ++k) {
    if (per_slot[k].size() != n || !per_slot[k].is_permutation()) {
      throw Error(ErrorKind::NotAPermutation, "slot " + std::to_string(k));
    }
    for (std::size_t v = 0; v < n; ++v) pi[vars.x(k, v)] = vars.x(k, per_slot[k](static_cast<Vertex>(v)));
  }
  return pi;
}

VarPermutation slot_swap_action(std::size_t n, std::size_t i, std::size_t j) {
  if (i >= n || j >= n) throw Error(ErrorKind::OutOfRange, "slot index");
  const CertVars vars{n};
  VarPermutation pi(n * n + 1);
  for (std::size_t v = 0; v < pi.size(); ++v) pi[v] = static_cast<Var>(v);
  for (std::size_t v = 0; v < n; ++v) {
    pi[vars.x(i, v)] = vars.x(j, v);
    pi[vars.x(j, v)] = vars.x(i, v);
  }
  return pi;
}

namespace {

SparsePoly apply(const SparsePoly& p, const VarPermutation& pi) {
  std::vector<Var> sorted = pi;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] != i) throw Error(ErrorKind::NotAPermutation, "variable action");
  }
  return p.permute([&](Var v) { return v < pi.size() ? pi[v] : v; });
}

}  // namespace

bool poly_aut_check(const SparsePoly& p, const VarPermutation& pi) { return apply(p, pi) == p; }

bool poly_anti_aut_check(const SparsePoly& p, const VarPermutation& pi) {
  return apply(p, pi) == -p;
}

CompositionReport composition_implication_check(std::size_t n) {
  if (n == 0) throw Error(ErrorKind::BadSize, "n must be positive");
  if (n > kCompositionMaxN) {
    throw Error(ErrorKind::BoundExceeded, "composition check at n = " + std::to_string(n));
  }
  auto feasible = [n](const AugTreeFamily& f) {
    if (n <= 3) {
      return phi_enumerate(f, PhiMode::Essential, LoopMode::Functional, {}, false).essential_count >
             0;
    }
    return pack(f).status == SolveStatus::Packed;
  };

  CompositionReport report;
  report.n = n;
  const FamilyEnumerator families(n);
  report.families = families.count();
  for (std::uint64_t idx = 0; idx < families.count(); ++idx) {
    const auto g = families.unrank(idx);
    const bool consequent = feasible(g);
    auto check = [&](const AugTreeFamily& antecedent, int slot) {
      if (!feasible(antecedent)) return;
      ++report.antecedent_held;
      if (!consequent) report.violations.push_back({idx, slot});
    };
    ++report.square_checks;
    check(compose_square(g), -1);
    for (std::size_t k = 1; k < n; ++k) {
      ++report.local_checks;
      check(g.with_tree(k, local_compose(g.tree(k))), static_cast<int>(k));
    }
  }
  return report;
}

}  // namespace treepack
