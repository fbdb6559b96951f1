#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace treepack {

using Var = std::uint32_t;

// Sorted by variable id, exponents strictly positive.
class Monomial {
 public:
  Monomial() = default;
  // Accepts any order and repeated variables; zero exponents are dropped.
  explicit Monomial(std::vector<std::pair<Var, std::uint32_t>> powers);
  static Monomial variable(Var v, std::uint32_t e = 1);

  std::span<const std::pair<Var, std::uint32_t>> powers() const noexcept { return powers_; }
  std::uint32_t degree() const noexcept;
  std::uint32_t degree_in(Var v) const noexcept;
  bool is_constant() const noexcept { return powers_.empty(); }

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial&, const Monomial&) = default;

 private:
  std::vector<std::pair<Var, std::uint32_t>> powers_;
};

// Graded lexicographic with x_0 > x_1 > ...; greater monomials sort first.
struct GrlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const noexcept;
};

class SparsePoly {
 public:
  using Terms = std::map<Monomial, mpq_class, GrlexGreater>;

  SparsePoly() = default;
  SparsePoly(const mpq_class& c);  // NOLINT: constants convert implicitly
  SparsePoly(long c) : SparsePoly(mpq_class(c)) {}
  static SparsePoly variable(Var v);
  static SparsePoly term(const mpq_class& c, Monomial m);

  // Never holds a zero coefficient.
  const Terms& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  // Coefficient of m (zero when absent).
  mpq_class coefficient(const Monomial& m) const;

  std::uint32_t degree() const noexcept;
  std::uint32_t degree_in(Var v) const noexcept;
  // Sorted, duplicate-free.
  std::vector<Var> variables() const;

  SparsePoly& operator+=(const SparsePoly& o);
  SparsePoly& operator-=(const SparsePoly& o);
  SparsePoly& operator*=(const SparsePoly& o) { return *this = *this * o; }
  // Adds c * m * o in one pass; the workhorse of products.
  void add_scaled(const SparsePoly& o, const mpq_class& c, const Monomial& m);

  friend SparsePoly operator+(SparsePoly a, const SparsePoly& b) { return a += b; }
  friend SparsePoly operator-(SparsePoly a, const SparsePoly& b) { return a -= b; }
  friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b);
  SparsePoly operator-() const { return scaled(-1); }

  SparsePoly scaled(const mpq_class& c) const;
  SparsePoly pow(std::uint32_t e) const;

  // Every variable must have a value.
  mpq_class evaluate(const std::function<mpq_class(Var)>& value) const;
  // Substitutes the listed variables, leaving the rest symbolic.
  SparsePoly specialize(const std::unordered_map<Var, mpq_class>& values) const;
  // Renames each variable v to rename(v); rename must be injective.
  SparsePoly permute(const std::function<Var(Var)>& rename) const;

  // One term per line, greatest monomial first: `coeff * a^e * b`.
  std::string to_string(const std::function<std::string(Var)>& name) const;

  friend bool operator==(const SparsePoly&, const SparsePoly&) = default;

 private:
  Terms terms_;
};

// Dense polynomial in y with integer coefficients; index = power.
class YPoly {
 public:
  YPoly() = default;
  explicit YPoly(std::vector<mpz_class> coeffs);
  YPoly(long c);  // NOLINT
  static YPoly y();
  // a*y + b
  static YPoly linear(const mpz_class& a, const mpz_class& b);

  const std::vector<mpz_class>& coefficients() const noexcept { return coeffs_; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  // -1 for the zero polynomial.
  long degree() const noexcept { return static_cast<long>(coeffs_.size()) - 1; }
  mpz_class evaluate(const mpz_class& y) const;

  YPoly& operator+=(const YPoly& o);
  YPoly& operator-=(const YPoly& o);
  friend YPoly operator+(YPoly a, const YPoly& b) { return a += b; }
  friend YPoly operator-(YPoly a, const YPoly& b) { return a -= b; }
  friend YPoly operator*(const YPoly& a, const YPoly& b);
  YPoly& operator*=(const YPoly& o) { return *this = *this * o; }

  SparsePoly to_sparse(Var y) const;
  // e.g. "2*y^2 - 3*y + 1"
  std::string to_string() const;

  friend bool operator==(const YPoly&, const YPoly&) = default;

 private:
  void trim();
  std::vector<mpz_class> coeffs_;
};

}  // namespace treepack
