#include <gtest/gtest.h>

#include <random>

#include "treepack/sparse_poly.hpp"

using namespace treepack;

namespace {

SparsePoly X(Var v) { return SparsePoly::variable(v); }

std::string names(const SparsePoly& p) {
  return p.to_string([](Var v) { return "x" + std::to_string(v); });
}

}  // namespace

TEST(SparsePoly, ZeroCoefficientsVanish) {
  const auto p = X(0) + X(1) - X(0);
  EXPECT_EQ(p, X(1));
  EXPECT_TRUE((X(0) - X(0)).is_zero());
  EXPECT_EQ(SparsePoly(mpq_class(0)).size(), 0u);
}

TEST(SparsePoly, GrlexTextOrder) {
  const auto p = (X(0) + X(1) + 1).pow(2);
  EXPECT_EQ(names(p), "1 * x0^2\n2 * x0 * x1\n1 * x1^2\n2 * x0\n2 * x1\n1\n");
}

TEST(SparsePoly, RationalCoefficients) {
  const auto p = X(2).scaled(mpq_class(1, 3)) * X(2).scaled(mpq_class(3, 2));
  EXPECT_EQ(p.coefficient(Monomial::variable(2, 2)), mpq_class(1, 2));
  EXPECT_EQ(names(p), "1/2 * x2^2\n");
}

TEST(SparsePoly, DegreesAndVariables) {
  const auto p = X(3).pow(4) * X(1) + X(5);
  EXPECT_EQ(p.degree(), 5u);
  EXPECT_EQ(p.degree_in(3), 4u);
  EXPECT_EQ(p.degree_in(7), 0u);
  EXPECT_EQ(p.variables(), (std::vector<Var>{1, 3, 5}));
}

TEST(SparsePoly, EvaluateAndSpecialize) {
  const auto p = (X(0) - 2) * (X(1) + X(0));
  EXPECT_EQ(p.evaluate([](Var v) { return mpq_class(v == 0 ? 5 : 7); }), 36);
  const auto q = p.specialize({{0, mpq_class(5)}});
  EXPECT_EQ(q, (X(1) + 5).scaled(3));
}

TEST(SparsePoly, Permute) {
  const auto p = X(0) * X(0) + X(1);
  EXPECT_EQ(p.permute([](Var v) { return 1 - v; }), X(1) * X(1) + X(0));
  EXPECT_THROW(p.permute([](Var) { return Var{0}; }), std::invalid_argument);
}

TEST(SparsePoly, RingLawsOnRandomPolys) {
  std::mt19937_64 rng(11);
  auto random_poly = [&] {
    SparsePoly p;
    std::uniform_int_distribution<int> c(-3, 3), e(0, 2), var(0, 3);
    for (int t = 0; t < 5; ++t) {
      p += SparsePoly::term(c(rng), Monomial({{Var(var(rng)), std::uint32_t(e(rng))},
                                              {Var(var(rng)), std::uint32_t(e(rng))}}));
    }
    return p;
  };
  for (int i = 0; i < 50; ++i) {
    const auto a = random_poly(), b = random_poly(), c = random_poly();
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a.pow(3), a * a * a);
    const auto val = [](Var v) { return mpq_class(static_cast<long>(v) * 2 - 3, 2); };
    EXPECT_EQ((a * b).evaluate(val), a.evaluate(val) * b.evaluate(val));
  }
}

TEST(YPoly, Arithmetic) {
  const auto y = YPoly::y();
  const auto p = (y - YPoly(1)) * (y - YPoly(1));
  EXPECT_EQ(p.coefficients(), (std::vector<mpz_class>{1, -2, 1}));
  EXPECT_EQ(p.to_string(), "y^2 - 2*y + 1");
  EXPECT_EQ((p - p).degree(), -1);
  EXPECT_EQ(YPoly::linear(-2, 1).to_string(), "-2*y + 1");
  EXPECT_EQ(p.evaluate(3), 4);
  EXPECT_EQ(p.to_sparse(9), (X(9) - 1) * (X(9) - 1));
}
