#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "generators.hpp"
#include "lglab/cu_linalg.hpp"
#include "lglab/linalg.hpp"

using namespace lglab;

namespace {

UPoly U(std::initializer_list<long> c) {
  std::vector<Rational> v;
  for (long x : c) v.emplace_back(x);
  return UPoly(std::move(v));
}

const UPoly u = U({0, 1});

bool is_diagonal(const UPolyMatrix& s) {
  for (std::size_t i = 0; i < s.rows(); ++i)
    for (std::size_t j = 0; j < s.cols(); ++j)
      if (i != j && !s(i, j).is_zero()) return false;
  return true;
}

void expect_smith(const UPolyMatrix& m) {
  const SmithForm sf = smith_normal_form(m);
  EXPECT_EQ(sf.U * m * sf.V, sf.S);
  EXPECT_TRUE(is_diagonal(sf.S));
  const UPoly du = determinant(sf.U), dv = determinant(sf.V);
  EXPECT_TRUE(du.is_unit()) << du.to_string();
  EXPECT_TRUE(dv.is_unit()) << dv.to_string();
  for (std::size_t i = 0; i + 1 < sf.invariant_factors.size(); ++i)
    EXPECT_TRUE(sf.invariant_factors[i].divides(sf.invariant_factors[i + 1]));
  for (const auto& d : sf.invariant_factors) EXPECT_EQ(d.coeffs().back(), Rational(1));
}

}  // namespace

TEST(UPoly, ArithmeticAndDivision) {
  const UPoly a = U({-1, 0, 1});  // u^2 - 1
  const UPoly b = U({-1, 1});
  auto [q, r] = a.divmod(b);
  EXPECT_EQ(q, U({1, 1}));
  EXPECT_TRUE(r.is_zero());
  EXPECT_EQ(gcd(a, U({1, 2, 1})), U({1, 1}));
  EXPECT_EQ(a.evaluate(Rational(3)), Rational(8));
  EXPECT_EQ(U({0, 0, 3}).valuation(), 2);
  EXPECT_EQ(U({0, 0, 0}).degree(), -1);
  EXPECT_EQ(U({1, -2, 0, 1}).to_string(), "u^3 - 2*u + 1");
}

TEST(UPoly, RationalRoots) {
  // (u - 1)(3u + 2)u
  const UPoly p = U({0, -2, -1, 3});
  const auto roots = rational_roots(p);
  ASSERT_EQ(roots.size(), 3u);
  EXPECT_EQ(roots[0], make_rational(-2, 3));
  EXPECT_EQ(roots[1], Rational(0));
  EXPECT_EQ(roots[2], Rational(1));
}

TEST(Smith, Identity) {
  const SmithForm sf = smith_normal_form(UPolyMatrix::identity(2));
  EXPECT_EQ(sf.S, UPolyMatrix::identity(2));
}

TEST(Smith, AlreadyDiagonal) {
  UPolyMatrix m(2, 2);
  m(0, 0) = u;
  m(1, 1) = u * u;
  const SmithForm sf = smith_normal_form(m);
  EXPECT_EQ(sf.S, m);
  expect_smith(m);
}

TEST(Smith, JordanBlock) {
  UPolyMatrix m(2, 2);
  m(0, 0) = u;
  m(0, 1) = Rational(1);
  m(1, 1) = u;
  const auto f = invariant_factors(m);
  ASSERT_EQ(f.size(), 2u);
  EXPECT_EQ(f[0], U({1}));
  EXPECT_EQ(f[1], u * u);
  expect_smith(m);
}

TEST(Smith, CoprimeDiagonalMerges) {
  UPolyMatrix m(2, 2);
  m(0, 0) = u;
  m(1, 1) = U({-1, 1});
  const auto f = invariant_factors(m);
  ASSERT_EQ(f.size(), 2u);
  EXPECT_EQ(f[0], U({1}));
  EXPECT_EQ(f[1], U({0, -1, 1}));
  expect_smith(m);
}

TEST(Smith, RandomMatricesSatisfyIdentity) {
  std::mt19937_64 g(2024);
  for (int t = 0; t < 120; ++t) expect_smith(gen::random_upoly_matrix(g, 6, 3));
}

TEST(Smith, PermutationInvariance) {
  std::mt19937_64 g(99);
  for (int t = 0; t < 30; ++t) {
    const UPolyMatrix m = gen::random_upoly_matrix(g, 5, 2);
    std::vector<std::size_t> rp(m.rows()), cp(m.cols());
    std::iota(rp.begin(), rp.end(), 0);
    std::iota(cp.begin(), cp.end(), 0);
    std::shuffle(rp.begin(), rp.end(), g);
    std::shuffle(cp.begin(), cp.end(), g);
    UPolyMatrix p(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) p(i, j) = m(rp[i], cp[j]);
    EXPECT_EQ(invariant_factors(p), invariant_factors(m));
  }
}

TEST(Smith, DeterminantMatchesProductOfFactors) {
  std::mt19937_64 g(7);
  for (int t = 0; t < 30; ++t) {
    UPolyMatrix m(4, 4);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) m(i, j) = gen::random_upoly(g, 2);
    const UPoly d = determinant(m);
    const auto f = invariant_factors(m);
    if (d.is_zero()) {
      EXPECT_LT(f.size(), 4u);
      continue;
    }
    UPoly prod = Rational(1);
    for (const auto& x : f) prod = prod * x;
    EXPECT_EQ(prod, d.monic());
  }
}

TEST(ModuleReport, Examples) {
  const auto zero = module_report(UPolyMatrix(3, 2), 3);
  EXPECT_EQ(zero.free_rank, 3u);
  EXPECT_TRUE(zero.is_free());

  UPolyMatrix du(1, 1);
  du(0, 0) = u;
  const auto tu = module_report(du, 1);
  EXPECT_EQ(tu.free_rank, 0u);
  ASSERT_EQ(tu.torsion.size(), 1u);
  EXPECT_EQ(tu.torsion[0], u);
  EXPECT_EQ(tu.u_torsion_orders, std::vector<int>{1});
  EXPECT_TRUE(tu.torsion_away_from_zero.empty());

  UPolyMatrix d1(1, 1);
  d1(0, 0) = U({-1, 1});
  const auto t1 = module_report(d1, 1);
  EXPECT_EQ(t1.free_rank, 0u);
  ASSERT_EQ(t1.torsion.size(), 1u);
  EXPECT_EQ(t1.torsion[0], U({-1, 1}));
  EXPECT_EQ(t1.u_torsion_orders, std::vector<int>{0});
}

TEST(Basicu, ConstantAndFree) {
  ModuleReport h0, h1;
  h1.free_rank = 1;
  const std::vector<Rational> s{0, 1, -1};
  const auto v = basicu_check(s, {{0, 1}, {0, 1}, {0, 1}}, {h0, h1});
  EXPECT_TRUE(v.consistent);
  EXPECT_TRUE(v.free);
}

TEST(Basicu, SamplingMissIsFlagged) {
  UPolyMatrix d(1, 1);
  d(0, 0) = U({-1, 1});
  ModuleReport h0;  // H^0 = 0
  ModuleReport h1 = module_report(d, 1);
  const std::vector<Rational> s{0, 2, -1};
  const auto v = basicu_check(s, {{0, 0}, {0, 0}, {0, 0}}, {h0, h1});
  EXPECT_FALSE(v.consistent);
  EXPECT_TRUE(v.constant_fiber_dims);
  ASSERT_TRUE(v.witness_factor.has_value());
  EXPECT_EQ(*v.witness_factor, U({-1, 1}));
  ASSERT_TRUE(v.witness_u.has_value());
  EXPECT_EQ(*v.witness_u, Rational(1));
}

TEST(DenseRank, BareissAgreesWithSparseEliminator) {
  std::mt19937_64 g(12);
  std::uniform_int_distribution<int> sz(1, 9);
  std::bernoulli_distribution zero(0.6);
  for (int t = 0; t < 200; ++t) {
    const std::size_t r = sz(g), c = sz(g);
    std::vector<std::vector<Rational>> d(r, std::vector<Rational>(c));
    for (auto& row : d)
      for (auto& x : row)
        if (!zero(g)) x = gen::random_rational(g);
    // a dependent column forces rank deficiency
    if (c > 1)
      for (auto& row : d) row[c - 1] = row[0] * 2;
    SparseMatrix s(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) s.add(i, j, d[i][j]);
    EXPECT_EQ(rank(s), rank_bareiss(s.to_dense()));
  }
}

TEST(DenseLinearAlgebra, InverseDeterminantCharpoly) {
  QMatrix a(2, 2);
  a(0, 0) = 2;
  a(0, 1) = 1;
  a(1, 0) = 1;
  a(1, 1) = 3;
  EXPECT_EQ(determinant(a), Rational(5));
  auto inv = inverse(a);
  ASSERT_TRUE(inv.has_value());
  EXPECT_EQ(a * *inv, QMatrix::identity(2));
  const auto cp = characteristic_polynomial(a);  // t^2 - 5t + 5
  ASSERT_EQ(cp.size(), 3u);
  EXPECT_EQ(cp[0], Rational(5));
  EXPECT_EQ(cp[1], Rational(-5));
  EXPECT_EQ(cp[2], Rational(1));
}
