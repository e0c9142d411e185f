#include <gtest/gtest.h>

#include <random>

#include "generators.hpp"
#include "lglab/parse.hpp"
#include "lglab/twisted_derham.hpp"

using namespace lglab;

namespace {

const std::vector<std::string> X{"x"};
const std::vector<std::string> T{"t"};
const std::vector<std::string> XY{"x", "y"};
const std::vector<std::string> XYZ{"x", "y", "z"};

ExactPoly P(const std::string& s, const std::vector<std::string>& v = XY) { return parse_poly(s, v); }

using Dims = std::vector<std::size_t>;

}  // namespace

TEST(Weights, Classification) {
  const auto h = filtration_weights(P("x^2 + y^2"));
  EXPECT_EQ(h.kind, "total-degree");
  EXPECT_EQ(h.fdeg, Rational(2));

  const auto e6 = filtration_weights(P("x^3 + y^4"));
  EXPECT_EQ(e6.kind, "quasi-homogeneous");
  EXPECT_EQ(e6.w, (std::vector<Rational>{make_rational(4, 3), Rational(1)}));
  EXPECT_EQ(e6.fdeg, Rational(4));

  const auto e7 = filtration_weights(P("x^3 + x*y^3"));
  EXPECT_EQ(e7.w, (std::vector<Rational>{make_rational(3, 2), Rational(1)}));
  EXPECT_EQ(e7.fdeg, make_rational(9, 2));

  const auto tri = filtration_weights(P("x^3 + y^3 - 3*x*y"));
  EXPECT_EQ(tri.kind, "fallback-total-degree");
  EXPECT_EQ(tri.fdeg, Rational(3));
  EXPECT_EQ(weighted_leading_form(P("x^3 + y^3 - 3*x*y"), tri), P("x^3 + y^3"));
}

TEST(Truncation, ZeroFunctionAtOrderOne) {
  const TruncatedComplex tc = build_truncated(ExactPoly(1), 1, 3, 1);
  EXPECT_EQ(tc.basis_size(0), 4u);
  EXPECT_EQ(tc.basis_size(1), 3u);
  EXPECT_TRUE(tc.fiber_matrix(0, Rational(0)).is_zero());
  EXPECT_EQ(fiber_cohomology_dims(tc, Rational(0)), (Dims{4, 3}));
  EXPECT_EQ(fiber_cohomology_dims(tc, Rational(1)), (Dims{1, 0}));
}

TEST(Truncation, RejectsBadParameters) {
  EXPECT_THROW(build_truncated(P("x^3"), 0, 3, 1), std::invalid_argument);
  EXPECT_THROW(build_truncated(P("x^3"), 2, 2, 1), std::invalid_argument);
  EXPECT_THROW(build_truncated(P("x^3"), 2, 3, 0), std::invalid_argument);
}

TEST(Truncation, DifferentialSquaresToZero) {
  std::mt19937_64 g(5);
  for (int t = 0; t < 12; ++t) {
    ExactPoly f = gen::random_poly(g, 2, 4, 4);
    if (f.degree() < 1) continue;
    const TruncatedComplex tc = build_truncated(f, 3, f.degree() + 1, t % 2 ? 1 : -1);
    EXPECT_TRUE(tc.differential_squares_to_zero());
    const Rational u = gen::random_rational(g);
    for (int k = 0; k + 1 < 2; ++k) EXPECT_TRUE((tc.fiber_matrix(k + 1, u) * tc.fiber_matrix(k, u)).is_zero());
  }
}

TEST(Truncation, SparseRankMatchesBareissOnFibers) {
  for (const char* s : {"x^3 - y^2", "x^3 + y^3 - 3*x*y", "x*y"}) {
    const TruncatedComplex tc = build_truncated(P(s), 1, 5, 1);
    for (const Rational& u : {Rational(0), Rational(1), make_rational(-7, 3)})
      for (int k = 0; k < 2; ++k) {
        const SparseMatrix m = tc.fiber_matrix(k, u);
        EXPECT_EQ(rank(m), rank_bareiss(m.to_dense())) << s << " k=" << k;
      }
  }
}

TEST(Cohomology, QuadraticInOneVariable) {
  const TruncatedComplex tc = build_truncated(P("x^2", X), 1, 4, 1);
  EXPECT_EQ(fiber_cohomology_dims(tc, Rational(0)), (Dims{0, 1}));
  EXPECT_EQ(fiber_cohomology_dims(tc, Rational(1)), (Dims{0, 1}));
}

TEST(Cohomology, ImageMembership) {
  const ExactPoly f = P("x^2", X);
  const TruncatedComplex tc = build_truncated(f, 2, 4, 1);
  UDiffForm exact(1, 1, 2);
  exact.coeff(0) = DiffForm::top(P("2*x", X));
  EXPECT_TRUE(in_twisted_image(tc, exact));
  UDiffForm dx(1, 1, 2);
  dx.coeff(0) = DiffForm::top(P("1", X));
  EXPECT_FALSE(in_twisted_image(tc, dx));
  // x^2 dx = D(x/2) - u/2 dx
  UDiffForm x2(1, 1, 2);
  x2.coeff(0) = DiffForm::top(P("x^2", X));
  EXPECT_FALSE(in_twisted_image(tc, x2));
  x2.coeff(1) = DiffForm::top(P("1/2", X));
  EXPECT_TRUE(in_twisted_image(tc, x2));
}

TEST(Cohomology, SignVariantsHaveEqualDims) {
  for (const char* s : {"x^3 - y^2", "x^3 + y^3 - 3*x*y", "x^2*y + y^3"}) {
    const ExactPoly f = P(s);
    const ExactPoly g = f * Rational(-1);
    for (const Rational& u : {Rational(0), Rational(2)}) {
      const auto plus = fiber_cohomology_dims(build_truncated(f, 1, 6, 1), u);
      EXPECT_EQ(plus, fiber_cohomology_dims(build_truncated(f, 1, 6, -1), u)) << s;
      EXPECT_EQ(plus, fiber_cohomology_dims(build_truncated(g, 1, 6, 1), u)) << s;
    }
  }
}

TEST(Cohomology, FiberDimsEqualGlobalMilnorNumber) {
  const std::vector<std::pair<const char*, std::size_t>> cases{
      {"x^3 - y^2", 2}, {"x^3 + y^4", 6}, {"x^3 + y^3 - 3*x*y", 4}, {"x*y", 1}, {"x^2*y + y^3", 4}};
  const auto samples = default_samples(0);
  for (const auto& [s, mu] : cases) {
    const ExactPoly f = P(s);
    const auto rep = fiber_dim_report(f, default_degree_ladder(f), samples);
    EXPECT_TRUE(rep.all_stabilized()) << s;
    EXPECT_TRUE(rep.constant_across_samples()) << s;
    EXPECT_EQ(rep.last_rung()[0], (Dims{0, 0, mu})) << s;
  }
}

TEST(Cohomology, ModulesAreFreeForIsolatedTameExamples) {
  for (const char* s : {"x^3 - y^2", "x^3 + y^3 - 3*x*y"}) {
    const ExactPoly f = P(s);
    const TruncatedComplex tc = build_truncated(f, 1, f.degree() + 2, 1);
    const auto mods = cohomology_modules(tc);
    ASSERT_EQ(mods.size(), 3u);
    for (const auto& m : mods) EXPECT_TRUE(m.is_free()) << s;
    EXPECT_EQ(mods[0].free_rank, 0u);
    EXPECT_EQ(mods[1].free_rank, 0u);
    const auto samples = default_samples(3);
    std::vector<Dims> dims;
    for (const auto& u : samples) dims.push_back(fiber_cohomology_dims(tc, u));
    EXPECT_TRUE(basicu_check(samples, dims, mods).consistent) << s;
  }
}

TEST(Cohomology, ZeroFunctionHasTorsion) {
  const TruncatedComplex tc = build_truncated(ExactPoly(1), 1, 4, 1);
  const auto mods = cohomology_modules(tc);
  EXPECT_FALSE(mods[1].is_free());
  for (const auto& d : mods[1].torsion) EXPECT_EQ(d.valuation(), 1);
}

TEST(Cohomology, TruncatedDimsScaleWithOrder) {
  const ExactPoly f = P("x^3 - y^2");
  for (int N : {1, 2, 3}) EXPECT_EQ(truncated_cohomology_dims(build_truncated(f, N, 4, 1)), (Dims{0, 0, 2u * N}));
}

TEST(Growth, ZeroFunctionGrows) {
  const auto r = torsion_growth_verdict(ExactPoly(1), {1, 2, 3}, {2, 4, 6}, default_samples(0));
  EXPECT_EQ(r.verdict, GrowthVerdict::torsion_growth);
  EXPECT_EQ(to_string(r.verdict), "torsion-growth");
}

TEST(Growth, PowerIsStable) {
  for (int d = 1; d <= 4; ++d) {
    const ExactPoly f = ExactPoly::variable(1, 0).pow(static_cast<unsigned>(d + 1));
    const auto r = torsion_growth_verdict(f, {1, 2, 3}, default_degree_ladder(f), default_samples(0));
    EXPECT_EQ(r.verdict, GrowthVerdict::stable_free_like) << d;
    EXPECT_EQ(r.fibers.last_rung()[0], (Dims{0, static_cast<std::size_t>(d)}));
  }
}

TEST(Growth, LinearFunctionIsAcyclic) {
  const ExactPoly f = P("x", X);
  const auto r = torsion_growth_verdict(f, {1, 2, 3}, {1, 3, 5}, default_samples(0));
  EXPECT_EQ(r.verdict, GrowthVerdict::stable_free_like);
  for (const auto& row : r.fibers.last_rung()) EXPECT_EQ(row, (Dims{0, 0}));
}

TEST(Growth, RejectsShortLadders) {
  EXPECT_THROW(torsion_growth_verdict(P("x^2", X), {1, 2}, {2, 4, 6}, default_samples(0)), std::invalid_argument);
  EXPECT_THROW(torsion_growth_verdict(P("x^2", X), {1, 2, 3}, {2, 4, 6}, {Rational(1), Rational(2)}),
               std::invalid_argument);
}

TEST(Koszul, Examples) {
  const auto cusp = koszul_dims(P("x^3 - y^2"));
  EXPECT_EQ(cusp.dims, (Dims{0, 0, 2}));
  EXPECT_TRUE(cusp.regular_sequence);
  EXPECT_TRUE(cusp.truncation_agrees);

  const auto morse = koszul_dims(P("x^2 + y^2 + z^2", XYZ));
  EXPECT_EQ(morse.dims, (Dims{0, 0, 0, 1}));
  EXPECT_TRUE(morse.truncation_agrees);

  EXPECT_THROW(koszul_dims(P("x*y*z", XYZ)), NonIsolatedCritical);
}

TEST(Samples, SeededAndDistinct) {
  const auto a = default_samples(11), b = default_samples(11);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.size(), 6u);
  EXPECT_EQ(a[0], Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j) EXPECT_NE(a[i], a[j]);
}
