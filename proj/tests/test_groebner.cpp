#include <gtest/gtest.h>

#include <random>

#include "generators.hpp"
#include "lglab/groebner.hpp"
#include "lglab/milnor.hpp"
#include "lglab/parse.hpp"

using namespace lglab;

namespace {

const std::vector<std::string> XY{"x", "y"};
const std::vector<std::string> XYZ{"x", "y", "z"};

ExactPoly P(const std::string& s, const std::vector<std::string>& v = XY) { return parse_poly(s, v); }

std::vector<ExactPoly> Ps(std::initializer_list<const char*> l, const std::vector<std::string>& v = XY) {
  std::vector<ExactPoly> out;
  for (const char* s : l) out.push_back(P(s, v));
  return out;
}

}  // namespace

TEST(Division, RecordReassembles) {
  std::mt19937_64 g(3);
  const auto gens = Ps({"x^2 + y", "x*y - 1"});
  const auto gb = buchberger(gens, MonomialOrder::degrevlex());
  for (int t = 0; t < 50; ++t) {
    const ExactPoly p = gen::random_poly(g, 2, 6, 6);
    const auto rec = division_record(p, gb);
    ExactPoly sum = rec.nf;
    for (std::size_t i = 0; i < rec.cofactors.size(); ++i) sum += rec.cofactors[i] * gb.generators()[i];
    EXPECT_EQ(sum, p);
  }
}

TEST(Buchberger, KnownReducedBasis) {
  // (x^2 - y, x^3 - x) under lex x > y: reduced basis {x^2 - y, x*y - x, y^2 - y}.
  const auto gb = buchberger(Ps({"x^2 - y", "x^3 - x"}), MonomialOrder::lex());
  EXPECT_TRUE(gb.reduced());
  EXPECT_TRUE(is_reduced(gb));
  std::vector<ExactPoly> expected = Ps({"x^2 - y", "x*y - x", "y^2 - y"});
  auto got = gb.generators();
  auto key = [](const ExactPoly& a, const ExactPoly& b) { return to_string(a, XY) < to_string(b, XY); };
  std::sort(got.begin(), got.end(), key);
  std::sort(expected.begin(), expected.end(), key);
  EXPECT_EQ(got, expected);
}

TEST(Buchberger, UnitIdeal) {
  const auto gb = buchberger(Ps({"x*y - 1", "x"}), MonomialOrder::degrevlex());
  EXPECT_TRUE(gb.is_unit());
}

TEST(Buchberger, RandomIdealsSatisfyCriterionAndMembership) {
  std::mt19937_64 g(17);
  for (int t = 0; t < 25; ++t) {
    std::vector<ExactPoly> gens{gen::random_poly(g, 2, 3, 3), gen::random_poly(g, 2, 3, 3)};
    for (const auto& order : {MonomialOrder::degrevlex(), MonomialOrder::lex()}) {
      const auto gb = buchberger(gens, order, true);
      EXPECT_TRUE(satisfies_buchberger_criterion(gb));
      EXPECT_TRUE(is_reduced(gb));
      for (const auto& p : gens) EXPECT_TRUE(normal_form(p, gb).is_zero());
      for (std::size_t i = 0; i < gb.generators().size(); ++i) {
        ExactPoly sum(2);
        for (std::size_t j = 0; j < gens.size(); ++j) sum += gb.lift()[i][j] * gens[j];
        EXPECT_EQ(sum, gb.generators()[i]);
      }
    }
  }
}

TEST(Buchberger, LiftToInputGenerators) {
  const ExactPoly f = P("x^3 + y^3 - 3*x*y");
  const auto gb = jacobian_basis(f);
  const ExactPoly p = P("x^5*y^2 - 7*x*y + 2");
  const auto rec = division_record(p, gb);
  const auto h = lift_cofactors(rec, gb);
  ExactPoly sum = rec.nf;
  const auto J = jacobian(f);
  for (std::size_t i = 0; i < J.size(); ++i) sum += h[i] * J[i];
  EXPECT_EQ(sum, p);
}

TEST(Milnor, CuspBasis) {
  const auto ma = milnor_algebra(P("x^3 - y^2"));
  EXPECT_EQ(ma.mu(), 2u);
  ASSERT_EQ(ma.basis().size(), 2u);
  EXPECT_EQ(ma.basis()[0], (Exponent{0, 0}));
  EXPECT_EQ(ma.basis()[1], (Exponent{1, 0}));
}

TEST(Milnor, BrieskornPhamProducts) {
  for (int a = 2; a <= 6; ++a)
    for (int b = 2; b <= 6; ++b) {
      const ExactPoly f = P("x^" + std::to_string(a) + " + y^" + std::to_string(b));
      EXPECT_EQ(milnor_algebra(f).mu(), static_cast<std::size_t>((a - 1) * (b - 1)));
    }
}

TEST(Milnor, QuasiHomogeneousWeightFormula) {
  // mu = prod (1/w_i - 1)
  struct Case {
    const char* f;
    Rational w1, w2;
  };
  for (const auto& c : {Case{"x^2*y + y^3", make_rational(1, 3), make_rational(1, 3)},
                        Case{"x^3 + y^4", make_rational(1, 3), make_rational(1, 4)},
                        Case{"x^3 + x*y^3", make_rational(1, 3), make_rational(2, 9)},
                        Case{"x^3 + y^5", make_rational(1, 3), make_rational(1, 5)}}) {
    const Rational mu = (1 / c.w1 - 1) * (1 / c.w2 - 1);
    EXPECT_EQ(Rational(static_cast<long>(milnor_algebra(P(c.f)).mu())), mu) << c.f;
  }
}

TEST(Milnor, MorseAndGlobalCases) {
  EXPECT_EQ(milnor_algebra(P("x^2 + y^2 + z^2", XYZ)).mu(), 1u);
  EXPECT_EQ(milnor_algebra(P("x*y")).mu(), 1u);
  EXPECT_EQ(milnor_algebra(P("x^3 + y^3 - 3*x*y")).mu(), 4u);
  EXPECT_EQ(milnor_algebra(P("x + y")).mu(), 0u);
}

TEST(Milnor, NonIsolatedCriticalLocus) {
  EXPECT_THROW(milnor_algebra(P("x*y*z", XYZ)), InfiniteMilnorNumber);
  EXPECT_THROW(milnor_algebra(P("x^2")), InfiniteMilnorNumber);
}

TEST(Milnor, MultiplicationMatricesCommute) {
  const auto ma = milnor_algebra(P("x^3 + x*y^3"));
  const QMatrix mx = ma.multiplication_matrix(P("x")), my = ma.multiplication_matrix(P("y"));
  EXPECT_EQ(mx * my, my * mx);
}

TEST(Residue, CuspValues) {
  const auto ma = milnor_algebra(P("x^3 - y^2"));
  const auto lam = residue_functional(ma);
  EXPECT_EQ(lam.apply(ma, P("1")), Rational(0));
  EXPECT_EQ(lam.apply(ma, P("x")), make_rational(-1, 6));
  EXPECT_EQ(lam.apply(ma, hessian_determinant(ma.f())), Rational(2));
}

TEST(Residue, OneVariableQuadratic) {
  const std::vector<std::string> X{"x"};
  const auto ma = milnor_algebra(parse_poly("x^2", X));
  EXPECT_EQ(residue_functional(ma).values.at(0), make_rational(1, 2));
}

TEST(Residue, HessianNormalizationAndTraceFormula) {
  std::mt19937_64 g(8);
  for (const char* s : {"x^2 + y^2", "x^3 - y^2", "x^2*y + y^3", "x^3 + y^4", "x^3 + x*y^3", "x^3 + y^5", "x*y",
                        "x^3 + y^3 - 3*x*y"}) {
    const auto ma = milnor_algebra(P(s));
    const auto lam = residue_functional(ma);
    const ExactPoly hess = hessian_determinant(ma.f());
    EXPECT_EQ(lam.apply(ma, hess), Rational(static_cast<long>(ma.mu()))) << s;
    for (int t = 0; t < 5; ++t) {
      const ExactPoly q = gen::random_poly(g, 2, 3, 3);
      const QMatrix m = ma.multiplication_matrix(q);
      Rational tr = 0;
      for (std::size_t i = 0; i < ma.mu(); ++i) tr += m(i, i);
      EXPECT_EQ(lam.apply(ma, q * hess), tr) << s;
    }
  }
}
