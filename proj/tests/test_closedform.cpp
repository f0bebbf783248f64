#include <gtest/gtest.h>

#include <functional>
#include <string>
#include <vector>

#include "eulersum/closedform.hpp"

using namespace eulersum;

namespace {

BigRational Q(long n, long d = 1) { return make_rational(n, d); }
SymExpr z(int s) { return zeta_sym(s); }
SymExpr l(int s) { return lambda_sym(s); }
SymExpr ln2() { return ln2_sym(); }

}  // namespace

TEST(Jordan, EvenExamples) {
  EXPECT_EQ(jordan_even(1), Q(7, 4) * z(3));
  EXPECT_EQ(jordan_even(2), Q(31, 4) * z(5) - Q(7, 2) * (z(3) * z(2)));
  EXPECT_EQ(jordan_even(3), 32 * l(7) - 4 * (l(3) * z(4)) - 16 * (l(5) * z(2)));
  EXPECT_THROW(jordan_even(0), DomainError);
}

TEST(Jordan, ZetaFormMatchesLambdaForm) {
  for (int a = 1; a <= 6; ++a) EXPECT_EQ(jordan_even_zeta_form(a), jordan_even(a)) << a;
}

TEST(Jordan, BarEvenExamples) {
  EXPECT_EQ(jordan_bar_even(1), Q(3, 4) * (z(2) * ln2()) + Q(7, 16) * z(3));
  EXPECT_EQ(jordan_bar_even(2), Q(15, 16) * (z(4) * ln2()) + Q(31, 64) * z(5) - Q(3, 32) * (z(2) * z(3)));
}

TEST(Jordan, BarRelation) {
  EXPECT_EQ(jordan_bar_relation(2), l(2) * ln2());
  EXPECT_EQ(jordan_bar_relation(3), Q(7, 8) * (z(3) * ln2()) + Q(15, 32) * z(4));
  EXPECT_EQ(jordan_bar_relation(4), l(4) * ln2() + Q(1, 4) * (l(3) * z(2)) - Q(1, 8) * (l(2) * z(3)));
  EXPECT_EQ(jordan_bar_relation(4), jordan_bar_even(2) - Q(1, 16) * jordan_even(2));
  for (int a = 1; a <= 5; ++a) {
    EXPECT_EQ(jordan_bar_even(a) - pow2(-2 * a) * jordan_even(a), jordan_bar_relation(2 * a)) << a;
  }
  EXPECT_EQ(jordan_bar_relation(2), jordan_bar_even(1) - Q(1, 4) * jordan_even(1));
  EXPECT_THROW(jordan_bar_relation(1), DomainError);
}

TEST(Jordan, WeightFourLi4Values) {
  SymExpr j3 = jordan_J3();
  EXPECT_EQ(j3.coefficient(Monomial(Atom::li4_half())), 8);
  EXPECT_EQ(homogeneous_weight(j3), 4);
  SymExpr jb3 = jordan_bar3();
  EXPECT_EQ(jb3.coefficient(Monomial(Atom::li4_half())), -1);
  EXPECT_EQ(jb3 + Q(1, 8) * j3, jordan_bar_relation(3));
  EXPECT_EQ(jb3 + Q(1, 8) * j3, l(3) * ln2() + Q(1, 4) * (l(2) * z(2)));
}

TEST(EulerStar, Values) {
  EXPECT_EQ(euler_star(2), 2 * z(3));
  EXPECT_EQ(euler_star(3), Q(5, 4) * z(4));
  EXPECT_EQ(euler_star(3), Q(1, 72) * pi_sym(4));
  EXPECT_EQ(euler_star(4), 3 * z(5) - z(2) * z(3));
  for (int a = 1; a <= 6; ++a) {
    // even b: (1+a) zeta(2a+1) - sum_{j<a} zeta(2j) zeta(2a+1-2j)
    SymExpr even = BigRational(1 + a) * z(2 * a + 1);
    for (int j = 1; j <= a - 1; ++j) even -= z(2 * j) * z(2 * a + 1 - 2 * j);
    EXPECT_EQ(euler_star(2 * a), even) << a;
  }
}

TEST(AltEulerStar, Values) {
  EXPECT_EQ(alt_euler_star(1), Q(5, 8) * z(3));
  EXPECT_EQ(alt_euler_star(2), Q(59, 32) * z(5) - Q(1, 2) * (z(2) * z(3)));
  EXPECT_EQ(alt_euler_star(2), Q(59, 32) * z(5) - Q(1, 12) * (pi_sym(2) * z(3)));
  EXPECT_THROW(alt_euler_star(0), DomainError);
}

TEST(ZSums, Values) {
  EXPECT_EQ(Z_even(1), Q(11, 4) * z(3));
  EXPECT_EQ(Z_even(2), Q(37, 4) * z(5) - 4 * (z(2) * z(3)));
  for (int a = 1; a <= 6; ++a) EXPECT_EQ(Z_even(a), jordan_even(a) + Q(1, 2) * euler_star(2 * a)) << a;
  EXPECT_EQ(h_odd_over_odd(1), Q(21, 16) * z(3));
  EXPECT_EQ(h_odd_over_odd(2), Q(5, 2) * l(5) - z(3) * l(2));
}

TEST(HSums, EvenExamples) {
  EXPECT_EQ(h_even(1), -Q(1, 4) * (pi_sym(2) * ln2()) + 2 * l(3));
  EXPECT_EQ(h_even(2), -Q(1, 48) * (pi_sym(4) * ln2()) + 4 * l(5) - Q(1, 4) * (pi_sym(2) * l(3)));
}

TEST(HSums, OddExamplesAndRegroupings) {
  EXPECT_EQ(h_odd(2), -2 * (l(3) * ln2()) + Q(3, 2) * l(4));
  EXPECT_EQ(h_odd(2), h3_direct());
  EXPECT_EQ(h_odd(2), Q(1, 64) * pi_sym(4) - Q(7, 4) * (z(3) * ln2()));
  EXPECT_EQ(h_odd(3), -2 * (l(5) * ln2()) + Q(5, 2) * l(6) - pow(l(3), 2));
  EXPECT_EQ(h_odd(4), -2 * (l(7) * ln2()) + Q(7, 2) * l(8) - 2 * (l(3) * l(5)));
  // The q = 2 middle term lambda(5)^2 belongs to h_9 as well.
  EXPECT_EQ(h_odd(5), -2 * (l(9) * ln2()) + Q(9, 2) * l(10) - 2 * (l(3) * l(7)) - pow(l(5), 2));
  for (int b = 1; b <= 4; ++b) {
    EXPECT_EQ(h_odd_4b_minus_1(b), h_odd(2 * b)) << b;
    EXPECT_EQ(h_odd_4b_plus_1(b), h_odd(2 * b + 1)) << b;
  }
  for (int r = 1; r <= 6; ++r) EXPECT_EQ(h_odd_unsimplified(r), h_odd(r + 1)) << r;
  EXPECT_THROW(h_odd(1), DomainError);
}

TEST(AltTildeH, Values) {
  EXPECT_EQ(alt_tildeH_sum(1), ln2() * z(2) - Q(5, 8) * z(3));
  // The formula yields +3/4 zeta(3) zeta(2) at a = 2.
  SymExpr a2 = ln2() * z(4) - Q(59, 32) * z(5) + Q(3, 4) * (z(3) * z(2));
  EXPECT_EQ(alt_tildeH_sum(2), a2);
  SymExpr printed = ln2() * z(4) - Q(59, 32) * z(5) - Q(3, 4) * (z(3) * z(2));
  EXPECT_NE(alt_tildeH_sum(2), printed);
}

TEST(Sigma, TwoOdd) {
  EXPECT_EQ(sigma_2_odd(1), 2 * l(3));
  EXPECT_EQ(sigma_2_odd(1), Q(7, 4) * z(3));
  EXPECT_EQ(sigma_2_odd(2), 12 * l(5) - 8 * (l(2) * l(3)));
  EXPECT_EQ(sigma_2_odd(2), Q(93, 8) * z(5) - Q(21, 4) * (z(2) * z(3)));
  EXPECT_EQ(sigma_2_odd(3), 30 * l(7) - 8 * (l(4) * l(3)) - 16 * (l(5) * l(2)));
}

TEST(Sigma, OddTwo) {
  EXPECT_EQ(sigma_odd_2(2), -16 * l(5) + Q(40, 3) * (l(2) * l(3)));
  EXPECT_EQ(sigma_odd_2(2), -Q(31, 2) * z(5) + Q(35, 4) * (z(2) * z(3)));
  SymExpr s52 = -96 * l(7) + Q(224, 3) * (l(2) * l(5)) + 4 * (l(3) * z(4));
  EXPECT_EQ(sigma_odd_2(3), s52);
  EXPECT_EQ(sigma_odd_2(3), -96 * l(7) + Q(224, 3) * (l(2) * l(5)) + Q(64, 15) * (l(3) * l(4)));
  EXPECT_THROW(sigma_odd_2(1), DomainError);
}

TEST(Sigma, ZetaStarAndEConsistency) {
  EXPECT_EQ(zeta_star_odd_2(2), -Q(9, 2) * z(5) + 3 * (z(2) * z(3)));
  EXPECT_EQ(zeta_star_odd_2(3), -10 * z(7) + 5 * (z(2) * z(5)) + 2 * (z(3) * z(4)));
  EXPECT_EQ(E_2_odd(2), Q(19, 2) * (z(2) * z(3)) - Q(133, 8) * z(5));
  for (int a = 2; a <= 5; ++a) EXPECT_EQ(sigma_odd_2(a) + Q(1, 4) * zeta_star_odd_2(a), E_2_odd(a)) << a;
}

TEST(Sigma, EvenThree) {
  EXPECT_EQ(sigma_even_3(3), 120 * l(7) - 72 * (z(2) * l(5)));
  EXPECT_EQ(sigma_even_3(3), 120 * l(7) - 96 * (l(2) * l(5)));
  EXPECT_EQ(sigma_even_3(4), 896 * l(9) - 528 * (z(2) * l(7)) - 24 * (z(4) * l(5)));
  EXPECT_THROW(sigma_even_3(2), DomainError);
  // At a = 2 the unrestricted formula gives 12 lambda(5) - 7 zeta(2) lambda(3), not sigma(2,3).
  EXPECT_EQ(sigma_even_3_formula(2), 12 * l(5) - 7 * (z(2) * l(3)));
  EXPECT_NE(sigma_even_3_formula(2), sigma_2_odd(2));
}

TEST(Sigma, Specials) {
  EXPECT_EQ(sigma_special(3, 1) + sigma_special(2, 2), 3 * l(4));
  EXPECT_EQ(sigma_special(3, 1) + sigma_special(2, 2), Q(45, 16) * z(4));
  EXPECT_EQ(sigma_special(3, 1) + sigma_special(2, 2), Q(1, 32) * pi_sym(4));
  EXPECT_EQ(sigma_special(4, 3), sigma_even_3(3));
  EXPECT_EQ(sigma_special(3, 2), sigma_odd_2(2));
  EXPECT_EQ(sigma_special(3, 4), -80 * l(7) + 8 * (l(3) * l(4)) + Q(176, 3) * (l(2) * l(5)));
  EXPECT_THROW(sigma_special(5, 5), DomainError);
}

TEST(Sigma, WeightedSums) {
  for (int a = 2; a <= 6; ++a) EXPECT_EQ(weighted_sigma_sum(a), weighted_sigma_sum_from_jordan(a)) << a;
  EXPECT_EQ(weighted_sigma_sum(2), sigma_odd_2(2) + 2 * sigma_2_odd(2));
  EXPECT_EQ(relation_50(), 15 * l(6) - 8 * pow(l(3), 2));
  EXPECT_EQ(homogeneous_weight(relation_50()), 6);
}

TEST(Sigma, SumTheoremRightHandSide) {
  EXPECT_EQ(sigma_sum_rhs(3), 2 * l(3));
  EXPECT_EQ(sigma_sum_rhs(4), Q(45, 16) * z(4));
  EXPECT_EQ(sigma_sum_rhs(7), 6 * l(7));
  EXPECT_EQ(jordan_even(1), sigma_sum_rhs(3));
  EXPECT_EQ(jordan_even(2) + sigma_odd_2(2) + sigma_2_odd(2), sigma_sum_rhs(5));
  EXPECT_EQ(jordan_even(3) + sigma_odd_2(3) + sigma_special(4, 3) + sigma_special(3, 4) + sigma_2_odd(3), sigma_sum_rhs(7));
  EXPECT_THROW(sigma_sum_rhs(2), DomainError);
}

TEST(ClosedForm, DispatchBySumId) {
  EXPECT_EQ(*closed_form(SumId::J(4)), jordan_even(2));
  EXPECT_EQ(*closed_form(SumId::Sigma(3, 1)), jordan_J3());
  EXPECT_EQ(*closed_form(SumId::Sigma(2, 5)), sigma_2_odd(3));
  EXPECT_EQ(*closed_form(SumId::Sigma(6, 3)), sigma_even_3(4));
  EXPECT_EQ(*closed_form(SumId::E(1, 4)), Z_even(2));
  EXPECT_EQ(*closed_form(SumId::ZetaStar(5, 2)), zeta_star_odd_2(3));
  EXPECT_FALSE(closed_form(SumId::J(5)).has_value());
  EXPECT_FALSE(closed_form(SumId::Sigma(4, 2)).has_value());
  EXPECT_FALSE(closed_form(SumId::Sigma(4, 4)).has_value());
}

TEST(ClosedForm, WeightHomogeneityUpToThirteen) {
  struct Op {
    std::string name;
    int lo;
    std::function<SymExpr(int)> f;
    std::function<int(int)> weight;
  };
  auto odd_weight = [](int a) { return 2 * a + 1; };
  std::vector<Op> ops{
      {"euler_star", 2, euler_star, [](int b) { return b + 1; }},
      {"alt_euler_star", 1, alt_euler_star, odd_weight},
      {"Z_even", 1, Z_even, odd_weight},
      {"h_odd_over_odd", 1, h_odd_over_odd, odd_weight},
      {"jordan_even", 1, jordan_even, odd_weight},
      {"jordan_bar_even", 1, jordan_bar_even, odd_weight},
      {"jordan_bar_relation", 2, jordan_bar_relation, [](int b) { return b + 1; }},
      {"h_even", 1, h_even, odd_weight},
      {"h_odd", 2, h_odd, [](int a) { return 2 * a; }},
      {"alt_tildeH_sum", 1, alt_tildeH_sum, odd_weight},
      {"sigma_2_odd", 1, sigma_2_odd, odd_weight},
      {"sigma_odd_2", 2, sigma_odd_2, odd_weight},
      {"zeta_star_odd_2", 2, zeta_star_odd_2, odd_weight},
      {"E_2_odd", 2, E_2_odd, odd_weight},
      {"sigma_even_3", 3, sigma_even_3, odd_weight},
      {"weighted_sigma_sum", 2, weighted_sigma_sum, odd_weight},
      {"sigma_sum_rhs", 3, sigma_sum_rhs, [](int w) { return w; }},
  };
  int checked = 0;
  for (const auto& op : ops) {
    for (int p = op.lo; op.weight(p) <= 13; ++p) {
      SymExpr v = op.f(p);
      EXPECT_FALSE(v.is_zero()) << op.name << "(" << p << ")";
      EXPECT_EQ(homogeneous_weight(v), op.weight(p)) << op.name << "(" << p << ")";
      ++checked;
    }
  }
  EXPECT_EQ(homogeneous_weight(jordan_J3()), 4);
  EXPECT_EQ(homogeneous_weight(jordan_bar3()), 4);
  for (auto [s, t] : {std::pair{2, 2}, {3, 1}, {3, 2}, {4, 3}, {3, 4}}) {
    EXPECT_EQ(homogeneous_weight(sigma_special(s, t)), s + t);
  }
  EXPECT_GT(checked, 80);
}

TEST(ClosedForm, CatalogueEntriesAreWeightConsistent) {
  auto cat = identity_catalogue(11);
  EXPECT_GT(cat.size(), 80u);
  for (const auto& id : cat) {
    for (const auto& [sid, c] : id.combination) EXPECT_EQ(sid.weight(), id.weight()) << id.name;
    EXPECT_EQ(homogeneous_weight(id.value), id.weight()) << id.name;
  }
}
