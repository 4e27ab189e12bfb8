// Copyright 2026 The feyncount Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "feyncount/asymptotics.hpp"

#include <gtest/gtest.h>

#include <set>

#include "feyncount/counts.hpp"
#include "feyncount/laurent.hpp"
#include "feyncount/reference_tables.hpp"

namespace feyncount {
namespace {

ExactRat R(long p, long q = 1) { return make_rat(p, q); }

std::vector<ExactRat> rats(std::initializer_list<const char*> xs) {
  std::vector<ExactRat> out;
  for (const char* x : xs) out.push_back(parse_rat(x));
  return out;
}

TEST(LaurentTest, RationalFunctionExpansion) {
  // 1/(2(2m - 1)) = t/4 (1 + t/2 + t^2/4 + ...)
  const auto s = laurent_from_rational(Polynomial(1), Polynomial::linear(4, -2), 4);
  EXPECT_EQ(s.valuation(), 1);
  EXPECT_EQ(s.coefficients(1, 4), rats({"1/4", "1/8", "1/16", "1/32"}));
  // m^2 + 1 has valuation -2.
  const auto p = laurent_from_polynomial(Polynomial({1, 0, 1}), 3);
  EXPECT_EQ(p.valuation(), -2);
  EXPECT_EQ(p[0], 1);
  EXPECT_EQ(p[1], 0);
}

TEST(LaurentTest, InverseAndExp) {
  const auto a = laurent_from_rational(Polynomial::linear(1, 3), Polynomial::linear(1, -2), 8);
  const auto one = a * laurent_inverse(a);
  EXPECT_EQ(one, LaurentSeries::constant(1, 8));
  // exp(t) = sum t^k / k!
  const auto e = laurent_exp(LaurentSeries::monomial(1, 1, 6));
  for (int k = 0; k <= 6; ++k) EXPECT_EQ(e[k], ExactRat(1) / ExactRat(factorial(k)));
  EXPECT_THROW(laurent_exp(LaurentSeries::constant(1, 3)), InvalidArgument);
}

TEST(LaurentTest, ProductTracksPrecision) {
  const auto a = LaurentSeries::monomial(1, -2, 5);  // m^2, exact through t^5
  const auto b = laurent_from_rational(Polynomial(1), Polynomial::linear(1, 1), 5);
  EXPECT_EQ((a * b).order(), 3);
  EXPECT_EQ((a * b).valuation(), -1);
}

TEST(LaurentTest, EvaluateAt) {
  const LaurentSeries s(-1, rats({"2", "1", "1/2"}), 1);  // 2m + 1 + 1/(2m)
  EXPECT_EQ(s.evaluate_at(4), R(2 * 4 + 1) + R(1, 8));
}

TEST(BernoulliTest, NumbersAndPolynomials) {
  EXPECT_EQ(bernoulli(0), 1);
  EXPECT_EQ(bernoulli(1), R(-1, 2));
  EXPECT_EQ(bernoulli(2), R(1, 6));
  EXPECT_EQ(bernoulli(3), 0);
  EXPECT_EQ(bernoulli(4), R(-1, 30));
  EXPECT_EQ(bernoulli(12), R(-691, 2730));
  EXPECT_EQ(bernoulli_polynomial(2, R(1, 2)), R(-1, 12));
  EXPECT_EQ(bernoulli_polynomial(3, 1), 0);
}

TEST(StirlingTest, FirstTailCoefficient) {
  EXPECT_EQ(stirling_tail_coefficient(0, 1), R(1, 12));
  EXPECT_EQ(stirling_tail_coefficient(0, 3), R(-1, 360));
}

TEST(StirlingTest, FactorialRatioExample) {
  // (2(m-1))! m! / ((m-1)! (2m)!) = 1/(2(2m-1))
  const auto r = loggamma_ratio_series({{2, -1, 1}, {1, 1, 1}, {1, 0, -1}, {2, 1, -1}}, 5);
  EXPECT_EQ(r.prefactor.scalar, R(1, 4));
  EXPECT_EQ(r.prefactor.m_power, -1);
  EXPECT_EQ(r.prefactor.radicand, 1);
  EXPECT_EQ(r.prefactor.geometric, 1);
  EXPECT_EQ(r.unit.coefficients(0, 5), rats({"1", "1/2", "1/4", "1/8", "1/16", "1/32"}));
}

TEST(StirlingTest, ShiftedGammaIsExactlyPolynomial) {
  // Gamma(m + 3) / Gamma(m) = m (m + 1) (m + 2)
  const auto r = loggamma_ratio_series({{1, 3, 1}, {1, 0, -1}}, 6);
  EXPECT_EQ(r.prefactor.m_power, 3);
  const auto expected = laurent_from_polynomial(Polynomial({0, 2, 3, 1}), 3) *
                        LaurentSeries::monomial(1, 3, 9);
  EXPECT_EQ(r.unit, expected.truncated(6));
}

TEST(StirlingTest, RejectsUncancelledTerms) {
  EXPECT_THROW(loggamma_ratio_series({{2, 0, 1}, {1, 0, -1}}, 3), AsymptoticError);  // m log m
  EXPECT_THROW(loggamma_ratio_series({{2, 1, 1}, {1, 1, -2}}, 3), AsymptoticError);  // sqrt(pi)
}

TEST(StirlingTest, FamilyBasePrefactor) {
  for (int q = 1; q <= 5; ++q) {
    const auto b = family_base(q, 4);
    ExactRat two_power = 1;
    for (int i = 0; i < (q - 1) / 2; ++i) two_power *= 2;
    EXPECT_EQ(b.prefactor.scalar, two_power) << q;
    EXPECT_EQ(b.prefactor.radicand, (q - 1) % 2 == 0 ? 1 : 2) << q;
    EXPECT_EQ(b.prefactor.geometric, R(1, q)) << q;
    EXPECT_EQ(b.prefactor.m_power, 0) << q;
    EXPECT_EQ(b.unit[0], 1);
  }
}

TEST(SurdTest, ExactSigns) {
  EXPECT_EQ((SurdValue{3, -2, 2}).sign(), 1);   // 3 - 2 sqrt2 > 0
  EXPECT_EQ((SurdValue{1, -1, 2}).sign(), -1);  // 1 - sqrt2 < 0
  EXPECT_EQ((SurdValue{-7, 5, 2}).sign(), 1);   // 5 sqrt2 > 7
  EXPECT_EQ((SurdValue{0, 0, 2}).sign(), 0);
  const SurdValue x{1, 1, 2};
  const SurdValue y{1, -1, 2};
  EXPECT_EQ((x * y).rational, -1);
  EXPECT_EQ((x * y).irrational, 0);
  EXPECT_TRUE(y.abs_less(x));
}

TEST(PrefactorTest, LinearFactorsForDisplay) {
  const auto [scalar, factors] = factor_linear(detail::principal_polynomial(3));
  EXPECT_EQ(scalar, R(1, 3));
  ASSERT_EQ(factors.size(), 3u);
  EXPECT_EQ(factors[0], Polynomial::variable());
  EXPECT_EQ(factors[1], Polynomial::linear(2, -1));
  EXPECT_EQ(factors[2], Polynomial::linear(2, -2));
}

TEST(PrefactorTest, PrincipalPolynomialIsBinomial) {
  for (int N = 0; N <= 5; ++N) {
    const Polynomial P = detail::principal_polynomial(N);
    for (long m = N; m <= N + 6; ++m) EXPECT_EQ(P(ExactRat(m)), ExactRat(binomial(2 * m, N))) << N;
  }
}

TEST(FamilyTest, MembersAreDistinctCompositions) {
  for (int q = 1; q <= 3; ++q) {
    const CompositionFamily fam(q, 4);
    const auto members = fam.members();
    EXPECT_EQ(ExactInt(members.size()), fam.member_count());
    std::set<std::vector<int>> seen;
    const int m = 60;
    for (const auto& mem : members) {
      const Composition c = fam.instantiate(mem, m);
      EXPECT_EQ(c.sum(), m);
      seen.insert(std::vector<int>(c.parts().begin(), c.parts().end()));
    }
    EXPECT_EQ(seen.size(), members.size());
  }
}

TEST(FamilyTest, MemberCounts) {
  EXPECT_EQ(CompositionFamily(1, 6).member_count(), 256);
  EXPECT_EQ(CompositionFamily(2, 6).member_count(), 4384);
  EXPECT_EQ(CompositionFamily(3, 6).member_count(), 37136);
}

TEST(FamilyTest, SmallBudgetCenteredFamily) {
  const auto members = CompositionFamily(2, 1).members();
  // {M, M}, then every order of {M - 1, M, 1}.
  EXPECT_EQ(members.size(), 1u + 6u);
  EXPECT_THROW(CompositionFamily(2, 1).instantiate(members[0], 7), InvalidArgument);
}

TEST(FamilyTermsTest, PrincipalVacuum) {
  const auto fe = family_terms(CompositionFamily::principal(6), 0, 6);
  EXPECT_EQ(fe.series.coefficients(0, 6),
            rats({"1", "-1/2", "-3/4", "-19/8", "-191/16", "-2551/32", "-41935/64"}));
}

TEST(FamilyTermsTest, BinomialCenteredVacuum) {
  const auto c = normalize_family(0, 2, family_terms(CompositionFamily::centered(2, 3), 0, 3));
  EXPECT_EQ(c.correction.coefficients(0, 3), rats({"1", "-33/8", "-1599/128", "-98683/1024"}));
  EXPECT_EQ(c.prefactor.sign, -1);
  EXPECT_EQ(c.prefactor.scalar, R(1, 2));
  EXPECT_EQ(c.prefactor.radicand, 2);
}

TEST(FamilyTermsTest, OneLegPrincipalMatchesVacuum) {
  const auto a = family_terms(CompositionFamily::principal(6), 0, 6);
  const auto b = family_terms(CompositionFamily::principal(6), 1, 6);
  EXPECT_EQ(a.series, b.series);
}

TEST(FamilyTermsTest, GroupedSumEqualsMemberSum) {
  FamilyOptions per;
  per.per_member = true;
  per.check_stability = false;
  FamilyOptions grouped;
  grouped.check_stability = false;
  for (auto [q, N] : std::vector<std::pair<int, int>>{{1, 5}, {2, 3}, {2, 4}, {3, 5}}) {
    const CompositionFamily fam(q, 4);
    EXPECT_EQ(family_terms(fam, N, 4, per).series, family_terms(fam, N, 4, grouped).series) << q << " " << N;
  }
}

TEST(FamilyTermsTest, StirlingRouteMatchesRationalRoute) {
  FamilyOptions stirling;
  stirling.route = FactorialRoute::stirling;
  for (int N = 0; N <= 5; ++N) {
    const auto rational = family_terms(CompositionFamily::principal(6), N, 6);
    EXPECT_EQ(family_terms(CompositionFamily::principal(6), N, 6, stirling).series, rational.series) << N;
  }
  for (int N = 0; N <= 2; ++N) {
    const CompositionFamily fam(2, 5);
    EXPECT_EQ(family_terms(fam, N, 5, stirling).series, family_terms(fam, N, 5).series) << N;
  }
}

TEST(FamilyTermsTest, ParallelEqualsSerial) {
  FamilyOptions par;
  par.jobs = 4;
  EXPECT_EQ(family_terms(CompositionFamily(2, 5), 3, 5, par).series,
            family_terms(CompositionFamily(2, 5), 3, 5).series);
}

TEST(FamilyTermsTest, StabilityGuard) {
  EXPECT_THROW(family_terms(CompositionFamily::principal(3), 0, 6), InvalidArgument);
  FamilyOptions wide;
  wide.stability_margin = 4;
  EXPECT_NO_THROW(family_terms(CompositionFamily::principal(6), 2, 6, wide));
}

TEST(ContributionTest, SpecExamples) {
  const auto c03 = contribution(0, 3, 6);
  EXPECT_TRUE(same_prefactor(c03.prefactor, reference_cell(0, 3).prefactor()));
  EXPECT_EQ(c03.bracket_coefficients()[0], R(83, 6));
  EXPECT_EQ(c03.bracket_coefficients()[1], R(2023, 36));
  const auto c21 = contribution(2, 1, 6);
  EXPECT_EQ(c21.bracket_coefficients(), rats({"1/2", "7/4", "35/8", "315/16", "4063/32", "65875/64"}));
  EXPECT_EQ(c21.prefactor.str(), "(2m)! * m(2m - 1)");
  const auto c54 = contribution(5, 4, 1);
  EXPECT_EQ(c54.bracket_coefficients()[0], R(492189, 15752));
  EXPECT_TRUE(same_prefactor(c54.prefactor, reference_cell(5, 4).prefactor()));
}

TEST(ContributionTest, NormalizedAndOrderZero) {
  const auto c = contribution(0, 2, 0);
  EXPECT_EQ(c.correction, LaurentSeries::constant(1, 0));
  EXPECT_EQ(c.prefactor.str(), "-1/2 * sqrt(2) * (2m)! / 2^m");
  EXPECT_EQ(contribution(3, 2, 3).correction[0], 1);
}

TEST(ContributionTest, RejectsUntabulatedCells) {
  EXPECT_THROW(contribution(0, 5, 6), InvalidArgument);
  EXPECT_THROW(contribution(6, 1, 6), InvalidArgument);
  EXPECT_NO_THROW(family_terms(CompositionFamily(5, 2), 0, 2));
}

TEST(EvaluateTest, PrincipalVacuumIsClose) {
  const auto p = contribution(0, 1, 6);
  const ExactRat exact(vacuum_connected(24));
  const SurdValue err = evaluate_truncated({p}, 24, 6) - SurdValue::of(exact);
  EXPECT_TRUE(err.abs_less(SurdValue::of(exact / 100)));
}

TEST(EvaluateTest, Guards) {
  const auto p = contribution(0, 1, 6);
  const auto c2 = contribution(0, 2, 6);
  EXPECT_THROW(evaluate_truncated({p}, 4, 6), InvalidArgument);
  EXPECT_THROW(evaluate_truncated({p, c2}, 25, 6), InvalidArgument);
  EXPECT_NO_THROW(evaluate_truncated({p, c2}, 26, 6));
}

TEST(EvaluateTest, CenteredValueCarriesSqrtTwo) {
  const auto c2 = contribution(0, 2, 2);
  const SurdValue v = evaluate_truncated({c2}, 10, 2);
  EXPECT_EQ(v.radicand, 2);
  EXPECT_EQ(v.rational, 0);
  EXPECT_LT(v.irrational, 0);
}

}  // namespace
}  // namespace feyncount
