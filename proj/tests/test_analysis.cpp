#include <gtest/gtest.h>

#include "krbenes/analysis.hpp"
#include "krbenes/errors.hpp"
#include "krbenes/generators.hpp"
#include "oracles.hpp"

using namespace krbenes;

namespace {

BigInt factorial(unsigned n) {
  BigInt f = 1;
  for (unsigned i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

TEST(Boundedness, Examples) {
  const auto ex = boundedness(Permutation::parse("4,5,0,6,1,2,7,3"));
  EXPECT_EQ(ex.k_exact, 4u);
  EXPECT_EQ(ex.K, 4u);
  const auto id = boundedness(Permutation::identity(8));
  EXPECT_EQ(id.k_exact, 0u);
  EXPECT_EQ(id.K, 1u);
  const auto rev = boundedness(Permutation::reversal(8));
  EXPECT_EQ(rev.k_exact, 7u);
  EXPECT_EQ(rev.K, 8u);
  EXPECT_EQ(boundedness(Permutation::parse("1,0,2")).K, 1u);
}

TEST(Boundedness, PowerOfTwoInvariants) {
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const Permutation p = gen_random_permutation(32, seed);
    const auto b = boundedness(p);
    EXPECT_EQ(b.k_exact, oracle::displacement(p));
    EXPECT_TRUE(is_power_of_two(b.K));
    EXPECT_GE(b.K, b.k_exact);
    EXPECT_TRUE(b.k_exact <= 1 || b.K / 2 < b.k_exact);
  }
}

TEST(CountFormula, DirectEvaluation) {
  EXPECT_EQ(count_k_bounded_formula(4, 2), 18);
  EXPECT_EQ(count_k_bounded_formula(8, 2), 1458);
  for (std::size_t n : {2u, 8u, 64u}) EXPECT_EQ(count_k_bounded_formula(n, 0), 1);
  EXPECT_EQ(count_k_bounded_formula(1024, 512), factorial(512) * boost::multiprecision::pow(BigInt(513), 512));
  EXPECT_THROW(count_k_bounded_formula(8, 8), OutOfDomain);
  EXPECT_THROW(count_k_bounded_formula(8, 3), OutOfDomain);
}

TEST(CountExhaustive, SmallValues) {
  EXPECT_EQ(count_k_bounded_exhaustive(4, 2), 14);
  EXPECT_EQ(count_k_bounded_exhaustive(4, 0), 1);
  EXPECT_EQ(count_k_bounded_exhaustive(4, 3), 24);
  EXPECT_THROW(count_k_bounded_exhaustive(kExhaustiveCountLimit + 1, 1), BudgetExceeded);
}

TEST(CountExhaustive, MatchesFilteringAllPermutations) {
  for (std::size_t n = 1; n <= 8; ++n) {
    for (std::size_t k = 0; k < n; ++k) {
      EXPECT_EQ(count_k_bounded_exhaustive(n, k), oracle::count_bounded_by_filter(n, k)) << n << " " << k;
    }
  }
}

TEST(CountExhaustive, RangeAndMonotonicity) {
  for (std::size_t n = 1; n <= 10; ++n) {
    EXPECT_EQ(count_k_bounded_exhaustive(n, 0), 1);
    EXPECT_EQ(count_k_bounded_exhaustive(n, n - 1), factorial(static_cast<unsigned>(n)));
    for (std::size_t k = 1; k < n; ++k) EXPECT_LE(count_k_bounded_exhaustive(n, k - 1), count_k_bounded_exhaustive(n, k));
  }
  // With k = 1 only adjacent transpositions are possible: Fibonacci numbers.
  EXPECT_EQ(count_k_bounded_exhaustive(20, 1), 10946);
}

TEST(CountReport, SurfacesDisagreement) {
  const auto r = count_report(4, 2, true);
  EXPECT_EQ(r.K, 2u);
  EXPECT_EQ(r.formula_count, 18);
  ASSERT_TRUE(r.exhaustive_count.has_value());
  EXPECT_EQ(*r.exhaustive_count, 14);
  EXPECT_EQ(r.agrees, std::optional<bool>{false});

  const auto z = count_report(8, 0, false);
  EXPECT_EQ(z.formula_count, 1);
  EXPECT_EQ(z.exhaustive_count, std::optional<BigInt>{1});
  EXPECT_EQ(z.agrees, std::optional<bool>{true});

  const auto big = count_report(64, 4, false);
  EXPECT_FALSE(big.exhaustive_count.has_value());
  EXPECT_FALSE(big.agrees.has_value());

  const auto rounded = count_report(8, 3, false);
  EXPECT_EQ(rounded.K, 4u);
  EXPECT_EQ(*rounded.exhaustive_count, count_k_bounded_exhaustive(8, 4));
}

TEST(SingleWidthCounts, DirectEvaluation) {
  EXPECT_EQ(p_k(8, 2), 1330);
  EXPECT_EQ(p_k(4, 2), 10);
  EXPECT_EQ(p_n(4), 8);
  EXPECT_EQ(p_n(8), 1458);
  // The oracle's count of permutations needing exactly K = 2 on four lines.
  EXPECT_EQ(count_k_bounded_exhaustive(4, 2) - count_k_bounded_exhaustive(4, 1), 9);
  EXPECT_NE(p_k(4, 2), count_k_bounded_exhaustive(4, 2) - count_k_bounded_exhaustive(4, 1));
  EXPECT_THROW(p_k(8, 1), OutOfDomain);
  EXPECT_THROW(p_k(8, 8), OutOfDomain);
}

TEST(AverageComplexity, EmptySumCase) {
  const auto a = average_control_complexity(4);
  EXPECT_EQ(a.as_printed, BigRational(193));
  EXPECT_EQ(a.normalized, BigRational(193, 24));
}

TEST(AverageComplexity, EightLines) {
  // 1 + 2*8*P_2*1 + 8*5*(8! - P_8) with P_2 = 1330, P_8 = 1458.
  const auto a = average_control_complexity(8);
  EXPECT_EQ(a.as_printed, BigRational(1 + 16 * 1330 + 40 * (40320 - 1458)));
  EXPECT_EQ(a.normalized, BigRational(1575761, 40320));
}

TEST(AverageComplexity, NormalizedStaysUnderBenesCost) {
  for (std::size_t n = 4, m = 2; n <= 16; n *= 2, ++m) {
    EXPECT_LE(average_control_complexity(n).normalized, BigRational(n * (2 * m - 1))) << n;
  }
  EXPECT_THROW(average_control_complexity(32), OutOfDomain);
}

TEST(CostSummary, SinglePlan) {
  const Network kr = build_kr_benes(16);
  const std::vector<RoutePlan> plans{kr_benes_route(kr, Permutation::identity(16))};
  const auto s = control_cost_summary(plans);
  ASSERT_EQ(s.groups.size(), 1u);
  EXPECT_EQ(s.plans, 1u);
  EXPECT_DOUBLE_EQ(s.mean_terminal_visits, static_cast<double>(s.max_terminal_visits));
}

TEST(CostSummary, MixedBatch) {
  const Network kr = build_kr_benes(16);
  std::vector<RoutePlan> plans;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    plans.push_back(kr_benes_route(kr, gen_random_k_bounded(16, 1 + seed % 15, seed)));
  }
  const auto s = control_cost_summary(plans);
  EXPECT_LE(s.max_terminal_visits, 112u);
  std::size_t total = 0;
  for (std::size_t i = 0; i < s.groups.size(); ++i) {
    const auto& g = s.groups[i];
    total += g.plans;
    if (i > 0) EXPECT_LT(s.groups[i - 1].K, g.K);
    const std::uint64_t expect = g.K <= 2 ? 32 : g.K == 4 ? 64 : 112;
    EXPECT_EQ(g.max_terminal_visits, expect) << g.K;
    EXPECT_DOUBLE_EQ(g.mean_terminal_visits, static_cast<double>(expect));
    EXPECT_EQ(g.total_overhead, 16 * g.plans);
  }
  EXPECT_EQ(total, plans.size());
  const std::string csv = to_csv(s);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "K,plans,mean_terminal_visits,max_terminal_visits,total_overhead");
}
