#include <gtest/gtest.h>

#include <map>

#include "krbenes/errors.hpp"
#include "krbenes/generators.hpp"
#include "krbenes/matching.hpp"
#include "krbenes/routing.hpp"
#include "oracles.hpp"

using namespace krbenes;

namespace {

const Permutation kExample = Permutation::parse("4,5,0,6,1,2,7,3");

std::vector<std::pair<Line, Line>> sorted_partners(const Permutation& p, std::size_t k) {
  auto pairs = matching_stage(p, k).partners;
  std::sort(pairs.begin(), pairs.end());
  return pairs;
}

}  // namespace

TEST(PermutationGraph, WorkedExample) {
  const auto g = build_permutation_graph(kExample);
  // Input switch 0 holds inputs 0 and 1, bound for outputs 4 and 5: output switch 2.
  std::vector<std::size_t> from_zero;
  for (auto [i, o] : g.edges) {
    if (i == 0) from_zero.push_back(o);
  }
  EXPECT_EQ(from_zero, (std::vector<std::size_t>{2}));
}

TEST(PermutationGraph, IdentityHasOneComponentPerSwitch) {
  const auto g = build_permutation_graph(Permutation::identity(4));
  EXPECT_EQ(g.edges, (std::vector<std::pair<std::size_t, std::size_t>>{{0, 0}, {1, 1}}));
  EXPECT_EQ(g.components, 2u);
}

TEST(PermutationGraph, DegreesAndComponents) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const Permutation p = gen_random_permutation(8, seed);
    const auto g = build_permutation_graph(p);
    std::vector<int> in_deg(4, 0), out_deg(4, 0);
    for (auto [i, o] : g.edges) {
      ++in_deg[i];
      ++out_deg[o];
    }
    for (int d : in_deg) EXPECT_TRUE(d == 1 || d == 2);
    for (int d : out_deg) EXPECT_TRUE(d == 1 || d == 2);
    // Every switch touches two wires, so a component with s input switches
    // also holds s output switches.
    std::map<std::size_t, int> balance;
    for (std::size_t s = 0; s < 4; ++s) {
      ++balance[g.input_component[s]];
      --balance[g.output_component[s]];
    }
    for (auto [c, b] : balance) EXPECT_EQ(b, 0);
    for (auto [i, o] : g.edges) EXPECT_EQ(g.input_component[i], g.output_component[o]);
  }
}

TEST(CompatibilityGraph, WorkedExampleLabels) {
  const auto g = build_compatibility_graph(kExample, 4);
  EXPECT_EQ(g.v1, (std::vector<CompatibilityVertex>{{0, 4}, {1, 5}, {3, 6}}));
  EXPECT_EQ(g.v2, (std::vector<CompatibilityVertex>{{4, 1}, {5, 2}, {7, 3}}));
  bool cross = false, straight = false;
  for (const auto& e : g.edges) {
    if (e.u == 3 && e.v == 4) {
      cross = true;
      EXPECT_EQ(e.kind, CompatibilityKind::cross);
      EXPECT_EQ(e.labels, 1u);
    }
    if (e.u == 0 && e.v == 1) {
      straight = true;
      EXPECT_EQ(e.kind, CompatibilityKind::straight);
      EXPECT_EQ(e.labels, 3u);
    }
  }
  EXPECT_TRUE(cross);
  EXPECT_TRUE(straight);
  EXPECT_EQ(g.neighbour(3, 0), std::optional<Line>{4});
}

TEST(CompatibilityGraph, IdentityIsEmpty) {
  const auto g = build_compatibility_graph(Permutation::identity(8), 4);
  EXPECT_TRUE(g.v1.empty());
  EXPECT_TRUE(g.v2.empty());
  EXPECT_TRUE(g.edges.empty());
}

TEST(CompatibilityGraph, OnlyTwoBands) {
  EXPECT_THROW(build_compatibility_graph(Permutation::identity(16), 4), UnsupportedBandWidth);
  EXPECT_THROW(build_compatibility_graph(Permutation::reversal(8), 4), NotKBounded);
}

TEST(CompatibilityGraph, StraightPairsBalancePerLabel) {
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const Permutation p = gen_random_k_bounded(8, 4, seed);
    ASSERT_TRUE(straight_pair_counts(build_compatibility_graph(p, 4)).balanced()) << p.to_string();
  }
  enumerate_k_bounded(8, 4, [](const Permutation& p) {
    ASSERT_TRUE(straight_pair_counts(build_compatibility_graph(p, 4)).balanced()) << p.to_string();
  });
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const Permutation p = gen_random_k_bounded(16, 8, seed);
    ASSERT_TRUE(straight_pair_counts(build_compatibility_graph(p, 8)).balanced()) << p.to_string();
  }
}

TEST(CompatibilityGraph, EdgeKindsPredictSubnetworks) {
  enumerate_k_bounded(8, 4, [](const Permutation& p) {
    const auto g = build_compatibility_graph(p, 4);
    const auto dir = first_stage_directions(p);
    for (const auto& e : g.edges) {
      if (e.kind == CompatibilityKind::cross) {
        ASSERT_EQ(dir[e.u], dir[e.v]) << p.to_string();
      } else {
        ASSERT_NE(dir[e.u], dir[e.v]) << p.to_string();
      }
    }
  });
}

TEST(FirstStageDirections, AgreeWithLoopingOnBandAlignedLines) {
  // The looping router works on Benes lines; bit reversal maps a band-aligned
  // line to the Benes line whose first-column switch pairs the same inputs.
  for (std::size_t n : {4u, 8u, 16u, 32u}) {
    const unsigned m = log2_exact(n);
    const Network b = build_benes(n);
    auto phi = [m](Line x) { return reverse_bits(x, m); };
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const Permutation p = gen_random_permutation(n, seed);
      const auto plan = looping_route(b, p.relabeled(phi));
      const auto dir = first_stage_directions(p);
      for (Line i = 0; i < n; ++i) {
        const Line after = plan.paths[phi(i)][1].line;
        ASSERT_EQ(dir[i], static_cast<int>(after >> (m - 1))) << p.to_string() << " input " << i;
      }
    }
  }
}

TEST(CompatibilityMatching, WorkedExample) {
  const auto a = compatibility_matching(kExample, 4);
  ASSERT_EQ(a.pairs.size(), 3u);
  std::vector<Line> left, right;
  for (auto [x, y] : a.pairs) {
    left.push_back(x);
    right.push_back(y);
  }
  std::sort(right.begin(), right.end());
  EXPECT_EQ(left, (std::vector<Line>{0, 1, 3}));
  EXPECT_EQ(right, (std::vector<Line>{4, 5, 7}));
  EXPECT_EQ(a.pairs, sorted_partners(kExample, 4));
  EXPECT_TRUE(compatibility_matching(Permutation::identity(8), 4).pairs.empty());
}

TEST(CompatibilityMatching, AgreesWithRouterExhaustively) {
  for (std::size_t n : {4u, 8u}) {
    for (std::size_t k = 1; k <= n / 2; k *= 2) {
      enumerate_k_bounded(n, k, [&](const Permutation& p) {
        ASSERT_EQ(compatibility_matching(p, k).pairs, sorted_partners(p, k)) << p.to_string() << " k=" << k;
      });
    }
  }
}

TEST(CompatibilityMatching, AgreesWithRouterSampled) {
  for (std::size_t n : {16u, 32u, 64u}) {
    for (std::size_t k = 1; k <= n / 2; k *= 2) {
      for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const Permutation p = gen_random_k_bounded(n, k, seed);
        ASSERT_EQ(compatibility_matching(p, k).pairs, sorted_partners(p, k)) << p.to_string() << " k=" << k;
      }
    }
  }
}

TEST(LinkBalance, IdentityCountsNothing) {
  const auto r = check_link_balance(Permutation::identity(16), 4);
  EXPECT_TRUE(r.holds);
  EXPECT_EQ(r.stages.size(), 2u);
  for (const auto& st : r.stages) {
    for (const auto& c : st.bands) EXPECT_EQ(c, LinkCounts{});
  }
}

TEST(LinkBalance, WholesaleSwapSplitsEvenly) {
  const auto r = check_link_balance(gen_pi1(16, 2), 2);
  EXPECT_TRUE(r.holds);
  ASSERT_EQ(r.stages.size(), 1u);
  for (std::size_t b = 0; b < 8; ++b) {
    const auto& c = r.stages[0].bands[b];
    if (b % 2 == 0) {
      EXPECT_EQ(c.down_top, 1u);
      EXPECT_EQ(c.down_bottom, 1u);
    } else {
      EXPECT_EQ(c.up_top, 1u);
      EXPECT_EQ(c.up_bottom, 1u);
    }
  }
}

TEST(LinkBalance, HoldsExhaustivelyForEight) {
  for (std::size_t k : {1u, 2u, 4u}) {
    enumerate_k_bounded(8, k, [&](const Permutation& p) { ASSERT_TRUE(check_link_balance(p, k).holds) << p.to_string(); });
  }
}

TEST(Dot, CompatibilityCrossEdgesDashed) {
  const std::string dot = to_dot(build_compatibility_graph(kExample, 4));
  EXPECT_NE(dot.find("dashed"), std::string::npos);
  EXPECT_EQ(dot, to_dot(build_compatibility_graph(kExample, 4)));
  EXPECT_NE(to_dot(build_permutation_graph(kExample)).find("graph"), std::string::npos);
}
