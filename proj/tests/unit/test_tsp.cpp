// Copyright 2026 The lamprate Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/errors.hpp"
#include "core/tsp.hpp"
#include "unit/oracles.hpp"

#include <gtest/gtest.h>

namespace lamprate {
namespace {

using testing::brute_force_tour;
using testing::random_element;
using testing::random_length;

std::vector<GroupElement> random_support(const GroupBackend &b, CounterRng &rng, std::size_t max_points,
                                         std::size_t radius) {
  std::vector<GroupElement> pts;
  const std::size_t k = rng.below(max_points + 1);
  for (std::size_t i = 0; i < k; ++i)
    pts.push_back(random_element(b, rng, radius));
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

BackendPtr random_backend(int kind, CounterRng &rng) {
  switch (kind) {
  case 0:
    return make_free_group({random_length(rng), random_length(rng)});
  case 1:
    return make_free_product_c2({random_length(rng), random_length(rng)});
  default:
    return make_lattice(1, {}, {{"1", random_length(rng), {}}, {"2", random_length(rng), {}}, {"3", random_length(rng), {}}});
  }
}

TEST(Tsp, WorkedExamples) {
  auto z = make_lattice(1, {}, {{"1", Rational(1), {}}});
  const std::vector<GroupElement> supp{z->parse("-1")};
  for (auto strategy : {TspStrategy::kAuto, TspStrategy::kExact, TspStrategy::kHeuristic})
    EXPECT_EQ(solve_tsp(*z, supp, z->parse("2"), strategy).value, Length(4));
  EXPECT_EQ(tsp_exact_dp(*z, supp, z->parse("2")).value, Length(4));
  EXPECT_EQ(tsp_exact_line(*z, supp, z->parse("2")).mode, TspMode::kExactLine);

  auto f2 = make_free_group({Rational(1), Rational(2)});
  const GroupElement target = f2->parse("abA");
  const auto empty = solve_tsp(*f2, {}, target, TspStrategy::kAuto);
  EXPECT_EQ(empty.value, f2->norm(target));
  EXPECT_TRUE(empty.order.empty());
}

TEST(Tsp, ExactDpMatchesBruteForce) {
  CounterRng rng(31, 0);
  for (int kind = 0; kind < 3; ++kind) {
    for (int i = 0; i < 40; ++i) {
      auto b = random_backend(kind, rng);
      const auto supp = random_support(*b, rng, 6, 5);
      const GroupElement target = random_element(*b, rng, 5);
      const TspResult dp = tsp_exact_dp(*b, supp, target);
      EXPECT_EQ(dp.value.ticks(), brute_force_tour(*b, supp, target)) << b->describe();
      EXPECT_EQ(dp.value, tsp_bruteforce_oracle(*b, supp, target));
      EXPECT_EQ(tour_length(*b, dp.order, target), dp.value);
      EXPECT_EQ(dp.order.size(), supp.size());
    }
  }
}

TEST(Tsp, TreeClosedFormMatchesDp) {
  CounterRng rng(32, 0);
  for (int i = 0; i < 60; ++i) {
    auto b = i % 2 ? make_free_group({random_length(rng), random_length(rng), random_length(rng)})
                   : make_free_product_c2({random_length(rng), random_length(rng), random_length(rng)});
    const auto supp = random_support(*b, rng, 10, 6);
    const GroupElement target = random_element(*b, rng, 6);
    const TspResult tree = tsp_exact_tree(*b, supp, target);
    EXPECT_EQ(tree.value, tsp_exact_dp(*b, supp, target).value) << b->describe();
    EXPECT_EQ(tree.mode, TspMode::kExactTree);
    EXPECT_EQ(tour_length(*b, tree.order, target), tree.value);
  }
}

TEST(Tsp, LineClosedFormMatchesDp) {
  CounterRng rng(33, 0);
  auto z = make_lattice(1, {}, {{"1", Rational(1), {}}, {"2", Rational(3), {}}, {"3", Rational(5), {}}});
  for (int i = 0; i < 100; ++i) {
    std::vector<GroupElement> supp;
    const std::size_t k = rng.below(9);
    for (std::size_t j = 0; j < k; ++j)
      supp.push_back(GroupElement{static_cast<Coord>(rng.below(31)) - 15});
    std::sort(supp.begin(), supp.end());
    supp.erase(std::unique(supp.begin(), supp.end()), supp.end());
    const GroupElement target{static_cast<Coord>(rng.below(31)) - 15};
    const TspResult line = tsp_exact_line(*z, supp, target);
    EXPECT_EQ(line.value, tsp_exact_dp(*z, supp, target).value);
    EXPECT_EQ(tour_length(*z, line.order, target), line.value);
  }
}

TEST(Tsp, LineRequiresCertifiedMetric) {
  auto z = make_lattice(1, {}, {{"1", Rational(1), {}}, {"2", Rational(3, 2), {}}});
  EXPECT_THROW(tsp_exact_line(*z, {}, z->parse("3")), UsageError);
}

TEST(Tsp, HeuristicIsAnUpperBound) {
  CounterRng rng(34, 0);
  for (int kind = 0; kind < 3; ++kind) {
    for (int i = 0; i < 30; ++i) {
      auto b = random_backend(kind, rng);
      const auto supp = random_support(*b, rng, 9, 6);
      const GroupElement target = random_element(*b, rng, 6);
      const TspResult h = tsp_heuristic(*b, supp, target);
      EXPECT_GE(h.value, tsp_exact_dp(*b, supp, target).value);
      EXPECT_EQ(tour_length(*b, h.order, target), h.value);
      EXPECT_FALSE(h.exact());
    }
  }
}

TEST(Tsp, CapsAndDispatch) {
  auto z = make_lattice(1, {}, {{"1", Rational(1), {}}, {"2", Rational(3, 2), {}}});
  std::vector<GroupElement> supp;
  for (Coord i = 1; i <= 6; ++i)
    supp.push_back(GroupElement{3 * i});
  EXPECT_THROW(tsp_exact_dp(*z, supp, z->identity(), 5), CapExceededError);
  EXPECT_THROW(solve_tsp(*z, supp, z->identity(), TspStrategy::kExact, 5), CapExceededError);
  EXPECT_EQ(solve_tsp(*z, supp, z->identity(), TspStrategy::kAuto, 5).mode, TspMode::kHeuristic);
  EXPECT_EQ(solve_tsp(*z, supp, z->identity(), TspStrategy::kAuto, 6).mode, TspMode::kExactDp);
  EXPECT_THROW(solve_tsp(*z, supp, z->identity(), TspStrategy::kNone), UsageError);

  auto f2 = make_free_group({Rational(1), Rational(1)});
  EXPECT_EQ(solve_tsp(*f2, {}, f2->parse("a"), TspStrategy::kAuto).mode, TspMode::kExactTree);
  auto lin = make_lattice(1, {}, {{"1", Rational(1), {}}});
  EXPECT_EQ(solve_tsp(*lin, {}, lin->parse("3"), TspStrategy::kAuto).mode, TspMode::kExactLine);
}

TEST(Tsp, ModeNamesRoundTrip) {
  for (auto m : {TspMode::kExactDp, TspMode::kExactTree, TspMode::kExactLine, TspMode::kHeuristic})
    EXPECT_EQ(parse_tsp_mode(to_string(m)), m);
  for (auto s : {TspStrategy::kAuto, TspStrategy::kExact, TspStrategy::kHeuristic, TspStrategy::kNone})
    EXPECT_EQ(parse_tsp_strategy(to_string(s)), s);
  EXPECT_THROW(parse_tsp_strategy("fastest"), Error);
}

} // namespace
} // namespace lamprate
