// Copyright 2026 The lamprate Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/case_analysis.hpp"
#include "core/errors.hpp"
#include "core/tsp.hpp"

#include <gtest/gtest.h>

#include <algorithm>

namespace lamprate {
namespace {

GeneratorInput gen(std::string action, Rational length) { return {std::move(action), length, {}}; }

BackendPtr weighted_z(Rational l1, std::string s, Rational ls) {
  return make_lattice(1, {}, {gen("1", l1), gen(std::move(s), ls)});
}

TEST(Selection, RosterCases) {
  struct Row {
    BackendPtr backend;
    SelectionKind kind;
    std::optional<SigmaCase> tag;
  };
  const Rational one(1);
  const std::vector<Row> rows{
      {make_free_group({one, one}), SelectionKind::kTriple, SigmaCase::kI},
      {make_lattice(2, {}, {gen("(1,0)", one), gen("(0,1)", one)}), SelectionKind::kTriple, SigmaCase::kI},
      {make_free_product_c2({one, one, one}), SelectionKind::kTriple, SigmaCase::kII},
      {make_lattice(3, {4}, {gen("(0,0,0,2)", one), gen("(0,0,0,1)", Rational(2)), gen("(1,0,0,0)", Rational(2)),
                             gen("(0,1,0,0)", Rational(2)), gen("(0,0,1,0)", Rational(2))}),
       SelectionKind::kTriple, SigmaCase::kIII},
      {weighted_z(one, "2", Rational(3, 2)), SelectionKind::kTriple, SigmaCase::kZII},
      {weighted_z(one, "2", Rational(1, 2)), SelectionKind::kTriple, SigmaCase::kZI},
      {make_lattice(1, {}, {gen("1", one), gen("2", Rational(3)), gen("3", Rational(5))}),
       SelectionKind::kDegenerateLinear, std::nullopt},
      {make_free_product_c2({one, one}), SelectionKind::kRecurrent, std::nullopt},
  };
  for (const auto &row : rows) {
    const SelectionOutcome out = select_sigmas(row.backend);
    EXPECT_EQ(out.kind, row.kind) << row.backend->describe();
    if (out.kind != SelectionKind::kTriple)
      EXPECT_FALSE(out.note.empty());
    if (row.tag) {
      ASSERT_TRUE(out.triple);
      EXPECT_EQ(out.triple->tag, *row.tag) << row.backend->describe();
      EXPECT_TRUE(verify_distance_bounds(*out.triple, *out.backend).passed());
      EXPECT_TRUE(verify_phi_inequality(*out.triple, *out.backend).passed());
    }
  }
}

TEST(Selection, IsDeterministic) {
  auto b = make_free_group({Rational(2), Rational(1), Rational(3)});
  const auto a = select_sigmas(b), c = select_sigmas(b);
  ASSERT_TRUE(a.triple && c.triple);
  EXPECT_EQ(a.triple->sigma, c.triple->sigma);
  EXPECT_EQ(a.triple->increment, b->r1());
}

TEST(Selection, GeneratingPairsAndMembership) {
  const Rational one(1);
  EXPECT_FALSE(has_generating_symmetric_pair(*make_free_group({one, one})));
  EXPECT_TRUE(has_generating_symmetric_pair(*make_lattice(1, {}, {gen("1", one)})));
  EXPECT_TRUE(has_generating_symmetric_pair(*make_free_product_c2({one, one})));
  EXPECT_FALSE(has_generating_symmetric_pair(*make_lattice(1, {}, {gen("2", one), gen("3", one)})));

  auto z = make_lattice(1, {}, {gen("1", one)});
  const std::vector<GroupElement> twos{z->parse("2")};
  EXPECT_TRUE(subgroup_contains(*z, twos, z->parse("-4")));
  EXPECT_FALSE(subgroup_contains(*z, twos, z->parse("3")));
  auto f2 = make_free_group({one, one});
  const std::vector<GroupElement> as{f2->parse("a")};
  EXPECT_TRUE(subgroup_contains(*f2, as, f2->parse("AAA")));
  EXPECT_FALSE(subgroup_contains(*f2, as, f2->parse("ab")));
}

TEST(Epsilon0, IsMaximal) {
  for (const auto &[b, tag] : {std::pair{weighted_z(Rational(1), "2", Rational(3, 2)), SigmaCase::kZII},
                               std::pair{weighted_z(Rational(1), "2", Rational(1, 2)), SigmaCase::kZI},
                               std::pair{weighted_z(Rational(1), "3", Rational(5, 2)), SigmaCase::kZII}}) {
    const auto sel = select_sigmas(b);
    ASSERT_TRUE(sel.triple && sel.triple->epsilon0);
    EXPECT_EQ(sel.triple->tag, tag);
    EXPECT_TRUE(verify_distance_bounds(*sel.triple, *sel.backend).passed());
    SigmaTriple bumped = *sel.triple;
    bumped.epsilon0 = *bumped.epsilon0 + Length(1);
    EXPECT_FALSE(verify_distance_bounds(bumped, *sel.backend).passed()) << b->describe();
  }
}

TEST(Epsilon0, HypothesisFailuresAreErrors) {
  auto bad = weighted_z(Rational(1), "2", Rational(2));
  EXPECT_THROW(compute_epsilon0(*bad, SigmaCase::kZII, 2), HypothesisError);
  EXPECT_THROW(compute_epsilon0(*bad, SigmaCase::kZI, 2), HypothesisError);
  EXPECT_THROW(compute_epsilon0(*bad, SigmaCase::kZII, 1), HypothesisError);
  EXPECT_THROW(compute_epsilon0(*bad, SigmaCase::kZII, 5), HypothesisError);
}

TEST(Phi, CoversAllInjections) {
  auto b = make_free_group({Rational(1), Rational(2)});
  const auto sel = select_sigmas(b);
  ASSERT_TRUE(sel.triple);
  const PhiReport rep = verify_phi_inequality(*sel.triple, *b);
  ASSERT_EQ(rep.rows.size(), 24u);
  std::vector<std::array<int, 4>> seen;
  for (const auto &row : rep.rows) {
    std::array<int, 4> sorted = row.phi;
    std::sort(sorted.begin(), sorted.end());
    EXPECT_EQ(sorted, (std::array<int, 4>{0, 1, 2, 3}));
    seen.push_back(row.phi);
    EXPECT_GE(row.slack, rep.min_slack);
  }
  std::sort(seen.begin(), seen.end());
  EXPECT_EQ(std::unique(seen.begin(), seen.end()), seen.end());
}

// Tours through the four points checked against an exact solver with fixed
// endpoints: legs >= direct + increment for every order.
TEST(Phi, AgreesWithTspSolver) {
  auto b = make_lattice(2, {}, {gen("(1,0)", Rational(1)), gen("(0,1)", Rational(3, 2))});
  const auto sel = select_sigmas(b);
  ASSERT_TRUE(sel.triple);
  const auto pts = sel.triple->points(*b);
  for (int first = 0; first < 4; ++first)
    for (int last = 0; last < 4; ++last) {
      if (first == last)
        continue;
      std::vector<GroupElement> middle;
      for (int k = 0; k < 4; ++k)
        if (k != first && k != last)
          middle.push_back(b->multiply(b->inverse(pts[first]), pts[k]));
      const GroupElement target = b->multiply(b->inverse(pts[first]), pts[last]);
      const Length best = tsp_exact_dp(*b, middle, target).value;
      EXPECT_GE(best, b->norm(target) + sel.triple->increment);
    }
}

TEST(Tables, Sizes) {
  EXPECT_EQ(printed_table(SigmaCase::kI).size(), 12u);
  EXPECT_EQ(printed_table(SigmaCase::kII).size(), 12u);
  EXPECT_EQ(printed_table(SigmaCase::kIII).size(), 12u);
  EXPECT_EQ(printed_table(SigmaCase::kZI).size(), 12u);
  EXPECT_TRUE(printed_table(SigmaCase::kZII).empty());
}

TEST(Tables, RowsHoldSymbolically) {
  for (SigmaCase c : {SigmaCase::kI, SigmaCase::kII, SigmaCase::kIII, SigmaCase::kZI})
    for (const auto &row : printed_table(c))
      EXPECT_TRUE(symbolic_row_holds(c, row)) << to_string(c) << " " << row.upper.describe(c);
}

TEST(Tables, SymbolicCheckRejectsAWeakenedRow) {
  auto row = printed_table(SigmaCase::kI).front();
  row.diff.c[0] += 5;
  EXPECT_FALSE(symbolic_row_holds(SigmaCase::kI, row));
}

TEST(Tables, ValidateOnRandomAssignments) {
  for (SigmaCase c : {SigmaCase::kI, SigmaCase::kII, SigmaCase::kIII, SigmaCase::kZI, SigmaCase::kZII}) {
    TableOptions opt;
    opt.assignments = 12;
    opt.seed = 4;
    const TableReport rep = validate_tables(c, opt);
    EXPECT_TRUE(rep.passed()) << to_string(c);
    EXPECT_EQ(rep.assignments, 12u);
    EXPECT_FALSE(rep.realizations.empty());
    EXPECT_GT(rep.phi_checked, 0u);
    EXPECT_GT(rep.bounds_checked, 0u);
  }
}

TEST(Tables, FaultInjectionIsCaught) {
  TableOptions opt;
  opt.assignments = 5;
  opt.mutate_factor = 3;
  const TableReport rep = validate_tables(SigmaCase::kI, opt);
  EXPECT_FALSE(rep.passed());
  ASSERT_FALSE(rep.violations.empty());
  EXPECT_GT(rep.violations.front().row, 0u);
  EXPECT_FALSE(rep.violations.front().column.empty());
}

TEST(Tables, RealizationsUseRequestedLengths) {
  const std::array<Rational, 3> lengths{Rational(1), Rational(3, 2), Rational(2)};
  const auto reals = realize_case(SigmaCase::kI, lengths);
  ASSERT_FALSE(reals.empty());
  for (const auto &r : reals) {
    const auto sel = select_sigmas(r.backend);
    ASSERT_TRUE(sel.triple) << r.name;
    EXPECT_TRUE(verify_phi_inequality(*sel.triple, *sel.backend).passed()) << r.name;
  }
}

TEST(Names, RoundTrip) {
  for (SigmaCase c : {SigmaCase::kI, SigmaCase::kII, SigmaCase::kIII, SigmaCase::kZI, SigmaCase::kZII}) {
    EXPECT_EQ(parse_sigma_case(to_string(c)), c);
    EXPECT_EQ(is_z_case(c), c == SigmaCase::kZI || c == SigmaCase::kZII);
  }
}

} // namespace
} // namespace lamprate
