// Copyright 2026 The lamprate Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "core/group.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lamprate {

enum class SigmaCase { kI, kII, kIII, kZI, kZII };

std::string_view to_string(SigmaCase c);
SigmaCase parse_sigma_case(std::string_view text);
bool is_z_case(SigmaCase c);

/// Three generators sigma_1, sigma_2, sigma_3 such that every tour through
/// A = {e, sigma_1, sigma_2, sigma_3} exceeds the direct distance between its
/// endpoints by at least `increment`.
struct SigmaTriple {
  SigmaCase tag = SigmaCase::kI;
  std::array<GroupElement, 3> sigma;
  std::array<std::size_t, 3> generator{}; ///< indices into the backend's generator set
  std::array<Length, 3> length;           ///< l(sigma_k)
  std::optional<Length> epsilon0;         ///< Z cases only
  Length increment;                       ///< r1, or min{eps0, l(s), l(1)} in the Z cases

  /// The four points of A in the order e, sigma_1, sigma_2, sigma_3.
  std::array<GroupElement, 4> points(const GroupBackend &backend) const;
  /// 2 l(sigma_3), the ball radius used by the hitting skeleton.
  Length separation() const { return 2 * length[2]; }
  /// Point labels for reports ("e", "s1", ... or "0", "s", "s^-1", "1").
  std::array<std::string, 4> labels() const;
};

enum class SelectionKind {
  kTriple,           ///< a triple was selected
  kDegenerateLinear, ///< Z with d(x, y) = r1 |x - y|: no acceleration expected
  kRecurrent,        ///< Z2*Z2: every irreducible walk is recurrent
  kNotApplicable,    ///< outside the cases handled (reason in note)
};

std::string_view to_string(SelectionKind kind);

struct SelectionOutcome {
  SelectionKind kind = SelectionKind::kNotApplicable;
  std::optional<SigmaTriple> triple;
  /// Backend on which the triple lives. Differs from the input only when +-1
  /// is a redundant generator of Z and was dropped (the metric is unchanged).
  BackendPtr backend;
  std::string note;
};

/// True iff some {s, s^-1} or pair of involutions in S generates G.
bool has_generating_symmetric_pair(const GroupBackend &backend);

/// Exact membership of target in the subgroup generated by elements, for the
/// roster backends (letter test for words, integer span for lattices).
bool subgroup_contains(const GroupBackend &backend, std::span<const GroupElement> elements,
                       const GroupElement &target);

/// The case distinction. Deterministic: ties are broken by generator index.
SelectionOutcome select_sigmas(const BackendPtr &backend);

/// Maximal eps0 for the Z cases: min over the two distance inequalities of
/// d - (stated bound without eps0). s is the generator value (positive).
/// Throws HypothesisError when the hypotheses fail or the result is <= 0.
Length compute_epsilon0(const GroupBackend &backend, SigmaCase tag, std::int64_t s);

enum class Relation { kEqual, kLessEq, kGreaterEq };

std::string_view to_string(Relation rel);

struct CheckItem {
  std::string name;
  Rational lhs;
  Relation relation = Relation::kEqual;
  Rational rhs;
  Rational slack; ///< rhs - lhs for <=, lhs - rhs for >=, 0 or |lhs - rhs| for =
  bool holds = true;
};

struct CheckReport {
  std::string title;
  std::vector<CheckItem> items;

  bool passed() const;
};

/// Upper bounds on the distances within A and the lower bounds of the case,
/// each item with its slack.
CheckReport verify_distance_bounds(const SigmaTriple &triple, const GroupBackend &backend);

struct PhiRow {
  std::array<int, 4> phi{}; ///< indices into points(): 0 = e, k = sigma_k
  Rational direct;           ///< d(phi(1), phi(4))
  Rational legs;             ///< sum of the three legs
  Rational slack;            ///< legs - direct - increment
};

struct PhiReport {
  std::vector<PhiRow> rows; ///< all 24 injections
  Rational increment;
  Rational min_slack;

  bool passed() const { return min_slack >= 0; }
};

PhiReport verify_phi_inequality(const SigmaTriple &triple, const GroupBackend &backend);

/// c[0] l(sigma_1) + c[1] l(sigma_2) + c[2] l(sigma_3) + c[3] eps0.
struct BoundExpr {
  std::array<int, 4> c{};

  Rational eval(const std::array<Rational, 4> &vars) const;
  std::string describe(SigmaCase table) const;
};

/// One printed row: the visit order and the three printed bound columns.
struct TableRow {
  std::array<int, 4> phi{};
  BoundExpr upper; ///< d(phi(1), phi(4)) <= upper
  BoundExpr right; ///< sum of legs >= right
  BoundExpr diff;  ///< right - upper >= diff
};

/// Printed rows for the case: I and II share one table; III uses its own six
/// rows plus the six rows of the I/II table in which sigma_2 and sigma_3 are
/// not consecutive; Z-I uses the Z table. Z-II has no printed table.
std::vector<TableRow> printed_table(SigmaCase c);

/// Symbolic check of right - upper - diff >= 0 for every admissible length
/// assignment of the case (l1 <= l2 <= l3, l3 = l2 in case III,
/// l(s) < l(1) in case Z-I, eps0 >= 0).
bool symbolic_row_holds(SigmaCase c, const TableRow &row);

struct TableViolation {
  std::string realization;
  std::size_t row = 0;
  std::string column;
  std::string detail;
};

struct TableReport {
  SigmaCase table = SigmaCase::kI;
  std::vector<std::string> realizations;
  std::size_t assignments = 0;
  std::size_t rows_checked = 0;
  std::size_t phi_checked = 0;    ///< injections checked by verify_phi_inequality
  std::size_t bounds_checked = 0; ///< items checked by verify_distance_bounds
  bool symbolic_ok = true;
  bool covers_all_injections = true;
  std::vector<TableViolation> violations;

  bool passed() const { return symbolic_ok && covers_all_injections && violations.empty(); }
};

/// Evaluates every printed row of the table on one realized configuration.
/// mutate_factor != 1 multiplies l(sigma_3) inside the bound expressions
/// (fault injection); distances always come from the backend.
void check_table_rows(const SigmaTriple &triple, const GroupBackend &backend, const std::string &realization,
                      TableReport &report, std::int64_t mutate_factor = 1);

struct TableOptions {
  std::size_t assignments = 100;
  std::uint64_t seed = 1;
  std::int64_t mutate_factor = 1;
};

/// Samples random rational length assignments, realizes the case on every
/// roster backend that supports it and confirms each printed row, the
/// distance bounds and all 24 injections of the tour inequality.
TableReport validate_tables(SigmaCase c, const TableOptions &options = {});

/// The roster backends used to realize a case with the given lengths
/// (l1 <= l2 <= l3, or (l(s), l(1)) and s for the Z cases).
struct Realization {
  std::string name;
  BackendPtr backend;
};

std::vector<Realization> realize_case(SigmaCase c, const std::array<Rational, 3> &lengths, std::int64_t s = 2);

} // namespace lamprate
