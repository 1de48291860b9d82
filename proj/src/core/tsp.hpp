// Copyright 2026 The lamprate Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "core/group.hpp"

#include <span>
#include <string_view>
#include <vector>

namespace lamprate {

/// How a travelling-salesman value was obtained.
enum class TspMode { kExactDp, kExactTree, kExactLine, kHeuristic };

/// What the caller asks for. kNone skips d_TS entirely.
enum class TspStrategy { kAuto, kExact, kHeuristic, kNone };

std::string_view to_string(TspMode mode);
std::string_view to_string(TspStrategy strategy);
TspMode parse_tsp_mode(std::string_view text);
TspStrategy parse_tsp_strategy(std::string_view text);

/// d_TS(eta, x): the shortest tour on G from e to target visiting every
/// support point. order lists the support points in first-visit order.
struct TspResult {
  Length value;
  std::vector<GroupElement> order;
  TspMode mode = TspMode::kExactDp;

  bool exact() const noexcept { return mode != TspMode::kHeuristic; }
};

inline constexpr std::size_t kDefaultDpCap = 18;
inline constexpr std::size_t kBruteForceCap = 9;

/// Held-Karp over (visited subset, last point) with start e and forced end
/// target. Throws CapExceededError when |supp| > cap.
TspResult tsp_exact_dp(const GroupBackend &backend, std::span<const GroupElement> supp,
                       const GroupElement &target, std::size_t cap = kDefaultDpCap);

/// Closed form on tree Cayley graphs: 2 W - d(e, target), W the weight of the
/// minimal subtree spanning e, target and the support.
TspResult tsp_exact_tree(const GroupBackend &backend, std::span<const GroupElement> supp,
                         const GroupElement &target);

/// Closed form on Z with a certified linear metric d(x, y) = r1 |x - y|:
/// the better of sweeping left first or right first.
TspResult tsp_exact_line(const GroupBackend &backend, std::span<const GroupElement> supp,
                         const GroupElement &target);

/// Nearest neighbour from e, then 2-opt with both endpoints pinned. Always an
/// upper bound on the exact value.
TspResult tsp_heuristic(const GroupBackend &backend, std::span<const GroupElement> supp,
                        const GroupElement &target);

/// Minimum over all |supp|! visit orders. Test oracle; |supp| <= 9.
Length tsp_bruteforce_oracle(const GroupBackend &backend, std::span<const GroupElement> supp,
                             const GroupElement &target);

/// Sum of geodesic legs e -> order... -> target.
Length tour_length(const GroupBackend &backend, std::span<const GroupElement> order,
                   const GroupElement &target);

/// Picks a solver. kAuto: tree, then line, then DP up to cap, then heuristic.
/// kExact: the same without the heuristic fallback. kNone is rejected.
TspResult solve_tsp(const GroupBackend &backend, std::span<const GroupElement> supp,
                    const GroupElement &target, TspStrategy strategy, std::size_t cap = kDefaultDpCap);

} // namespace lamprate
