// Copyright 2026 The lamprate Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "core/group.hpp"

#include <optional>
#include <shared_mutex>
#include <span>
#include <unordered_map>
#include <vector>

namespace lamprate {

/// True iff target lies in the integer span of rows (all vectors of equal
/// dimension). Decided exactly by integer row echelon reduction.
bool integer_span_contains(std::vector<std::vector<Coord>> rows, std::vector<Coord> target);

/// Z^rank x Z/m_1 x ... x Z/m_q with a weighted generating set of integer
/// vectors. d(e, z) is found by A* over the lattice with an admissible
/// heuristic (each step of length l(s) moves at most |s|_inf in L-infinity
/// and |s|_1 in L1 on the free coordinates) and memoized by translation
/// invariance. Rank-1 lattices whose metric is provably r1*|z| skip the search.
class LatticeBackend final : public GroupBackend {
public:
  LatticeBackend(std::size_t rank, std::vector<Coord> torsion,
                 const std::vector<GeneratorInput> &generators, SearchLimits limits);

  BackendKind kind() const noexcept override { return BackendKind::kLattice; }
  std::string describe() const override;

  GroupElement identity() const override;
  void multiply_in_place(GroupElement &x, const GroupElement &y) const override;
  GroupElement inverse(const GroupElement &x) const override;
  void validate(const GroupElement &x) const override;
  GroupElement parse(std::string_view text) const override;
  std::string format(const GroupElement &x) const override;
  Length norm(const GroupElement &z) const override;

  std::size_t rank() const noexcept { return rank_; }
  std::span<const Coord> torsion() const noexcept { return torsion_; }
  std::size_t dimension() const noexcept { return rank_ + torsion_.size(); }

  /// Rank one, no torsion: the group is Z.
  bool is_integers() const noexcept { return rank_ == 1 && torsion_.empty(); }
  /// Set when d(0, z) = r1 * |z| is certified from the generator table:
  /// +-1 has length r1 and every l(s) >= |s| * r1.
  bool certified_linear() const noexcept { return linear_; }

  /// Exact membership of target in the subgroup generated by elements.
  bool subgroup_contains(std::span<const GroupElement> elements, const GroupElement &target) const;
  /// <elements> == G.
  bool generates(std::span<const GroupElement> elements) const;

  /// Uncached A* distance, exposed for tests.
  Length search_norm(const GroupElement &z) const;

private:
  void canonicalize(GroupElement &x) const;

  std::size_t rank_;
  std::vector<Coord> torsion_;
  bool linear_ = false;
  // Heuristic slopes as (ticks, moves): minimal l(s)/|s|_inf and l(s)/|s|_1.
  std::int64_t inf_ticks_ = 0, inf_moves_ = 1;
  std::int64_t l1_ticks_ = 0, l1_moves_ = 1;

  mutable std::shared_mutex memo_mutex_;
  mutable std::unordered_map<GroupElement, Length, GroupElementHash> memo_;
};

} // namespace lamprate
