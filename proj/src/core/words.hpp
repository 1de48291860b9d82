// Copyright 2026 The lamprate Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "core/group.hpp"

#include <optional>
#include <vector>

namespace lamprate {

/// Free products of infinite cyclic and order-two factors, each factor
/// generated by one basis letter. The Cayley graph with respect to the basis
/// letters (and inverses) is a tree, so the reduced word is a geodesic and
/// d(e, z) is the sum of its letter lengths.
///
/// Text syntax: letters a, b, c, d, f, g, ... ('e' is reserved for the
/// identity); an uppercase letter is the inverse of a free letter.
class WordBackend final : public GroupBackend {
public:
  WordBackend(BackendKind kind, std::vector<bool> involution, const std::vector<Rational> &lengths,
              SearchLimits limits);

  BackendKind kind() const noexcept override { return kind_; }
  std::string describe() const override;

  GroupElement identity() const override { return {}; }
  void multiply_in_place(GroupElement &x, const GroupElement &y) const override;
  GroupElement inverse(const GroupElement &x) const override;
  void validate(const GroupElement &x) const override;
  GroupElement parse(std::string_view text) const override;
  std::string format(const GroupElement &x) const override;
  Length norm(const GroupElement &z) const override;
  bool cayley_graph_is_tree() const noexcept override { return true; }

  std::size_t rank() const noexcept { return involution_.size(); }
  bool is_involution(std::size_t letter_index) const { return involution_.at(letter_index); }
  /// Length of a single letter (+-i, 1-based).
  Length letter_weight(Coord letter) const { return letter_weight_[static_cast<std::size_t>(letter < 0 ? -letter : letter) - 1]; }

  static char letter_char(std::size_t index);

private:
  BackendKind kind_;
  std::vector<bool> involution_;
  std::vector<Length> letter_weight_;
};

/// For Z2*Z2 = <a,b>: the index-two subgroup {(ab)^z} identified with Z.
/// Returns z for rotations, nullopt for reflections (odd-length words).
std::optional<std::int64_t> dihedral_rotation(const GroupElement &x);
/// Reflection parameter u with x = (ab)^u a, nullopt for rotations.
std::optional<std::int64_t> dihedral_reflection(const GroupElement &x);

} // namespace lamprate
