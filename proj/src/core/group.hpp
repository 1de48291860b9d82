// Copyright 2026 The lamprate Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "core/rational.hpp"

#include <boost/container/small_vector.hpp>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lamprate {

using Coord = std::int64_t;

/// Canonical element of one of the roster backends.
///
/// Lattice backends store the free coordinates followed by the torsion
/// coordinates reduced into [0, m). Word backends store a reduced word whose
/// letters are +i / -i for the i-th basis letter (1-based); involution letters
/// are always stored positive. Only backends construct canonical values, so
/// equality of the stored data is equality in the group.
class GroupElement {
public:
  using Storage = boost::container::small_vector<Coord, 4>;

  GroupElement() = default;
  explicit GroupElement(Storage data) : data_(std::move(data)) {}
  GroupElement(std::initializer_list<Coord> init) : data_(init) {}

  const Storage &data() const noexcept { return data_; }
  Storage &data() noexcept { return data_; }
  std::size_t size() const noexcept { return data_.size(); }

  friend bool operator==(const GroupElement &, const GroupElement &) = default;
  friend std::strong_ordering operator<=>(const GroupElement &a, const GroupElement &b) {
    return std::lexicographical_compare_three_way(a.data_.begin(), a.data_.end(),
                                                  b.data_.begin(), b.data_.end());
  }

  std::size_t hash() const noexcept;

private:
  Storage data_;
};

struct GroupElementHash {
  std::size_t operator()(const GroupElement &x) const noexcept { return x.hash(); }
};

/// Exact metric length measured in ticks of 1/scale, where scale is the least
/// common denominator of the owning backend's generator lengths. All metric
/// arithmetic (geodesics, tours, inequality slacks) is integer arithmetic on ticks.
class Length {
public:
  constexpr Length() = default;
  constexpr explicit Length(std::int64_t ticks) : ticks_(ticks) {}

  constexpr std::int64_t ticks() const noexcept { return ticks_; }

  constexpr Length &operator+=(Length o) noexcept { ticks_ += o.ticks_; return *this; }
  constexpr Length &operator-=(Length o) noexcept { ticks_ -= o.ticks_; return *this; }
  friend constexpr Length operator+(Length a, Length b) noexcept { return a += b; }
  friend constexpr Length operator-(Length a, Length b) noexcept { return a -= b; }
  friend constexpr Length operator*(std::int64_t k, Length a) noexcept { return Length(k * a.ticks_); }
  friend constexpr auto operator<=>(Length, Length) = default;

private:
  std::int64_t ticks_ = 0;
};

enum class BackendKind { kLattice, kFreeGroup, kFreeProductC2 };

std::string_view to_string(BackendKind kind);

struct SearchLimits {
  /// Maximum states a uniform-cost search may settle before failing.
  std::size_t max_expanded = 1'000'000;
  /// Maximum ball size returned by ball().
  std::size_t max_ball = 1'000'000;
};

struct Generator {
  std::string label;
  GroupElement action;
  Rational length;
  Length weight;
  std::size_t inverse = 0; ///< index of s^-1 inside the set
};

/// A finite symmetric weighted generating set S with lengths l(s) = l(s^-1) > 0.
class GeneratorSet {
public:
  GeneratorSet() = default;

  std::span<const Generator> all() const noexcept { return gens_; }
  const Generator &operator[](std::size_t i) const { return gens_.at(i); }
  std::size_t size() const noexcept { return gens_.size(); }

  /// Common denominator of all lengths; one Length tick is 1/scale.
  std::int64_t scale() const noexcept { return scale_; }
  /// r1, the minimal generator length.
  Length min_weight() const noexcept { return min_weight_; }
  Rational min_length() const noexcept { return Rational(min_weight_.ticks(), scale_); }

  /// Indices sorted by (length, index).
  std::vector<std::size_t> sorted_by_length() const;

private:
  friend class GroupBackend;
  std::vector<Generator> gens_;
  std::int64_t scale_ = 1;
  Length min_weight_;
};

/// Input row for backend construction. Missing inverses are added by the
/// symmetric closure with the same length.
struct GeneratorInput {
  std::string action; ///< element in the backend's text syntax
  Rational length;
  std::string label;  ///< optional; defaults to the action text
};

/// A finitely generated group with a weighted word metric. Instances are
/// immutable after construction and safe for concurrent reads; the only
/// internal mutation is a mutex-guarded memo of d(e, z).
class GroupBackend {
public:
  virtual ~GroupBackend() = default;
  GroupBackend(const GroupBackend &) = delete;
  GroupBackend &operator=(const GroupBackend &) = delete;

  virtual BackendKind kind() const noexcept = 0;
  virtual std::string describe() const = 0;

  virtual GroupElement identity() const = 0;
  bool is_identity(const GroupElement &x) const { return x == identity(); }

  /// Canonical product xy. Validates both operands.
  GroupElement multiply(const GroupElement &x, const GroupElement &y) const;
  /// x <- xy without validation; the simulation hot path.
  virtual void multiply_in_place(GroupElement &x, const GroupElement &y) const = 0;
  virtual GroupElement inverse(const GroupElement &x) const = 0;

  /// Throws UsageError if x is not a canonical element of this backend.
  virtual void validate(const GroupElement &x) const = 0;

  virtual GroupElement parse(std::string_view text) const = 0;
  virtual std::string format(const GroupElement &x) const = 0;

  /// Exact d(e, z).
  virtual Length norm(const GroupElement &z) const = 0;
  /// Exact d(x, y) = d(e, x^-1 y).
  Length distance(const GroupElement &x, const GroupElement &y) const;

  virtual bool cayley_graph_is_tree() const noexcept { return false; }

  const GeneratorSet &generators() const noexcept { return gens_; }
  const SearchLimits &limits() const noexcept { return limits_; }
  Length r1() const noexcept { return gens_.min_weight(); }

  /// Converts a rational length (must be a multiple of 1/scale) to ticks.
  Length to_length(const Rational &r) const;
  Rational to_rational(Length d) const { return Rational(d.ticks(), gens_.scale()); }
  double to_double(Length d) const {
    return static_cast<double>(d.ticks()) / static_cast<double>(gens_.scale());
  }

protected:
  explicit GroupBackend(SearchLimits limits) : limits_(limits) {}

  /// Parses, validates and symmetrically closes the generator inputs.
  void install_generators(const std::vector<GeneratorInput> &inputs);

private:
  GeneratorSet gens_;
  SearchLimits limits_;
};

using BackendPtr = std::shared_ptr<const GroupBackend>;

/// Z^rank x Z/m_1 x ... x Z/m_q with integer-vector generators.
BackendPtr make_lattice(std::size_t rank, std::vector<Coord> torsion,
                        const std::vector<GeneratorInput> &generators, SearchLimits limits = {});

/// Free group of the given rank on letters a, b, c, d, f, ... with
/// l(x) = l(x^-1) = lengths[i].
BackendPtr make_free_group(const std::vector<Rational> &lengths, SearchLimits limits = {});

/// Free product of rank copies of Z/2 (rank 2 is Z2*Z2 = <a,b | a^2=b^2=e>).
BackendPtr make_free_product_c2(const std::vector<Rational> &lengths, SearchLimits limits = {});

/// The exact ball { y : d(center, y) <= radius } by bounded uniform-cost
/// expansion. Throws CapExceededError past limits().max_ball elements.
std::vector<GroupElement> ball(const GroupBackend &backend, const GroupElement &center, Length radius);

/// Symmetric matrix of exact pairwise distances (row-major, n x n).
std::vector<Length> pairwise_distances(const GroupBackend &backend,
                                       std::span<const GroupElement> points);

/// Backend-independent uniform-cost search for d(x, y) over the Cayley
/// graph. Used as a test oracle against the closed forms.
Length search_distance(const GroupBackend &backend, const GroupElement &x,
                       const GroupElement &y);

} // namespace lamprate
