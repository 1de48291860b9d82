// Copyright 2026 The lamprate Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "core/group.hpp"
#include "core/tsp.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

namespace lamprate {

using LampState = std::int32_t;

/// A finitely supported lamp configuration G -> Z/rZ. Only nonzero states are
/// stored, so support_size() is |supp(eta)|.
class Configuration {
public:
  explicit Configuration(LampState modulus = 2);

  LampState modulus() const noexcept { return modulus_; }
  std::size_t support_size() const noexcept { return lamps_.size(); }
  bool empty() const noexcept { return lamps_.empty(); }

  LampState state(const GroupElement &x) const;
  bool lit(const GroupElement &x) const { return lamps_.contains(x); }

  /// eta(x) <- eta(x) + delta mod r; a lamp reaching 0 is evicted.
  void add(const GroupElement &x, LampState delta);

  const std::unordered_map<GroupElement, LampState, GroupElementHash> &lamps() const noexcept { return lamps_; }
  /// Support points in canonical-key order.
  std::vector<GroupElement> support() const;

  friend bool operator==(const Configuration &a, const Configuration &b) {
    return a.modulus_ == b.modulus_ && a.lamps_ == b.lamps_;
  }

private:
  LampState modulus_;
  std::unordered_map<GroupElement, LampState, GroupElementHash> lamps_;
};

/// (eta, x), an element of Z_r wr G.
struct WreathElement {
  Configuration lamps;
  GroupElement position;

  friend bool operator==(const WreathElement &, const WreathElement &) = default;
};

struct LengthParams {
  Rational lamp_cost{0}; ///< c_L >= 0, charged per lit lamp
};

/// Value of l(eta, x) = d_TS(eta, x) + c_L |supp(eta)|.
struct WreathLength {
  Length tsp;
  std::size_t support = 0;
  Rational value;
  TspMode mode = TspMode::kExactDp;
  bool exact = true;
};

using TspOracle = std::function<TspResult(std::span<const GroupElement>, const GroupElement &)>;

WreathElement wreath_identity(const GroupBackend &backend, LampState modulus = 2);

/// The lamp element 1_x with state s at x.
Configuration single_lamp(const GroupElement &x, LampState modulus = 2, LampState state = 1);

/// (x eta)(w) = eta(x^-1 w).
Configuration translate(const GroupBackend &backend, const GroupElement &x, const Configuration &eta);

/// (eta1, x)(eta2, y) = (eta1 + x eta2, xy) with componentwise addition mod r.
WreathElement wreath_multiply(const GroupBackend &backend, const WreathElement &u, const WreathElement &v);

/// u^-1 = (-(x^-1 eta), x^-1).
WreathElement wreath_inverse(const GroupBackend &backend, const WreathElement &u);

/// l(u) with the tour supplied by the oracle; exactness follows the tour.
WreathLength length(const GroupBackend &backend, const WreathElement &u, const LengthParams &params,
                    const TspOracle &tsp);

/// Oracle bound to solve_tsp with the given strategy.
TspOracle make_tsp_oracle(const GroupBackend &backend, TspStrategy strategy, std::size_t cap = kDefaultDpCap);

/// Log form: {"position": "...", "lamps": [["elem", state], ...]} with lamps
/// sorted by canonical key.
std::string serialize(const GroupBackend &backend, const WreathElement &u);

} // namespace lamprate
