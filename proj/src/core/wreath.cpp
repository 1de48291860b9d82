// Copyright 2026 The lamprate Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/wreath.hpp"

#include "core/errors.hpp"

#include <json.hpp>

#include <algorithm>

namespace lamprate {

Configuration::Configuration(LampState modulus) : modulus_(modulus) {
  if (modulus < 2)
    throw UsageError("lamp modulus must be >= 2");
}

LampState Configuration::state(const GroupElement &x) const {
  auto it = lamps_.find(x);
  return it == lamps_.end() ? 0 : it->second;
}

void Configuration::add(const GroupElement &x, LampState delta) {
  delta %= modulus_;
  if (delta < 0)
    delta += modulus_;
  if (delta == 0)
    return;
  auto [it, inserted] = lamps_.try_emplace(x, delta);
  if (inserted)
    return;
  it->second = (it->second + delta) % modulus_;
  if (it->second == 0)
    lamps_.erase(it);
}

std::vector<GroupElement> Configuration::support() const {
  std::vector<GroupElement> out;
  out.reserve(lamps_.size());
  for (const auto &[x, s] : lamps_)
    out.push_back(x);
  std::sort(out.begin(), out.end());
  return out;
}

WreathElement wreath_identity(const GroupBackend &backend, LampState modulus) {
  return WreathElement{Configuration(modulus), backend.identity()};
}

Configuration single_lamp(const GroupElement &x, LampState modulus, LampState state) {
  Configuration c(modulus);
  c.add(x, state);
  return c;
}

Configuration translate(const GroupBackend &backend, const GroupElement &x, const Configuration &eta) {
  backend.validate(x);
  Configuration out(eta.modulus());
  for (const auto &[w, s] : eta.lamps()) {
    GroupElement moved = x;
    backend.multiply_in_place(moved, w);
    out.add(moved, s);
  }
  return out;
}

WreathElement wreath_multiply(const GroupBackend &backend, const WreathElement &u, const WreathElement &v) {
  if (u.lamps.modulus() != v.lamps.modulus())
    throw UsageError("lamp modulus mismatch: " + std::to_string(u.lamps.modulus()) + " vs " +
                     std::to_string(v.lamps.modulus()));
  WreathElement out{u.lamps, backend.multiply(u.position, v.position)};
  for (const auto &[w, s] : v.lamps.lamps()) {
    GroupElement moved = u.position;
    backend.multiply_in_place(moved, w);
    out.lamps.add(moved, s);
  }
  return out;
}

WreathElement wreath_inverse(const GroupBackend &backend, const WreathElement &u) {
  backend.validate(u.position);
  const GroupElement inv = backend.inverse(u.position);
  Configuration lamps(u.lamps.modulus());
  for (const auto &[w, s] : u.lamps.lamps()) {
    GroupElement moved = inv;
    backend.multiply_in_place(moved, w);
    lamps.add(moved, u.lamps.modulus() - s);
  }
  return WreathElement{std::move(lamps), inv};
}

WreathLength length(const GroupBackend &backend, const WreathElement &u, const LengthParams &params,
                    const TspOracle &tsp) {
  if (params.lamp_cost < 0)
    throw UsageError("lamp-switch cost c_L must be nonnegative");
  const auto supp = u.lamps.support();
  const TspResult tour = tsp(supp, u.position);
  WreathLength out;
  out.tsp = tour.value;
  out.support = supp.size();
  out.mode = tour.mode;
  out.exact = tour.exact();
  out.value = backend.to_rational(tour.value) + params.lamp_cost * static_cast<std::int64_t>(supp.size());
  return out;
}

TspOracle make_tsp_oracle(const GroupBackend &backend, TspStrategy strategy, std::size_t cap) {
  return [&backend, strategy, cap](std::span<const GroupElement> supp, const GroupElement &target) {
    return solve_tsp(backend, supp, target, strategy, cap);
  };
}

std::string serialize(const GroupBackend &backend, const WreathElement &u) {
  nlohmann::json lamps = nlohmann::json::array();
  for (const auto &x : u.lamps.support())
    lamps.push_back(nlohmann::json::array({backend.format(x), u.lamps.state(x)}));
  nlohmann::json doc{{"position", backend.format(u.position)}, {"modulus", u.lamps.modulus()}, {"lamps", lamps}};
  return doc.dump();
}

} // namespace lamprate
