// Copyright 2026 The lamprate Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/group.hpp"

#include "core/errors.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <queue>
#include <unordered_map>
#include <unordered_set>

namespace lamprate {

std::size_t GroupElement::hash() const noexcept {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ data_.size();
  for (Coord c : data_) {
    std::uint64_t v = static_cast<std::uint64_t>(c) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h ^= v;
    h *= 0xff51afd7ed558ccdULL;
  }
  h ^= h >> 33;
  return static_cast<std::size_t>(h);
}

std::string_view to_string(BackendKind kind) {
  switch (kind) {
  case BackendKind::kLattice: return "lattice";
  case BackendKind::kFreeGroup: return "free-group";
  case BackendKind::kFreeProductC2: return "free-product-c2";
  }
  return "unknown";
}

std::vector<std::size_t> GeneratorSet::sorted_by_length() const {
  std::vector<std::size_t> order(gens_.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return gens_[a].weight < gens_[b].weight;
  });
  return order;
}

GroupElement GroupBackend::multiply(const GroupElement &x, const GroupElement &y) const {
  validate(x);
  validate(y);
  GroupElement out = x;
  multiply_in_place(out, y);
  return out;
}

Length GroupBackend::distance(const GroupElement &x, const GroupElement &y) const {
  validate(x);
  validate(y);
  GroupElement z = inverse(x);
  multiply_in_place(z, y);
  return norm(z);
}

Length GroupBackend::to_length(const Rational &r) const {
  const Rational scaled = r * Rational(gens_.scale());
  if (scaled.denominator() != 1)
    throw UsageError("length " + format_rational(r) + " is not a multiple of 1/" +
                     std::to_string(gens_.scale()));
  return Length(scaled.numerator());
}

void GroupBackend::install_generators(const std::vector<GeneratorInput> &inputs) {
  if (inputs.empty())
    throw ConfigError("generator set is empty");
  std::vector<Generator> gens;
  std::unordered_map<GroupElement, std::size_t, GroupElementHash> index;
  auto add = [&](GroupElement action, Rational length, std::string label) {
    if (length <= 0)
      throw ConfigError("generator '" + label + "' needs a positive length");
    if (is_identity(action))
      throw ConfigError("generator '" + label + "' is the identity");
    if (auto it = index.find(action); it != index.end()) {
      if (gens[it->second].length != length)
        throw ConfigError("generator '" + label + "' listed twice with different lengths (l(s) must equal l(s^-1))");
      return;
    }
    index.emplace(action, gens.size());
    gens.push_back(Generator{std::move(label), std::move(action), length, Length{}, 0});
  };
  for (const auto &in : inputs) {
    GroupElement action = parse(in.action);
    add(action, in.length, in.label.empty() ? format(action) : in.label);
  }
  // Symmetric closure.
  const std::size_t listed = gens.size();
  for (std::size_t i = 0; i < listed; ++i) {
    GroupElement inv = inverse(gens[i].action);
    add(inv, gens[i].length, format(inv));
  }
  std::int64_t scale = 1;
  for (const auto &g : gens)
    scale = std::lcm(scale, g.length.denominator());
  Length min_weight{std::numeric_limits<std::int64_t>::max()};
  for (auto &g : gens) {
    g.weight = Length((g.length * Rational(scale)).numerator());
    g.inverse = index.at(inverse(g.action));
    min_weight = std::min(min_weight, g.weight);
  }
  gens_.gens_ = std::move(gens);
  gens_.scale_ = scale;
  gens_.min_weight_ = min_weight;
}

namespace {

struct Frontier {
  Length cost;
  std::size_t id;
  friend bool operator>(const Frontier &a, const Frontier &b) {
    return a.cost != b.cost ? a.cost > b.cost : a.id > b.id;
  }
};

} // namespace

std::vector<GroupElement> ball(const GroupBackend &backend, const GroupElement &center, Length radius) {
  backend.validate(center);
  if (radius < Length{0})
    throw UsageError("ball radius must be nonnegative");
  std::vector<GroupElement> nodes{center};
  std::vector<Length> best{Length{0}};
  std::vector<bool> settled{false};
  std::unordered_map<GroupElement, std::size_t, GroupElementHash> ids{{center, 0}};
  std::priority_queue<Frontier, std::vector<Frontier>, std::greater<>> queue;
  queue.push({Length{0}, 0});
  std::vector<GroupElement> out;
  const auto gens = backend.generators().all();
  while (!queue.empty()) {
    const Frontier top = queue.top();
    queue.pop();
    if (settled[top.id] || top.cost != best[top.id])
      continue;
    settled[top.id] = true;
    out.push_back(nodes[top.id]);
    if (out.size() > backend.limits().max_ball)
      throw CapExceededError("ball larger than the configured cap of " +
                             std::to_string(backend.limits().max_ball) + " elements");
    for (const auto &g : gens) {
      const Length cost = top.cost + g.weight;
      if (cost > radius)
        continue;
      GroupElement next = nodes[top.id];
      backend.multiply_in_place(next, g.action);
      auto [it, inserted] = ids.try_emplace(next, nodes.size());
      if (inserted) {
        nodes.push_back(std::move(next));
        best.push_back(cost);
        settled.push_back(false);
        queue.push({cost, it->second});
      } else if (!settled[it->second] && cost < best[it->second]) {
        best[it->second] = cost;
        queue.push({cost, it->second});
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Length> pairwise_distances(const GroupBackend &backend, std::span<const GroupElement> points) {
  if (points.empty())
    throw UsageError("pairwise_distances needs at least one point");
  const std::size_t n = points.size();
  std::vector<Length> m(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      m[i * n + j] = m[j * n + i] = backend.distance(points[i], points[j]);
  return m;
}

Length search_distance(const GroupBackend &backend, const GroupElement &x, const GroupElement &y) {
  backend.validate(x);
  backend.validate(y);
  std::vector<GroupElement> nodes{x};
  std::vector<Length> best{Length{0}};
  std::unordered_map<GroupElement, std::size_t, GroupElementHash> ids{{x, 0}};
  std::unordered_set<std::size_t> settled;
  std::priority_queue<Frontier, std::vector<Frontier>, std::greater<>> queue;
  queue.push({Length{0}, 0});
  while (!queue.empty()) {
    const Frontier top = queue.top();
    queue.pop();
    if (top.cost != best[top.id] || !settled.insert(top.id).second)
      continue;
    if (nodes[top.id] == y)
      return top.cost;
    if (settled.size() > backend.limits().max_expanded)
      throw CapExceededError("metric query too large: search exceeded " +
                             std::to_string(backend.limits().max_expanded) + " states");
    for (const auto &g : backend.generators().all()) {
      GroupElement next = nodes[top.id];
      backend.multiply_in_place(next, g.action);
      const Length cost = top.cost + g.weight;
      auto [it, inserted] = ids.try_emplace(next, nodes.size());
      if (inserted) {
        nodes.push_back(std::move(next));
        best.push_back(cost);
        queue.push({cost, it->second});
      } else if (cost < best[it->second]) {
        best[it->second] = cost;
        queue.push({cost, it->second});
      }
    }
  }
  throw UsageError("target unreachable from source");
}

} // namespace lamprate
