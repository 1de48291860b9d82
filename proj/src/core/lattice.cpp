// Copyright 2026 The lamprate Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/lattice.hpp"

#include "core/errors.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <mutex>
#include <queue>
#include <sstream>

namespace lamprate {

bool integer_span_contains(std::vector<std::vector<Coord>> rows, std::vector<Coord> target) {
  const std::size_t n = target.size();
  std::size_t pivot = 0;
  std::vector<std::size_t> pivot_cols;
  for (std::size_t col = 0; col < n && pivot < rows.size(); ++col) {
    // Euclid on the column until at most one row below pivot is nonzero.
    while (true) {
      std::size_t best = rows.size();
      for (std::size_t r = pivot; r < rows.size(); ++r)
        if (rows[r][col] != 0 && (best == rows.size() || std::llabs(rows[r][col]) < std::llabs(rows[best][col])))
          best = r;
      if (best == rows.size())
        break;
      std::swap(rows[pivot], rows[best]);
      bool reduced = false;
      for (std::size_t r = pivot + 1; r < rows.size(); ++r) {
        if (rows[r][col] == 0)
          continue;
        const Coord q = rows[r][col] / rows[pivot][col];
        for (std::size_t c = col; c < n; ++c)
          rows[r][c] -= q * rows[pivot][c];
        reduced = reduced || rows[r][col] != 0;
      }
      if (!reduced) {
        pivot_cols.push_back(col);
        ++pivot;
        break;
      }
    }
  }
  std::size_t row = 0;
  for (std::size_t col = 0; col < n; ++col) {
    if (row < pivot_cols.size() && pivot_cols[row] == col) {
      const auto &p = rows[row];
      if (target[col] % p[col] != 0)
        return false;
      const Coord q = target[col] / p[col];
      for (std::size_t c = col; c < n; ++c)
        target[c] -= q * p[c];
      ++row;
    } else if (target[col] != 0) {
      return false;
    }
  }
  return true;
}

LatticeBackend::LatticeBackend(std::size_t rank, std::vector<Coord> torsion,
                               const std::vector<GeneratorInput> &generators, SearchLimits limits)
    : GroupBackend(limits), rank_(rank), torsion_(std::move(torsion)) {
  if (rank_ == 0)
    throw ConfigError("lattice backend needs free rank >= 1 (the group must be infinite)");
  for (Coord m : torsion_)
    if (m < 2)
      throw ConfigError("torsion moduli must be >= 2");
  install_generators(generators);

  std::vector<GroupElement> actions;
  for (const auto &g : this->generators().all())
    actions.push_back(g.action);
  if (!generates(actions))
    throw ConfigError("lattice generators do not generate " + describe());

  bool have_inf = false, have_l1 = false;
  for (const auto &g : this->generators().all()) {
    std::int64_t linf = 0, l1 = 0;
    for (std::size_t i = 0; i < rank_; ++i) {
      linf = std::max<std::int64_t>(linf, std::llabs(g.action.data()[i]));
      l1 += std::llabs(g.action.data()[i]);
    }
    if (linf == 0)
      continue;
    const std::int64_t w = g.weight.ticks();
    if (!have_inf || static_cast<__int128>(w) * inf_moves_ < static_cast<__int128>(inf_ticks_) * linf) {
      inf_ticks_ = w;
      inf_moves_ = linf;
      have_inf = true;
    }
    if (!have_l1 || static_cast<__int128>(w) * l1_moves_ < static_cast<__int128>(l1_ticks_) * l1) {
      l1_ticks_ = w;
      l1_moves_ = l1;
      have_l1 = true;
    }
  }

  if (is_integers()) {
    const Length r1 = this->generators().min_weight();
    bool unit_is_minimal = false;
    bool all_long = true;
    for (const auto &g : this->generators().all()) {
      const Coord s = std::llabs(g.action.data()[0]);
      if (s == 1 && g.weight == r1)
        unit_is_minimal = true;
      if (g.weight < s * r1)
        all_long = false;
    }
    linear_ = unit_is_minimal && all_long;
  }
}

std::string LatticeBackend::describe() const {
  std::ostringstream os;
  os << "Z";
  if (rank_ > 1)
    os << "^" << rank_;
  for (Coord m : torsion_)
    os << " x Z/" << m;
  return os.str();
}

GroupElement LatticeBackend::identity() const {
  GroupElement e;
  e.data().assign(dimension(), 0);
  return e;
}

void LatticeBackend::canonicalize(GroupElement &x) const {
  for (std::size_t i = 0; i < torsion_.size(); ++i) {
    Coord &c = x.data()[rank_ + i];
    c %= torsion_[i];
    if (c < 0)
      c += torsion_[i];
  }
}

void LatticeBackend::multiply_in_place(GroupElement &x, const GroupElement &y) const {
  for (std::size_t i = 0; i < x.size(); ++i)
    x.data()[i] += y.data()[i];
  if (!torsion_.empty())
    canonicalize(x);
}

GroupElement LatticeBackend::inverse(const GroupElement &x) const {
  GroupElement out = x;
  for (auto &c : out.data())
    c = -c;
  canonicalize(out);
  return out;
}

void LatticeBackend::validate(const GroupElement &x) const {
  if (x.size() != dimension())
    throw UsageError("element has " + std::to_string(x.size()) + " coordinates, backend " +
                     describe() + " expects " + std::to_string(dimension()));
  for (std::size_t i = 0; i < torsion_.size(); ++i) {
    const Coord c = x.data()[rank_ + i];
    if (c < 0 || c >= torsion_[i])
      throw UsageError("torsion coordinate out of canonical range");
  }
}

GroupElement LatticeBackend::parse(std::string_view text) const {
  std::string cleaned;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c)))
      cleaned.push_back(c);
  if (cleaned == "e")
    return identity();
  std::string_view body = cleaned;
  if (!body.empty() && body.front() == '(') {
    if (body.back() != ')')
      throw ConfigError("unbalanced parentheses in lattice element '" + std::string(text) + "'");
    body = body.substr(1, body.size() - 2);
  }
  GroupElement x;
  while (true) {
    const auto comma = body.find(',');
    const std::string_view field = body.substr(0, comma);
    Coord value = 0;
    std::string_view digits = field;
    if (!digits.empty() && digits.front() == '+')
      digits.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (digits.empty() || ec != std::errc{} || ptr != digits.data() + digits.size())
      throw ConfigError("invalid lattice element '" + std::string(text) + "'");
    x.data().push_back(value);
    if (comma == std::string_view::npos)
      break;
    body = body.substr(comma + 1);
  }
  if (x.size() != dimension())
    throw ConfigError("lattice element '" + std::string(text) + "' has " + std::to_string(x.size()) +
                      " coordinates, expected " + std::to_string(dimension()));
  canonicalize(x);
  return x;
}

std::string LatticeBackend::format(const GroupElement &x) const {
  if (dimension() == 1)
    return std::to_string(x.data()[0]);
  std::string out = "(";
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i)
      out += ",";
    out += std::to_string(x.data()[i]);
  }
  return out + ")";
}

bool LatticeBackend::subgroup_contains(std::span<const GroupElement> elements, const GroupElement &target) const {
  std::vector<std::vector<Coord>> rows;
  for (const auto &g : elements)
    rows.emplace_back(g.data().begin(), g.data().end());
  for (std::size_t i = 0; i < torsion_.size(); ++i) {
    std::vector<Coord> rel(dimension(), 0);
    rel[rank_ + i] = torsion_[i];
    rows.push_back(std::move(rel));
  }
  return integer_span_contains(std::move(rows), std::vector<Coord>(target.data().begin(), target.data().end()));
}

bool LatticeBackend::generates(std::span<const GroupElement> elements) const {
  for (std::size_t i = 0; i < dimension(); ++i) {
    GroupElement unit = identity();
    unit.data()[i] = 1;
    canonicalize(unit);
    if (!subgroup_contains(elements, unit))
      return false;
  }
  return true;
}

Length LatticeBackend::norm(const GroupElement &z) const {
  if (linear_)
    return std::llabs(z.data()[0]) * generators().min_weight();
  {
    std::shared_lock lock(memo_mutex_);
    if (auto it = memo_.find(z); it != memo_.end())
      return it->second;
  }
  const Length d = search_norm(z);
  std::unique_lock lock(memo_mutex_);
  if (memo_.size() > 4'000'000)
    memo_.clear();
  memo_.emplace(z, d);
  return d;
}

namespace {

std::int64_t ceil_scaled(std::int64_t moves, std::int64_t ticks, std::int64_t per) {
  const __int128 num = static_cast<__int128>(moves) * ticks;
  return static_cast<std::int64_t>((num + per - 1) / per);
}

struct Node {
  std::int64_t f;
  std::int64_t g;
  std::size_t id;
  friend bool operator>(const Node &a, const Node &b) {
    if (a.f != b.f)
      return a.f > b.f;
    if (a.g != b.g)
      return a.g < b.g; // prefer deeper nodes on ties
    return a.id > b.id;
  }
};

} // namespace

Length LatticeBackend::search_norm(const GroupElement &z) const {
  validate(z);
  auto heuristic = [&](const GroupElement &v) {
    std::int64_t linf = 0, l1 = 0;
    for (std::size_t i = 0; i < rank_; ++i) {
      const std::int64_t d = std::llabs(z.data()[i] - v.data()[i]);
      linf = std::max(linf, d);
      l1 += d;
    }
    if (linf == 0)
      return std::int64_t{0};
    return std::max(ceil_scaled(linf, inf_ticks_, inf_moves_), ceil_scaled(l1, l1_ticks_, l1_moves_));
  };
  std::vector<GroupElement> nodes{identity()};
  std::vector<std::int64_t> best{0};
  std::vector<char> closed{0};
  std::unordered_map<GroupElement, std::size_t, GroupElementHash> ids{{nodes[0], 0}};
  std::priority_queue<Node, std::vector<Node>, std::greater<>> open;
  open.push({heuristic(nodes[0]), 0, 0});
  std::size_t expanded = 0;
  const auto gens = generators().all();
  while (!open.empty()) {
    const Node top = open.top();
    open.pop();
    if (closed[top.id] || top.g != best[top.id])
      continue;
    if (nodes[top.id] == z)
      return Length(top.g);
    closed[top.id] = 1;
    if (++expanded > limits().max_expanded)
      throw CapExceededError("metric query too large: d(e, " + format(z) + ") exceeded " +
                             std::to_string(limits().max_expanded) + " expanded states");
    for (const auto &s : gens) {
      GroupElement next = nodes[top.id];
      multiply_in_place(next, s.action);
      const std::int64_t g = top.g + s.weight.ticks();
      auto [it, inserted] = ids.try_emplace(next, nodes.size());
      const std::size_t id = it->second;
      if (inserted) {
        nodes.push_back(std::move(next));
        best.push_back(g);
        closed.push_back(0);
      } else if (closed[id] || g >= best[id]) {
        continue;
      } else {
        best[id] = g;
      }
      open.push({g + heuristic(nodes[id]), g, id});
    }
  }
  throw UsageError("lattice element unreachable");
}

BackendPtr make_lattice(std::size_t rank, std::vector<Coord> torsion,
                        const std::vector<GeneratorInput> &generators, SearchLimits limits) {
  return std::make_shared<LatticeBackend>(rank, std::move(torsion), generators, limits);
}

} // namespace lamprate
