// Copyright 2026 The lamprate Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/tsp.hpp"

#include "core/errors.hpp"
#include "core/lattice.hpp"
#include "core/words.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <numeric>

namespace lamprate {

std::string_view to_string(TspMode mode) {
  switch (mode) {
  case TspMode::kExactDp: return "exact-dp";
  case TspMode::kExactTree: return "exact-tree";
  case TspMode::kExactLine: return "exact-line";
  case TspMode::kHeuristic: return "heuristic-upper";
  }
  return "unknown";
}

std::string_view to_string(TspStrategy strategy) {
  switch (strategy) {
  case TspStrategy::kAuto: return "auto";
  case TspStrategy::kExact: return "exact";
  case TspStrategy::kHeuristic: return "heuristic";
  case TspStrategy::kNone: return "none";
  }
  return "unknown";
}

TspMode parse_tsp_mode(std::string_view text) {
  for (TspMode m : {TspMode::kExactDp, TspMode::kExactTree, TspMode::kExactLine, TspMode::kHeuristic})
    if (to_string(m) == text)
      return m;
  throw ConfigError("unknown tsp result mode '" + std::string(text) + "'");
}

TspStrategy parse_tsp_strategy(std::string_view text) {
  for (TspStrategy s : {TspStrategy::kAuto, TspStrategy::kExact, TspStrategy::kHeuristic, TspStrategy::kNone})
    if (to_string(s) == text)
      return s;
  throw ConfigError("unknown tsp mode '" + std::string(text) + "' (expected auto, exact, heuristic or none)");
}

namespace {

std::vector<GroupElement> distinct_sorted(std::span<const GroupElement> supp) {
  std::vector<GroupElement> pts(supp.begin(), supp.end());
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

/// Distances among [e, p_1..p_m, target]; row-major (m+2)^2.
struct LegTable {
  std::size_t n;
  std::vector<Length> d;
  Length operator()(std::size_t i, std::size_t j) const { return d[i * n + j]; }
};

LegTable leg_table(const GroupBackend &backend, const std::vector<GroupElement> &pts, const GroupElement &target) {
  std::vector<GroupElement> all;
  all.reserve(pts.size() + 2);
  all.push_back(backend.identity());
  all.insert(all.end(), pts.begin(), pts.end());
  all.push_back(target);
  return LegTable{all.size(), pairwise_distances(backend, all)};
}

} // namespace

Length tour_length(const GroupBackend &backend, std::span<const GroupElement> order, const GroupElement &target) {
  Length total{0};
  GroupElement at = backend.identity();
  for (const auto &p : order) {
    total += backend.distance(at, p);
    at = p;
  }
  return total + backend.distance(at, target);
}

TspResult tsp_exact_dp(const GroupBackend &backend, std::span<const GroupElement> supp,
                       const GroupElement &target, std::size_t cap) {
  const auto pts = distinct_sorted(supp);
  const std::size_t m = pts.size();
  if (m > cap)
    throw CapExceededError("exact d_TS: support of size " + std::to_string(m) + " exceeds the DP cap of " +
                           std::to_string(cap) + "; use the heuristic mode");
  if (m > 24)
    throw CapExceededError("exact d_TS: DP cap above 24 points is not supported");
  const LegTable legs = leg_table(backend, pts, target);
  if (m == 0)
    return TspResult{legs(0, 1), {}, TspMode::kExactDp};

  constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;
  const std::size_t full = (std::size_t{1} << m) - 1;
  std::vector<std::int64_t> dp((full + 1) * m, kInf);
  std::vector<std::int8_t> parent((full + 1) * m, -1);
  for (std::size_t i = 0; i < m; ++i)
    dp[(std::size_t{1} << i) * m + i] = legs(0, i + 1).ticks();
  for (std::size_t mask = 1; mask <= full; ++mask) {
    for (std::size_t last = 0; last < m; ++last) {
      const std::int64_t cur = dp[mask * m + last];
      if (cur >= kInf || !(mask & (std::size_t{1} << last)))
        continue;
      for (std::size_t nxt = 0; nxt < m; ++nxt) {
        if (mask & (std::size_t{1} << nxt))
          continue;
        const std::size_t nmask = mask | (std::size_t{1} << nxt);
        const std::int64_t cand = cur + legs(last + 1, nxt + 1).ticks();
        if (cand < dp[nmask * m + nxt]) {
          dp[nmask * m + nxt] = cand;
          parent[nmask * m + nxt] = static_cast<std::int8_t>(last);
        }
      }
    }
  }
  std::int64_t best = kInf;
  std::size_t best_last = 0;
  for (std::size_t last = 0; last < m; ++last) {
    const std::int64_t cand = dp[full * m + last] + legs(last + 1, m + 1).ticks();
    if (cand < best) {
      best = cand;
      best_last = last;
    }
  }
  std::vector<GroupElement> order;
  std::size_t mask = full;
  std::int64_t at = static_cast<std::int64_t>(best_last);
  while (at >= 0) {
    order.push_back(pts[static_cast<std::size_t>(at)]);
    const std::int8_t prev = parent[mask * m + static_cast<std::size_t>(at)];
    mask &= ~(std::size_t{1} << at);
    at = prev;
  }
  std::reverse(order.begin(), order.end());
  return TspResult{Length(best), std::move(order), TspMode::kExactDp};
}

TspResult tsp_exact_tree(const GroupBackend &backend, std::span<const GroupElement> supp,
                         const GroupElement &target) {
  const auto *words = dynamic_cast<const WordBackend *>(&backend);
  if (words == nullptr || !backend.cayley_graph_is_tree())
    throw UsageError("tree closed form needs a free-group or Z/2 free-product backend, got " + backend.describe());
  backend.validate(target);
  for (const auto &p : supp)
    backend.validate(p);

  std::vector<GroupElement> pts(supp.begin(), supp.end());
  pts.push_back(target);
  pts.push_back(backend.identity());
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  // Subtree weight = sum over distinct nonempty prefixes; in sorted order each
  // word contributes the letters past its common prefix with the predecessor.
  Length subtree{0};
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto &w = pts[i].data();
    std::size_t lcp = 0;
    if (i > 0) {
      const auto &p = pts[i - 1].data();
      while (lcp < w.size() && lcp < p.size() && w[lcp] == p[lcp])
        ++lcp;
    }
    for (std::size_t k = lcp; k < w.size(); ++k)
      subtree += words->letter_weight(w[k]);
  }
  const Length geodesic = backend.norm(target);

  // Depth-first order in which the branch towards target is always last.
  std::vector<GroupElement> order = distinct_sorted(supp);
  const auto &t = target.data();
  std::sort(order.begin(), order.end(), [&](const GroupElement &a, const GroupElement &b) {
    const auto &u = a.data();
    const auto &v = b.data();
    std::size_t i = 0;
    while (i < u.size() && i < v.size() && u[i] == v[i])
      ++i;
    if (i == u.size() || i == v.size())
      return u.size() < v.size();
    const bool on_target_path = i < t.size() && std::equal(u.begin(), u.begin() + static_cast<std::ptrdiff_t>(i), t.begin());
    if (on_target_path) {
      if (u[i] == t[i])
        return false;
      if (v[i] == t[i])
        return true;
    }
    return u[i] < v[i];
  });
  return TspResult{2 * subtree - geodesic, std::move(order), TspMode::kExactTree};
}

TspResult tsp_exact_line(const GroupBackend &backend, std::span<const GroupElement> supp,
                         const GroupElement &target) {
  const auto *lattice = dynamic_cast<const LatticeBackend *>(&backend);
  if (lattice == nullptr || !lattice->is_integers())
    throw UsageError("line closed form needs the lattice Z, got " + backend.describe());
  if (!lattice->certified_linear())
    throw UsageError("line closed form: metric on Z is not r1*|x-y| (linearity check failed); use exact-dp");
  backend.validate(target);
  const auto pts = distinct_sorted(supp);
  Coord lo = 0, hi = 0;
  const Coord t = target.data()[0];
  lo = std::min(lo, t);
  hi = std::max(hi, t);
  for (const auto &p : pts) {
    backend.validate(p);
    lo = std::min(lo, p.data()[0]);
    hi = std::max(hi, p.data()[0]);
  }
  const Coord left_first = (0 - lo) + (hi - lo) + (hi - t);
  const Coord right_first = (hi - 0) + (hi - lo) + (t - lo);
  const bool go_left = left_first <= right_first;

  std::vector<GroupElement> order;
  std::vector<GroupElement> neg, pos;
  for (const auto &p : pts)
    (go_left ? (p.data()[0] <= 0 ? neg : pos) : (p.data()[0] < 0 ? neg : pos)).push_back(p);
  std::reverse(neg.begin(), neg.end()); // nearest to 0 first
  if (go_left) {
    order = std::move(neg);
    order.insert(order.end(), pos.begin(), pos.end());
  } else {
    order = std::move(pos);
    order.insert(order.end(), neg.begin(), neg.end());
  }
  // Points passed on the return sweep towards target are first visited on
  // the outbound sweep, so the sweep order above is already the visit order.
  return TspResult{std::min(left_first, right_first) * backend.r1(), std::move(order), TspMode::kExactLine};
}

TspResult tsp_heuristic(const GroupBackend &backend, std::span<const GroupElement> supp,
                        const GroupElement &target) {
  const auto pts = distinct_sorted(supp);
  const std::size_t m = pts.size();
  const LegTable legs = leg_table(backend, pts, target);
  std::vector<std::size_t> route{0};
  std::vector<bool> used(m + 2, false);
  std::size_t at = 0;
  for (std::size_t step = 0; step < m; ++step) {
    std::size_t best = 0;
    for (std::size_t j = 1; j <= m; ++j)
      if (!used[j] && (best == 0 || legs(at, j) < legs(at, best)))
        best = j;
    used[best] = true;
    route.push_back(best);
    at = best;
  }
  route.push_back(m + 1);
  for (bool improved = true; improved;) {
    improved = false;
    for (std::size_t i = 1; i + 1 < route.size(); ++i) {
      for (std::size_t j = i + 1; j + 1 < route.size(); ++j) {
        const Length before = legs(route[i - 1], route[i]) + legs(route[j], route[j + 1]);
        const Length after = legs(route[i - 1], route[j]) + legs(route[i], route[j + 1]);
        if (after < before) {
          std::reverse(route.begin() + static_cast<std::ptrdiff_t>(i), route.begin() + static_cast<std::ptrdiff_t>(j) + 1);
          improved = true;
        }
      }
    }
  }
  Length total{0};
  std::vector<GroupElement> order;
  for (std::size_t k = 1; k < route.size(); ++k) {
    total += legs(route[k - 1], route[k]);
    if (k + 1 < route.size())
      order.push_back(pts[route[k] - 1]);
  }
  return TspResult{total, std::move(order), TspMode::kHeuristic};
}

Length tsp_bruteforce_oracle(const GroupBackend &backend, std::span<const GroupElement> supp,
                             const GroupElement &target) {
  const auto pts = distinct_sorted(supp);
  if (pts.size() > kBruteForceCap)
    throw CapExceededError("brute-force oracle is limited to " + std::to_string(kBruteForceCap) + " points");
  const LegTable legs = leg_table(backend, pts, target);
  const std::size_t m = pts.size();
  std::vector<std::size_t> perm(m);
  std::iota(perm.begin(), perm.end(), std::size_t{1});
  Length best{std::numeric_limits<std::int64_t>::max()};
  do {
    Length total{0};
    std::size_t at = 0;
    for (std::size_t p : perm) {
      total += legs(at, p);
      at = p;
    }
    total += legs(at, m + 1);
    best = std::min(best, total);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

TspResult solve_tsp(const GroupBackend &backend, std::span<const GroupElement> supp, const GroupElement &target,
                    TspStrategy strategy, std::size_t cap) {
  switch (strategy) {
  case TspStrategy::kNone:
    throw UsageError("solve_tsp called with tsp mode 'none'");
  case TspStrategy::kHeuristic:
    return tsp_heuristic(backend, supp, target);
  case TspStrategy::kAuto:
  case TspStrategy::kExact: {
    if (backend.cayley_graph_is_tree())
      return tsp_exact_tree(backend, supp, target);
    if (const auto *lattice = dynamic_cast<const LatticeBackend *>(&backend);
        lattice != nullptr && lattice->is_integers() && lattice->certified_linear())
      return tsp_exact_line(backend, supp, target);
    if (strategy == TspStrategy::kAuto && supp.size() > cap)
      return tsp_heuristic(backend, supp, target);
    return tsp_exact_dp(backend, supp, target, cap);
  }
  }
  throw UsageError("unknown tsp strategy");
}

} // namespace lamprate
