// Copyright 2026 The lamprate Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/case_analysis.hpp"

#include "core/errors.hpp"
#include "core/lattice.hpp"
#include "core/rng.hpp"
#include "core/words.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <sstream>

namespace lamprate {

std::string_view to_string(SigmaCase c) {
  switch (c) {
  case SigmaCase::kI: return "I";
  case SigmaCase::kII: return "II";
  case SigmaCase::kIII: return "III";
  case SigmaCase::kZI: return "Z-I";
  case SigmaCase::kZII: return "Z-II";
  }
  return "?";
}

SigmaCase parse_sigma_case(std::string_view text) {
  for (auto c : {SigmaCase::kI, SigmaCase::kII, SigmaCase::kIII, SigmaCase::kZI, SigmaCase::kZII})
    if (text == to_string(c))
      return c;
  throw ConfigError("unknown case '" + std::string(text) + "' (expected I, II, III, Z-I or Z-II)");
}

bool is_z_case(SigmaCase c) { return c == SigmaCase::kZI || c == SigmaCase::kZII; }

std::string_view to_string(SelectionKind kind) {
  switch (kind) {
  case SelectionKind::kTriple: return "triple";
  case SelectionKind::kDegenerateLinear: return "degenerate: linear metric";
  case SelectionKind::kRecurrent: return "recurrent";
  case SelectionKind::kNotApplicable: return "not applicable";
  }
  return "?";
}

std::string_view to_string(Relation rel) {
  switch (rel) {
  case Relation::kEqual: return "=";
  case Relation::kLessEq: return "<=";
  case Relation::kGreaterEq: return ">=";
  }
  return "?";
}

std::array<GroupElement, 4> SigmaTriple::points(const GroupBackend &backend) const {
  return {backend.identity(), sigma[0], sigma[1], sigma[2]};
}

std::array<std::string, 4> SigmaTriple::labels() const {
  switch (tag) {
  case SigmaCase::kZI: return {"0", "s", "s^-1", "1"};
  case SigmaCase::kZII: return {"0", "1", "-1", "s"};
  default: return {"e", "s1", "s2", "s3"};
  }
}

bool CheckReport::passed() const {
  return std::all_of(items.begin(), items.end(), [](const CheckItem &i) { return i.holds; });
}


namespace {

const LatticeBackend *as_lattice(const GroupBackend &b) { return dynamic_cast<const LatticeBackend *>(&b); }
const WordBackend *as_words(const GroupBackend &b) { return dynamic_cast<const WordBackend *>(&b); }

bool is_involution(const GroupBackend &b, std::size_t i) { return b.generators()[i].inverse == i; }

std::optional<std::size_t> find_integer_generator(const GroupBackend &b, Coord value) {
  const auto gens = b.generators().all();
  for (std::size_t i = 0; i < gens.size(); ++i)
    if (gens[i].action.data()[0] == value)
      return i;
  return std::nullopt;
}

SigmaTriple make_triple(const GroupBackend &b, SigmaCase tag, std::array<std::size_t, 3> idx) {
  SigmaTriple t;
  t.tag = tag;
  t.generator = idx;
  for (std::size_t k = 0; k < 3; ++k) {
    t.sigma[k] = b.generators()[idx[k]].action;
    t.length[k] = b.generators()[idx[k]].weight;
  }
  t.increment = b.r1();
  return t;
}

SelectionOutcome select_general(const BackendPtr &backend) {
  const GroupBackend &b = *backend;
  SelectionOutcome out;
  out.backend = backend;
  const auto order = b.generators().sorted_by_length();
  if (order.size() < 3) {
    out.note = "fewer than three generators";
    return out;
  }
  auto action = [&](std::size_t pos) { return b.generators()[order[pos]].action; };
  const std::size_t s1 = order[0];

  auto first_outside = [&](std::size_t from, std::vector<GroupElement> prior) -> std::optional<std::size_t> {
    for (std::size_t k = 0; k < from; ++k)
      prior.push_back(action(k));
    for (std::size_t k = from; k < order.size(); ++k) {
      if (!subgroup_contains(b, prior, action(k)))
        return order[k];
      prior.push_back(action(k));
    }
    return std::nullopt;
  };

  if (!is_involution(b, s1)) {
    const std::size_t s1inv = b.generators()[s1].inverse;
    auto s3 = first_outside(1, {b.generators()[s1inv].action});
    if (!s3) {
      out.note = "every generator lies in the subgroup generated by the shortest one";
      return out;
    }
    out.kind = SelectionKind::kTriple;
    out.triple = make_triple(b, SigmaCase::kI, {s1, s1inv, *s3});
    return out;
  }
  const std::size_t s2 = order[1];
  if (is_involution(b, s2)) {
    auto s3 = first_outside(2, {});
    if (!s3) {
      out.note = "no generator outside the subgroup generated by the two shortest involutions";
      return out;
    }
    out.kind = SelectionKind::kTriple;
    out.triple = make_triple(b, SigmaCase::kII, {s1, s2, *s3});
    return out;
  }
  out.kind = SelectionKind::kTriple;
  out.triple = make_triple(b, SigmaCase::kIII, {s1, s2, b.generators()[s2].inverse});
  return out;
}

SelectionOutcome select_integers(const BackendPtr &backend) {
  const GroupBackend &b = *backend;
  SelectionOutcome out;
  out.backend = backend;
  const auto one = find_integer_generator(b, 1);
  if (!one) {
    out.note = "+-1 is not a generator";
    return out;
  }
  const auto gens = b.generators().all();
  if (gens.size() == 2) {
    out.kind = SelectionKind::kDegenerateLinear;
    out.note = "S = {+-1}: the Cayley graph is a line";
    return out;
  }
  const Length l1 = gens[*one].weight;
  const GroupElement unit{1};

  // +-1 must be the unique geodesic from 0 to 1; otherwise it is redundant and
  // S without +-1 induces the same metric.
  bool redundant = false;
  for (const auto &g : gens) {
    const Coord v = g.action.data()[0];
    if (v == 1 || v == -1)
      continue;
    if (g.weight + b.distance(g.action, unit) <= l1)
      redundant = true;
  }
  if (redundant) {
    std::vector<GeneratorInput> inputs;
    for (const auto &g : gens) {
      const Coord v = g.action.data()[0];
      if (v > 1)
        inputs.push_back({std::to_string(v), g.length, g.label});
    }
    auto reduced = make_lattice(1, {}, inputs, b.limits());
    out = select_general(reduced);
    out.note = "+-1 is not the unique geodesic from 0 to 1; S without +-1 induces the same metric";
    return out;
  }

  std::optional<std::size_t> zi, zii;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const Coord v = gens[i].action.data()[0];
    if (v == 1 || v == -1)
      continue;
    if (gens[i].weight < l1) {
      if (!zi || gens[i].weight < gens[*zi].weight ||
          (gens[i].weight == gens[*zi].weight && v > 0 && gens[*zi].action.data()[0] < 0))
        zi = i;
    }
    if (v > 0 && gens[i].weight < v * l1) {
      if (!zii || gens[i].weight < gens[*zii].weight ||
          (gens[i].weight == gens[*zii].weight && v < gens[*zii].action.data()[0]))
        zii = i;
    }
  }
  if (!zi && !zii) {
    out.kind = SelectionKind::kDegenerateLinear;
    out.note = "l(s) >= |s| l(1) for every s, so d(x, y) = r1 |x - y|";
    return out;
  }
  SigmaTriple t;
  Coord s = 0;
  if (zi) {
    std::size_t pos = *zi;
    if (gens[pos].action.data()[0] < 0)
      pos = gens[pos].inverse;
    s = gens[pos].action.data()[0];
    t = make_triple(b, SigmaCase::kZI, {pos, gens[pos].inverse, *one});
  } else {
    s = gens[*zii].action.data()[0];
    t = make_triple(b, SigmaCase::kZII, {*one, gens[*one].inverse, *zii});
  }
  t.epsilon0 = compute_epsilon0(b, t.tag, s);
  const Length ls = b.generators()[*find_integer_generator(b, s)].weight;
  t.increment = std::min({*t.epsilon0, ls, l1});
  out.kind = SelectionKind::kTriple;
  out.triple = std::move(t);
  return out;
}

Rational rat(const GroupBackend &b, Length d) { return b.to_rational(d); }

CheckItem make_item(std::string name, Rational lhs, Relation rel, Rational rhs) {
  CheckItem item{std::move(name), lhs, rel, rhs, Rational(0), true};
  switch (rel) {
  case Relation::kEqual:
    item.slack = lhs > rhs ? lhs - rhs : rhs - lhs;
    item.holds = lhs == rhs;
    break;
  case Relation::kLessEq:
    item.slack = rhs - lhs;
    item.holds = lhs <= rhs;
    break;
  case Relation::kGreaterEq:
    item.slack = lhs - rhs;
    item.holds = lhs >= rhs;
    break;
  }
  return item;
}

std::string format_phi(const std::array<int, 4> &phi, const std::array<std::string, 4> &labels) {
  std::string out = "(";
  for (std::size_t i = 0; i < 4; ++i)
    out += (i ? ", " : "") + labels[static_cast<std::size_t>(phi[i])];
  return out + ")";
}

} // namespace

bool has_generating_symmetric_pair(const GroupBackend &backend) {
  if (const auto *w = as_words(backend)) {
    if (w->kind() == BackendKind::kFreeGroup)
      return w->rank() == 1;
    return w->rank() == 2;
  }
  const auto *lat = as_lattice(backend);
  if (!lat)
    throw UsageError("unsupported backend");
  const auto gens = backend.generators().all();
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const GroupElement one[] = {gens[i].action};
    if (lat->generates(one))
      return true;
    if (!is_involution(backend, i))
      continue;
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      if (!is_involution(backend, j))
        continue;
      const GroupElement pair[] = {gens[i].action, gens[j].action};
      if (lat->generates(pair))
        return true;
    }
  }
  return false;
}

bool subgroup_contains(const GroupBackend &backend, std::span<const GroupElement> elements,
                       const GroupElement &target) {
  if (const auto *lat = as_lattice(backend))
    return lat->subgroup_contains(elements, target);
  if (!as_words(backend))
    throw UsageError("unsupported backend");
  // Subgroups generated by basis letters of a free product consist of the
  // reduced words over those letters.
  std::set<Coord> letters;
  for (const auto &g : elements) {
    if (g.size() != 1)
      throw UsageError("word subgroup test expects single-letter generators");
    letters.insert(std::llabs(g.data()[0]));
  }
  return std::all_of(target.data().begin(), target.data().end(),
                     [&](Coord c) { return letters.contains(std::llabs(c)); });
}

SelectionOutcome select_sigmas(const BackendPtr &backend) {
  const GroupBackend &b = *backend;
  if (const auto *w = as_words(b); w && w->kind() == BackendKind::kFreeProductC2 && w->rank() == 2) {
    SelectionOutcome out;
    out.kind = SelectionKind::kRecurrent;
    out.backend = backend;
    out.note = "Z2*Z2: every irreducible walk with finite first moment is recurrent, so l_TS = 0";
    return out;
  }
  if (!has_generating_symmetric_pair(b))
    return select_general(backend);
  if (const auto *lat = as_lattice(b); lat && lat->is_integers())
    return select_integers(backend);
  SelectionOutcome out;
  out.backend = backend;
  if (const auto *w = as_words(b); w && w->kind() == BackendKind::kFreeGroup) {
    out.kind = SelectionKind::kDegenerateLinear;
    out.note = "F1 = Z with S = {+-a}: the Cayley graph is a line";
    return out;
  }
  out.note = "a two-element symmetric subset generates G, but G is not presented as Z";
  return out;
}

Length compute_epsilon0(const GroupBackend &backend, SigmaCase tag, std::int64_t s) {
  const auto *lat = as_lattice(backend);
  if (!lat || !lat->is_integers())
    throw UsageError("eps0 is defined for the integers only");
  if (!is_z_case(tag))
    throw UsageError("eps0 is defined for the Z cases only");
  if (s <= 1)
    throw HypothesisError("s must be a positive generator other than 1");
  const auto one = find_integer_generator(backend, 1);
  const auto gs = find_integer_generator(backend, s);
  if (!one || !gs)
    throw HypothesisError("both 1 and s must be generators");
  const Length l1 = backend.generators()[*one].weight;
  const Length ls = backend.generators()[*gs].weight;
  const GroupElement zero{0}, unit{1}, minus{-1}, gen{s}, geninv{-s};
  Length eps;
  if (tag == SigmaCase::kZI) {
    if (!(ls < l1))
      throw HypothesisError("case Z-I requires l(s) < l(1)");
    if (backend.distance(zero, unit) != l1)
      throw HypothesisError("case Z-I requires d(0,1) = l(1)");
    eps = std::min(backend.distance(gen, unit), backend.distance(geninv, unit)) - (l1 - ls);
  } else {
    if (!(ls < s * l1))
      throw HypothesisError("case Z-II requires l(s) < |s| l(1)");
    if (backend.distance(zero, gen) != ls)
      throw HypothesisError("case Z-II requires d(0,s) = l(s)");
    eps = std::min(backend.distance(unit, gen), backend.distance(minus, gen)) - (ls - l1);
  }
  if (eps <= Length{0})
    throw HypothesisError("no positive eps0 exists (computed " + format_rational(backend.to_rational(eps)) + ")");
  return eps;
}

CheckReport verify_distance_bounds(const SigmaTriple &t, const GroupBackend &b) {
  CheckReport rep;
  rep.title = "distance bounds, case " + std::string(to_string(t.tag));
  const auto p = t.points(b);
  auto d = [&](int i, int j) { return rat(b, b.distance(p[static_cast<std::size_t>(i)], p[static_cast<std::size_t>(j)])); };
  const Rational l1 = rat(b, t.length[0]), l2 = rat(b, t.length[1]), l3 = rat(b, t.length[2]);
  const Rational r1 = rat(b, b.r1());
  auto &it = rep.items;

  if (!is_z_case(t.tag)) {
    it.push_back(make_item("l(s1) = r1", l1, Relation::kEqual, r1));
    it.push_back(make_item("l(s1) <= l(s2)", l1, Relation::kLessEq, l2));
    it.push_back(make_item("l(s2) <= l(s3)", l2, Relation::kLessEq, l3));
    it.push_back(make_item("d(e,s1) = l(s1)", d(0, 1), Relation::kEqual, l1));
    it.push_back(make_item("d(e,s2) <= l(s2)", d(0, 2), Relation::kLessEq, l2));
    it.push_back(make_item("d(e,s3) <= l(s3)", d(0, 3), Relation::kLessEq, l3));
    it.push_back(make_item("d(s1,s2) <= l(s1) + l(s2)", d(1, 2), Relation::kLessEq, l1 + l2));
    it.push_back(make_item("d(s1,s3) <= l(s1) + l(s3)", d(1, 3), Relation::kLessEq, l1 + l3));
    it.push_back(make_item("d(s2,s3) <= l(s2) + l(s3)", d(2, 3), Relation::kLessEq, l2 + l3));
    it.push_back(make_item("d(e,s2) = l(s2)", d(0, 2), Relation::kEqual, l2));
    it.push_back(make_item("d(e,s3) = l(s3)", d(0, 3), Relation::kEqual, l3));
    it.push_back(make_item("d(s1,s2) >= l(s2)", d(1, 2), Relation::kGreaterEq, l2));
    it.push_back(make_item("d(s1,s3) >= l(s3)", d(1, 3), Relation::kGreaterEq, l3));
    if (t.tag == SigmaCase::kIII)
      it.push_back(make_item("d(s2,s3) >= l(s1)", d(2, 3), Relation::kGreaterEq, l1));
    else
      it.push_back(make_item("d(s2,s3) >= l(s3)", d(2, 3), Relation::kGreaterEq, l3));
    return rep;
  }

  const Rational eps = t.epsilon0 ? rat(b, *t.epsilon0) : Rational(0);
  CheckItem positive = make_item("eps0 > 0", eps, Relation::kGreaterEq, Rational(0));
  positive.holds = eps > 0;
  it.push_back(positive);
  if (t.tag == SigmaCase::kZI) {
    // points: 0, s, -s, 1; l(s) = l1, l(1) = l3
    it.push_back(make_item("d(0,s) = l(s) = r1", d(0, 1), Relation::kEqual, r1));
    it.push_back(make_item("d(0,s^-1) = l(s)", d(0, 2), Relation::kEqual, l1));
    it.push_back(make_item("l(s) < l(1)", l1, Relation::kLessEq, l3));
    it.back().holds = l1 < l3;
    it.push_back(make_item("d(s,s^-1) >= l(s)", d(1, 2), Relation::kGreaterEq, l1));
    it.push_back(make_item("d(0,1) = l(1)", d(0, 3), Relation::kEqual, l3));
    it.push_back(make_item("d(s,1) >= l(1) - l(s) + eps0", d(1, 3), Relation::kGreaterEq, l3 - l1 + eps));
    it.push_back(make_item("d(s^-1,1) >= l(1) - l(s) + eps0", d(2, 3), Relation::kGreaterEq, l3 - l1 + eps));
  } else {
    // points: 0, 1, -1, s; l(1) = l1, l(s) = l3
    const Rational s(t.sigma[2].data()[0]);
    it.push_back(make_item("d(0,1) = l(1) = r1", d(0, 1), Relation::kEqual, r1));
    it.push_back(make_item("d(0,-1) = l(1)", d(0, 2), Relation::kEqual, l1));
    it.push_back(make_item("d(1,-1) >= l(1)", d(1, 2), Relation::kGreaterEq, l1));
    it.push_back(make_item("l(s) < |s| l(1)", l3, Relation::kLessEq, s * l1));
    it.back().holds = l3 < s * l1;
    it.push_back(make_item("d(0,s) = l(s)", d(0, 3), Relation::kEqual, l3));
    it.push_back(make_item("d(1,s) >= l(s) - l(1) + eps0", d(1, 3), Relation::kGreaterEq, l3 - l1 + eps));
    it.push_back(make_item("d(-1,s) >= l(s) - l(1) + eps0", d(2, 3), Relation::kGreaterEq, l3 - l1 + eps));
  }
  return rep;
}

PhiReport verify_phi_inequality(const SigmaTriple &t, const GroupBackend &b) {
  const auto p = t.points(b);
  Length dm[4][4];
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      dm[i][j] = b.distance(p[i], p[j]);
  PhiReport rep;
  rep.increment = rat(b, t.increment);
  std::array<int, 4> phi{0, 1, 2, 3};
  bool first = true;
  do {
    const auto u = [&](std::size_t k) { return static_cast<std::size_t>(phi[k]); };
    const Length direct = dm[u(0)][u(3)];
    const Length legs = dm[u(0)][u(1)] + dm[u(1)][u(2)] + dm[u(2)][u(3)];
    PhiRow row{phi, rat(b, direct), rat(b, legs), rat(b, legs - direct - t.increment)};
    if (first || row.slack < rep.min_slack)
      rep.min_slack = row.slack;
    first = false;
    rep.rows.push_back(row);
  } while (std::next_permutation(phi.begin(), phi.end()));
  return rep;
}

Rational BoundExpr::eval(const std::array<Rational, 4> &vars) const {
  Rational total(0);
  for (std::size_t i = 0; i < 4; ++i)
    total += Rational(c[i]) * vars[i];
  return total;
}

std::string BoundExpr::describe(SigmaCase table) const {
  static const std::array<std::string, 4> general{"l(s1)", "l(s2)", "l(s3)", "eps0"};
  static const std::array<std::string, 4> zcase{"l(s)", "l(s)", "l(1)", "eps0"};
  const auto &names = table == SigmaCase::kZI ? zcase : general;
  std::string out;
  for (std::size_t i = 0; i < 4; ++i) {
    if (c[i] == 0)
      continue;
    const int a = std::abs(c[i]);
    if (out.empty())
      out += c[i] < 0 ? "-" : "";
    else
      out += c[i] < 0 ? " - " : " + ";
    if (a != 1)
      out += std::to_string(a) + " ";
    out += names[i];
  }
  return out.empty() ? "0" : out;
}

std::vector<TableRow> printed_table(SigmaCase c) {
  using E = BoundExpr;
  // Columns are coefficients of (l(s1), l(s2), l(s3), eps0).
  static const std::vector<TableRow> general = {
      {{0, 1, 2, 3}, E{{0, 0, 1, 0}}, E{{1, 1, 1, 0}}, E{{1, 1, 0, 0}}},
      {{0, 1, 3, 2}, E{{0, 1, 0, 0}}, E{{1, 0, 2, 0}}, E{{1, 0, 1, 0}}},
      {{0, 2, 1, 3}, E{{0, 0, 1, 0}}, E{{0, 2, 1, 0}}, E{{0, 2, 0, 0}}},
      {{0, 3, 1, 2}, E{{0, 1, 0, 0}}, E{{0, 1, 2, 0}}, E{{0, 0, 2, 0}}},
      {{0, 2, 3, 1}, E{{1, 0, 0, 0}}, E{{0, 1, 2, 0}}, E{{0, 0, 2, 0}}},
      {{0, 3, 2, 1}, E{{1, 0, 0, 0}}, E{{0, 1, 2, 0}}, E{{0, 0, 2, 0}}},
      {{1, 0, 2, 3}, E{{1, 0, 1, 0}}, E{{1, 1, 1, 0}}, E{{0, 1, 0, 0}}},
      {{1, 0, 3, 2}, E{{1, 1, 0, 0}}, E{{1, 0, 2, 0}}, E{{0, 0, 1, 0}}},
      {{1, 2, 0, 3}, E{{1, 0, 1, 0}}, E{{0, 2, 1, 0}}, E{{0, 1, 0, 0}}},
      {{1, 3, 0, 2}, E{{1, 1, 0, 0}}, E{{0, 1, 2, 0}}, E{{0, 0, 1, 0}}},
      {{2, 0, 1, 3}, E{{0, 1, 1, 0}}, E{{1, 1, 1, 0}}, E{{1, 0, 0, 0}}},
      {{2, 1, 0, 3}, E{{0, 1, 1, 0}}, E{{1, 1, 1, 0}}, E{{1, 0, 0, 0}}},
  };
  static const std::vector<TableRow> case3 = {
      {{0, 1, 2, 3}, E{{0, 1, 0, 0}}, E{{2, 1, 0, 0}}, E{{2, 0, 0, 0}}},
      {{0, 1, 3, 2}, E{{0, 1, 0, 0}}, E{{2, 1, 0, 0}}, E{{2, 0, 0, 0}}},
      {{0, 2, 3, 1}, E{{1, 0, 0, 0}}, E{{1, 2, 0, 0}}, E{{0, 2, 0, 0}}},
      {{0, 3, 2, 1}, E{{1, 0, 0, 0}}, E{{1, 2, 0, 0}}, E{{0, 2, 0, 0}}},
      {{1, 0, 2, 3}, E{{1, 1, 0, 0}}, E{{2, 1, 0, 0}}, E{{1, 0, 0, 0}}},
      {{1, 0, 3, 2}, E{{1, 1, 0, 0}}, E{{2, 1, 0, 0}}, E{{1, 0, 0, 0}}},
  };
  // Points 0, s, s^-1, 1; columns are coefficients of (l(s), -, l(1), eps0).
  static const std::vector<TableRow> zcase = {
      {{0, 1, 2, 3}, E{{0, 0, 1, 0}}, E{{1, 0, 1, 1}}, E{{1, 0, 0, 1}}},
      {{0, 2, 1, 3}, E{{0, 0, 1, 0}}, E{{1, 0, 1, 1}}, E{{1, 0, 0, 1}}},
      {{0, 3, 2, 1}, E{{1, 0, 0, 0}}, E{{0, 0, 2, 1}}, E{{0, 0, 1, 1}}},
      {{0, 2, 3, 1}, E{{1, 0, 0, 0}}, E{{-1, 0, 2, 2}}, E{{0, 0, 0, 1}}},
      {{0, 3, 1, 2}, E{{1, 0, 0, 0}}, E{{0, 0, 2, 1}}, E{{0, 0, 1, 1}}},
      {{0, 1, 3, 2}, E{{1, 0, 0, 0}}, E{{-1, 0, 2, 2}}, E{{0, 0, 0, 2}}},
      {{1, 0, 3, 2}, E{{2, 0, 0, 0}}, E{{0, 0, 2, 1}}, E{{0, 0, 0, 1}}},
      {{1, 3, 0, 2}, E{{2, 0, 0, 0}}, E{{0, 0, 2, 1}}, E{{0, 0, 0, 1}}},
      {{1, 0, 2, 3}, E{{1, 0, 1, 0}}, E{{1, 0, 1, 1}}, E{{0, 0, 0, 1}}},
      {{1, 2, 0, 3}, E{{1, 0, 1, 0}}, E{{2, 0, 1, 0}}, E{{1, 0, 0, 0}}},
      {{2, 0, 1, 3}, E{{1, 0, 1, 0}}, E{{1, 0, 1, 1}}, E{{0, 0, 0, 1}}},
      {{2, 1, 0, 3}, E{{1, 0, 1, 0}}, E{{2, 0, 1, 0}}, E{{1, 0, 0, 0}}},
  };
  switch (c) {
  case SigmaCase::kI:
  case SigmaCase::kII:
    return general;
  case SigmaCase::kIII: {
    std::vector<TableRow> rows = case3;
    for (const auto &row : general) {
      bool adjacent = false;
      for (std::size_t i = 1; i < 4; ++i)
        adjacent = adjacent || (row.phi[i - 1] + row.phi[i] == 5 && row.phi[i - 1] * row.phi[i] == 6);
      if (!adjacent)
        rows.push_back(row);
    }
    return rows;
  }
  case SigmaCase::kZI:
    return zcase;
  case SigmaCase::kZII:
    return {};
  }
  return {};
}

bool symbolic_row_holds(SigmaCase c, const TableRow &row) {
  std::array<int, 4> k{};
  for (std::size_t i = 0; i < 4; ++i)
    k[i] = row.right.c[i] - row.upper.c[i] - row.diff.c[i];
  if (k[3] < 0)
    return false;
  switch (c) {
  case SigmaCase::kI:
  case SigmaCase::kII:
    // l1 = a, l2 = a + b, l3 = a + b + c with a > 0 and b, c >= 0.
    return k[0] + k[1] + k[2] >= 0 && k[1] + k[2] >= 0 && k[2] >= 0;
  case SigmaCase::kIII:
    // l3 = l2.
    return k[0] + k[1] + k[2] >= 0 && k[1] + k[2] >= 0;
  case SigmaCase::kZI:
    // l(s) = a, l(1) = a + b with a, b > 0.
    return k[0] + k[1] + k[2] >= 0 && k[2] >= 0;
  case SigmaCase::kZII:
    return true;
  }
  return false;
}

void check_table_rows(const SigmaTriple &t, const GroupBackend &b, const std::string &realization,
                      TableReport &report, std::int64_t mutate_factor) {
  const auto rows = printed_table(t.tag);
  const auto p = t.points(b);
  const auto labels = t.labels();
  const std::array<Rational, 4> vars{rat(b, t.length[0]), rat(b, t.length[1]),
                                     rat(b, t.length[2]) * Rational(mutate_factor),
                                     t.epsilon0 ? rat(b, *t.epsilon0) : Rational(0)};
  const Rational increment = rat(b, t.increment);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto &row = rows[r];
    const auto at = [&](std::size_t k) -> const GroupElement & { return p[static_cast<std::size_t>(row.phi[k])]; };
    const Rational direct = rat(b, b.distance(at(0), at(3)));
    const Rational legs = rat(b, b.distance(at(0), at(1)) + b.distance(at(1), at(2)) + b.distance(at(2), at(3)));
    const Rational upper = row.upper.eval(vars), right = row.right.eval(vars), diff = row.diff.eval(vars);
    auto fail = [&](std::string column, std::string detail) {
      report.violations.push_back({realization, r + 1, std::move(column), format_phi(row.phi, labels) + ": " + detail});
    };
    if (direct > upper)
      fail("upper", "d = " + format_rational(direct) + " > " + row.upper.describe(t.tag) + " = " + format_rational(upper));
    if (legs < right)
      fail("right", "legs = " + format_rational(legs) + " < " + row.right.describe(t.tag) + " = " +
                        format_rational(right));
    if (legs - direct < diff)
      fail("difference", "legs - d = " + format_rational(legs - direct) + " < " + row.diff.describe(t.tag) + " = " +
                             format_rational(diff));
    if (diff < increment)
      fail("increment", row.diff.describe(t.tag) + " = " + format_rational(diff) + " < increment " +
                            format_rational(increment));
    ++report.rows_checked;
  }
}

std::vector<Realization> realize_case(SigmaCase c, const std::array<Rational, 3> &l, std::int64_t s) {
  std::vector<Realization> out;
  const auto str = [](std::int64_t v) { return std::to_string(v); };
  switch (c) {
  case SigmaCase::kI:
    out.push_back({"F2", make_free_group({l[0], l[2]})});
    out.push_back({"F3", make_free_group({l[0], l[2], l[2]})});
    out.push_back({"Z2", make_lattice(2, {}, {{"(1,0)", l[0], {}}, {"(0,1)", l[2], {}}})});
    out.push_back({"Z3", make_lattice(3, {}, {{"(1,0,0)", l[0], {}}, {"(0,1,0)", l[2], {}}, {"(0,0,1)", l[2], {}}})});
    break;
  case SigmaCase::kII:
    out.push_back({"Z2*Z2*Z2", make_free_product_c2({l[0], l[1], l[2]})});
    out.push_back({"Z x Z/2 x Z/2", make_lattice(1, {2, 2}, {{"(0,1,0)", l[0], {}}, {"(0,0,1)", l[1], {}},
                                                             {"(1,0,0)", l[2], {}}})});
    break;
  case SigmaCase::kIII:
    out.push_back({"Z3 x Z/4", make_lattice(3, {4}, {{"(0,0,0,2)", l[0], {}}, {"(0,0,0,1)", l[1], {}},
                                                     {"(1,0,0,0)", l[2], {}}, {"(0,1,0,0)", l[2], {}},
                                                     {"(0,0,1,0)", l[2], {}}})});
    break;
  case SigmaCase::kZI:
    out.push_back({"Z {+-1,+-" + str(s) + "}", make_lattice(1, {}, {{"1", l[2], {}}, {str(s), l[0], {}}})});
    break;
  case SigmaCase::kZII:
    out.push_back({"Z {+-1,+-" + str(s) + "}", make_lattice(1, {}, {{"1", l[0], {}}, {str(s), l[2], {}}})});
    break;
  }
  return out;
}

namespace {

Rational sample_length(CounterRng &rng) {
  static constexpr std::int64_t dens[] = {1, 2, 3, 4, 5, 6};
  const std::int64_t den = dens[rng.below(6)];
  const auto num = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(4 * den))) + 1;
  return Rational(num, den);
}

} // namespace

TableReport validate_tables(SigmaCase c, const TableOptions &options) {
  TableReport report;
  report.table = c;
  const auto rows = printed_table(c);
  std::set<std::array<int, 4>> seen;
  for (const auto &row : rows) {
    report.symbolic_ok = report.symbolic_ok && symbolic_row_holds(c, row);
    seen.insert(row.phi);
    seen.insert({row.phi[3], row.phi[2], row.phi[1], row.phi[0]});
  }
  report.covers_all_injections = c == SigmaCase::kZII || seen.size() == 24;

  CounterRng rng(options.seed, static_cast<std::uint64_t>(c));
  std::set<std::string> names;
  while (report.assignments < options.assignments) {
    std::array<Rational, 3> l{sample_length(rng), sample_length(rng), sample_length(rng)};
    std::sort(l.begin(), l.end());
    std::int64_t s = 2 + static_cast<std::int64_t>(rng.below(4));
    if (c == SigmaCase::kZI && !(l[0] < l[2]))
      continue;
    if (c == SigmaCase::kZII && !(l[2] < Rational(s) * l[0]))
      continue;
    ++report.assignments;
    for (const auto &real : realize_case(c, l, s)) {
      std::ostringstream tag;
      tag << real.name << " l=(" << format_rational(l[0]) << "," << format_rational(l[1]) << ","
          << format_rational(l[2]) << ")";
      names.insert(real.name);
      const auto outcome = select_sigmas(real.backend);
      if (outcome.kind != SelectionKind::kTriple || outcome.triple->tag != c) {
        report.violations.push_back({tag.str(), 0, "selection",
                                     "expected case " + std::string(to_string(c)) + ", got " +
                                         std::string(to_string(outcome.kind)) +
                                         (outcome.triple ? " " + std::string(to_string(outcome.triple->tag)) : "")});
        continue;
      }
      const SigmaTriple &t = *outcome.triple;
      check_table_rows(t, *outcome.backend, tag.str(), report, options.mutate_factor);
      const CheckReport bounds = verify_distance_bounds(t, *outcome.backend);
      report.bounds_checked += bounds.items.size();
      for (const auto &item : bounds.items)
        if (!item.holds)
          report.violations.push_back({tag.str(), 0, "bounds",
                                       item.name + ": " + format_rational(item.lhs) + " " +
                                           std::string(to_string(item.relation)) + " " + format_rational(item.rhs) +
                                           " fails"});
      const PhiReport phi = verify_phi_inequality(t, *outcome.backend);
      report.phi_checked += phi.rows.size();
      for (const auto &row : phi.rows)
        if (row.slack < 0)
          report.violations.push_back({tag.str(), 0, "phi",
                                       format_phi(row.phi, t.labels()) + ": legs " + format_rational(row.legs) +
                                           " < d + increment = " + format_rational(row.direct + phi.increment)});
    }
  }
  report.realizations.assign(names.begin(), names.end());
  return report;
}

} // namespace lamprate
