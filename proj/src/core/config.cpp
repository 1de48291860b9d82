// Copyright 2026 The lamprate Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/config.hpp"

#include "core/errors.hpp"

#include <algorithm>
#include <limits>
#include <set>

namespace lamprate {

using nlohmann::json;

namespace {

std::string type_name(const json &v) { return v.type_name(); }

[[noreturn]] void fail(const std::string &where, const std::string &what) {
  throw ConfigError(where + ": " + what);
}

/// Object view that remembers which keys were consumed so unknown keys can be
/// rejected.
class Fields {
public:
  Fields(const json &obj, std::string where) : obj_(obj), where_(std::move(where)) {
    if (!obj_.is_object())
      fail(where_, "expected an object, got " + type_name(obj_));
  }

  std::string path(const std::string &key) const { return where_.empty() ? key : where_ + "." + key; }

  const json *get(const std::string &key) {
    seen_.insert(key);
    auto it = obj_.find(key);
    return it == obj_.end() ? nullptr : &*it;
  }

  const json &require(const std::string &key) {
    const json *v = get(key);
    if (!v)
      fail(path(key), "missing required field");
    return *v;
  }

  void finish() const {
    for (const auto &[key, _] : obj_.items())
      if (!seen_.contains(key))
        fail(path(key), "unknown field");
  }

private:
  const json &obj_;
  std::string where_;
  std::set<std::string> seen_;
};

std::string as_string(const json &v, const std::string &where) {
  if (!v.is_string())
    fail(where, "expected a string, got " + type_name(v));
  return v.get<std::string>();
}

std::uint64_t as_u64(const json &v, const std::string &where) {
  if (v.is_number_unsigned())
    return v.get<std::uint64_t>();
  if (v.is_number_integer()) {
    if (v.get<std::int64_t>() < 0)
      fail(where, "must be nonnegative");
    return static_cast<std::uint64_t>(v.get<std::int64_t>());
  }
  fail(where, "expected a nonnegative integer, got " + type_name(v));
}

std::int64_t as_i64(const json &v, const std::string &where) {
  if (v.is_number_integer()) {
    if (v.is_number_unsigned() && v.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX))
      fail(where, "integer out of range");
    return v.get<std::int64_t>();
  }
  fail(where, "expected an integer, got " + type_name(v));
}

Rational as_rational(const json &v, const std::string &where) {
  if (v.is_number_integer())
    return Rational(as_i64(v, where));
  if (v.is_string()) {
    try {
      return parse_rational(v.get<std::string>());
    } catch (const ConfigError &e) {
      fail(where, e.what());
    }
  }
  fail(where, "expected a rational written as a \"p/q\" string, got " + type_name(v));
}

const json &as_array(const json &v, const std::string &where) {
  if (!v.is_array())
    fail(where, "expected an array, got " + type_name(v));
  return v;
}

std::string index_path(const std::string &where, std::size_t i) { return where + "[" + std::to_string(i) + "]"; }

BackendKind parse_backend_kind(const std::string &text, const std::string &where) {
  if (text == "lattice")
    return BackendKind::kLattice;
  if (text == "free-group")
    return BackendKind::kFreeGroup;
  if (text == "free-product-c2")
    return BackendKind::kFreeProductC2;
  fail(where, "unknown backend kind '" + text + "' (lattice, free-group, free-product-c2)");
}

MeasureKind parse_measure_kind(const std::string &text, const std::string &where) {
  if (text == "walk-switch")
    return MeasureKind::kWalkSwitch;
  if (text == "switch-walk")
    return MeasureKind::kSwitchWalk;
  if (text == "custom")
    return MeasureKind::kCustom;
  fail(where, "unknown measure type '" + text + "' (walk-switch, switch-walk, custom)");
}

LampState as_lamp_state(const json &v, const std::string &where) {
  const std::int64_t s = as_i64(v, where);
  if (s < std::numeric_limits<LampState>::min() || s > std::numeric_limits<LampState>::max())
    fail(where, "lamp state out of range");
  return static_cast<LampState>(s);
}

MeasureSpec parse_measure_spec(const json &doc, const std::string &where) {
  Fields f(doc, where);
  MeasureSpec m;
  m.type = parse_measure_kind(as_string(f.require("type"), f.path("type")), f.path("type"));
  if (const json *mu0 = f.get("mu0")) {
    if (m.type == MeasureKind::kCustom)
      fail(f.path("mu0"), "not used by custom measures");
    if (mu0->is_string()) {
      if (mu0->get<std::string>() != "simple")
        fail(f.path("mu0"), "expected \"simple\" or a list of atoms");
    } else {
      const std::string at = f.path("mu0");
      const json &arr = as_array(*mu0, at);
      for (std::size_t i = 0; i < arr.size(); ++i) {
        Fields a(arr[i], index_path(at, i));
        MuAtomSpec atom;
        atom.element = as_string(a.require("element"), a.path("element"));
        atom.probability = as_rational(a.require("p"), a.path("p"));
        a.finish();
        m.mu0.push_back(std::move(atom));
      }
      if (m.mu0.empty())
        fail(at, "needs at least one atom");
    }
  }
  if (const json *ps = f.get("p_switch")) {
    if (m.type != MeasureKind::kSwitchWalk)
      fail(f.path("p_switch"), "only used by switch-walk measures");
    m.p_switch = as_rational(*ps, f.path("p_switch"));
  }
  if (const json *atoms = f.get("atoms")) {
    if (m.type != MeasureKind::kCustom)
      fail(f.path("atoms"), "only used by custom measures");
    const std::string at = f.path("atoms");
    const json &arr = as_array(*atoms, at);
    for (std::size_t i = 0; i < arr.size(); ++i) {
      Fields a(arr[i], index_path(at, i));
      CustomAtomSpec atom;
      if (const json *lamps = a.get("lamps")) {
        const std::string lp = a.path("lamps");
        const json &larr = as_array(*lamps, lp);
        for (std::size_t j = 0; j < larr.size(); ++j) {
          const std::string jp = index_path(lp, j);
          const json &pair = as_array(larr[j], jp);
          if (pair.size() != 2)
            fail(jp, "expected [element, state]");
          atom.lamps.push_back({as_string(pair[0], jp + "[0]"), as_lamp_state(pair[1], jp + "[1]")});
        }
      }
      atom.position = as_string(a.require("position"), a.path("position"));
      atom.probability = as_rational(a.require("p"), a.path("p"));
      a.finish();
      m.atoms.push_back(std::move(atom));
    }
  }
  if (m.type == MeasureKind::kCustom && m.atoms.empty())
    fail(where, "custom measures need a non-empty \"atoms\" list");
  f.finish();
  return m;
}

} // namespace

json parse_json_text(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error &e) {
    // byte offset to line and column
    std::size_t line = 1, col = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ConfigError("syntax error at line " + std::to_string(line) + ", column " + std::to_string(col) + ": " +
                      e.what());
  }
}

BackendSpec parse_backend_spec(const json &doc, const std::string &where) {
  Fields f(doc, where);
  BackendSpec spec;
  spec.kind = parse_backend_kind(as_string(f.require("kind"), f.path("kind")), f.path("kind"));
  if (spec.kind == BackendKind::kLattice) {
    spec.rank = static_cast<std::size_t>(as_u64(f.require("rank"), f.path("rank")));
    if (const json *t = f.get("torsion")) {
      const std::string tp = f.path("torsion");
      const json &arr = as_array(*t, tp);
      for (std::size_t i = 0; i < arr.size(); ++i) {
        const Coord m = as_i64(arr[i], index_path(tp, i));
        if (m < 2)
          fail(index_path(tp, i), "torsion moduli must be >= 2");
        spec.torsion.push_back(m);
      }
    }
    const std::string gp = f.path("generators");
    const json &arr = as_array(f.require("generators"), gp);
    if (arr.empty())
      fail(gp, "needs at least one generator");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      Fields g(arr[i], index_path(gp, i));
      GeneratorInput in;
      in.action = as_string(g.require("action"), g.path("action"));
      in.length = as_rational(g.require("length"), g.path("length"));
      if (const json *label = g.get("label"))
        in.label = as_string(*label, g.path("label"));
      g.finish();
      spec.generators.push_back(std::move(in));
    }
    if (f.get("lengths"))
      fail(f.path("lengths"), "lattice backends take \"generators\"");
  } else {
    const json *rank = f.get("rank");
    const json *lengths = f.get("lengths");
    if (lengths) {
      const std::string lp = f.path("lengths");
      const json &arr = as_array(*lengths, lp);
      for (std::size_t i = 0; i < arr.size(); ++i)
        spec.lengths.push_back(as_rational(arr[i], index_path(lp, i)));
      spec.rank = spec.lengths.size();
      if (rank && as_u64(*rank, f.path("rank")) != spec.rank)
        fail(f.path("rank"), "disagrees with the number of lengths");
    } else if (rank) {
      spec.rank = static_cast<std::size_t>(as_u64(*rank, f.path("rank")));
      spec.lengths.assign(spec.rank, Rational(1));
    } else {
      fail(where, "word backends need \"lengths\" or \"rank\"");
    }
    if (spec.rank == 0)
      fail(where, "rank must be positive");
    if (f.get("torsion") || f.get("generators"))
      fail(where, "\"torsion\" and \"generators\" apply to lattice backends only");
  }
  f.finish();
  return spec;
}

RunConfig parse_run_config(const json &doc) {
  Fields f(doc, "");
  RunConfig c;
  if (const json *v = f.get("name"))
    c.name = as_string(*v, "name");
  c.backend = parse_backend_spec(f.require("backend"), "backend");
  c.measure = parse_measure_spec(f.require("measure"), "measure");
  if (const json *v = f.get("lamp_modulus")) {
    c.modulus = as_lamp_state(*v, "lamp_modulus");
    if (c.modulus < 2)
      fail("lamp_modulus", "must be >= 2");
  }
  if (const json *v = f.get("lamp_cost")) {
    c.lamp_cost = as_rational(*v, "lamp_cost");
    if (c.lamp_cost < 0)
      fail("lamp_cost", "must be >= 0");
  }
  if (const json *v = f.get("horizon"))
    c.horizon = as_u64(*v, "horizon");
  if (const json *v = f.get("trials"))
    c.trials = static_cast<std::size_t>(as_u64(*v, "trials"));
  if (const json *v = f.get("seed"))
    c.seed = as_u64(*v, "seed");
  if (const json *v = f.get("checkpoints")) {
    if (v->is_string()) {
      if (v->get<std::string>() != "geometric")
        fail("checkpoints", "expected \"geometric\" or a list of times");
    } else {
      const json &arr = as_array(*v, "checkpoints");
      for (std::size_t i = 0; i < arr.size(); ++i)
        c.checkpoints.push_back(as_u64(arr[i], index_path("checkpoints", i)));
      if (c.checkpoints.empty())
        fail("checkpoints", "list must not be empty");
      std::sort(c.checkpoints.begin(), c.checkpoints.end());
      c.checkpoints.erase(std::unique(c.checkpoints.begin(), c.checkpoints.end()), c.checkpoints.end());
    }
  }
  if (const json *v = f.get("tsp")) {
    Fields t(*v, "tsp");
    if (const json *mode = t.get("mode")) {
      try {
        c.tsp = parse_tsp_strategy(as_string(*mode, "tsp.mode"));
      } catch (const Error &e) {
        fail("tsp.mode", e.what());
      }
    }
    if (const json *cap = t.get("cap")) {
      c.dp_cap = static_cast<std::size_t>(as_u64(*cap, "tsp.cap"));
      if (c.dp_cap < 1 || c.dp_cap > 24)
        fail("tsp.cap", "must lie in [1, 24]");
    }
    t.finish();
  }
  if (const json *v = f.get("jobs")) {
    c.jobs = static_cast<std::size_t>(as_u64(*v, "jobs"));
    if (c.jobs == 0)
      fail("jobs", "must be positive");
  }
  if (const json *v = f.get("projection_trials"))
    c.projection_trials = static_cast<std::size_t>(as_u64(*v, "projection_trials"));
  if (const json *v = f.get("output")) {
    Fields o(*v, "output");
    if (const json *p = o.get("results"))
      c.output.results = as_string(*p, "output.results");
    if (const json *p = o.get("checkpoints"))
      c.output.checkpoints = as_string(*p, "output.checkpoints");
    if (const json *p = o.get("csv"))
      c.output.csv = as_string(*p, "output.csv");
    o.finish();
  }
  if (!c.checkpoints.empty() && c.checkpoints.back() > c.horizon)
    fail("checkpoints", "time " + std::to_string(c.checkpoints.back()) + " exceeds the horizon");
  f.finish();
  return c;
}

json to_json(const BackendSpec &spec) {
  json out;
  out["kind"] = std::string(to_string(spec.kind));
  if (spec.kind == BackendKind::kLattice) {
    out["rank"] = spec.rank;
    out["torsion"] = spec.torsion;
    json gens = json::array();
    for (const auto &g : spec.generators) {
      json row{{"action", g.action}, {"length", format_rational(g.length)}};
      if (!g.label.empty())
        row["label"] = g.label;
      gens.push_back(std::move(row));
    }
    out["generators"] = std::move(gens);
  } else {
    json lengths = json::array();
    for (const auto &l : spec.lengths)
      lengths.push_back(format_rational(l));
    out["lengths"] = std::move(lengths);
  }
  return out;
}

json to_json(const RunConfig &c) {
  json measure{{"type", std::string(to_string(c.measure.type))}};
  if (c.measure.type == MeasureKind::kCustom) {
    json atoms = json::array();
    for (const auto &a : c.measure.atoms) {
      json lamps = json::array();
      for (const auto &l : a.lamps)
        lamps.push_back(json::array({l.element, l.state}));
      atoms.push_back({{"lamps", std::move(lamps)}, {"position", a.position}, {"p", format_rational(a.probability)}});
    }
    measure["atoms"] = std::move(atoms);
  } else {
    if (c.measure.mu0.empty()) {
      measure["mu0"] = "simple";
    } else {
      json mu0 = json::array();
      for (const auto &a : c.measure.mu0)
        mu0.push_back({{"element", a.element}, {"p", format_rational(a.probability)}});
      measure["mu0"] = std::move(mu0);
    }
    if (c.measure.type == MeasureKind::kSwitchWalk)
      measure["p_switch"] = format_rational(c.measure.p_switch);
  }
  json out{{"name", c.name},
           {"backend", to_json(c.backend)},
           {"measure", std::move(measure)},
           {"lamp_modulus", c.modulus},
           {"lamp_cost", format_rational(c.lamp_cost)},
           {"horizon", c.horizon},
           {"trials", c.trials},
           {"seed", c.seed},
           {"tsp", {{"mode", std::string(to_string(c.tsp))}, {"cap", c.dp_cap}}},
           {"jobs", c.jobs},
           {"projection_trials", c.projection_trials}};
  if (c.checkpoints.empty())
    out["checkpoints"] = "geometric";
  else
    out["checkpoints"] = c.checkpoints;
  json output = json::object();
  if (!c.output.results.empty())
    output["results"] = c.output.results;
  if (!c.output.checkpoints.empty())
    output["checkpoints"] = c.output.checkpoints;
  if (!c.output.csv.empty())
    output["csv"] = c.output.csv;
  out["output"] = std::move(output);
  return out;
}

BackendPtr build_backend(const BackendSpec &spec) {
  try {
    switch (spec.kind) {
    case BackendKind::kLattice:
      return make_lattice(spec.rank, spec.torsion, spec.generators);
    case BackendKind::kFreeGroup:
      return make_free_group(spec.lengths);
    case BackendKind::kFreeProductC2:
      return make_free_product_c2(spec.lengths);
    }
  } catch (const ConfigError &e) {
    throw ConfigError(std::string("backend: ") + e.what());
  } catch (const UsageError &e) {
    throw ConfigError(std::string("backend: ") + e.what());
  }
  throw ConfigError("backend: unknown kind");
}

StepMeasure build_measure(const RunConfig &config, const BackendPtr &backend) {
  const GroupBackend &b = *backend;
  auto element = [&](const std::string &text, const std::string &where) {
    try {
      return b.parse(text);
    } catch (const Error &e) {
      fail(where, e.what());
    }
  };
  const MeasureSpec &m = config.measure;
  try {
    if (m.type == MeasureKind::kCustom) {
      std::vector<StepMeasure::Atom> atoms;
      for (std::size_t i = 0; i < m.atoms.size(); ++i) {
        const auto &a = m.atoms[i];
        const std::string at = index_path("measure.atoms", i);
        Configuration eta(config.modulus);
        for (const auto &l : a.lamps)
          eta.add(element(l.element, at + ".lamps"), l.state);
        atoms.push_back({WreathElement{std::move(eta), element(a.position, at + ".position")}, a.probability});
      }
      return make_custom(backend, std::move(atoms), config.modulus);
    }
    StepDistribution mu0 = [&] {
      if (m.mu0.empty())
        return StepDistribution::simple(backend);
      std::vector<StepDistribution::Atom> atoms;
      for (std::size_t i = 0; i < m.mu0.size(); ++i)
        atoms.push_back({element(m.mu0[i].element, index_path("measure.mu0", i) + ".element"), m.mu0[i].probability});
      return StepDistribution(backend, std::move(atoms));
    }();
    if (m.type == MeasureKind::kWalkSwitch)
      return make_walk_switch(mu0, config.modulus);
    return make_switch_walk(mu0, m.p_switch, config.modulus);
  } catch (const ConfigError &e) {
    const std::string what = e.what();
    if (what.rfind("measure", 0) == 0)
      throw;
    throw ConfigError("measure: " + what);
  } catch (const UsageError &e) {
    throw ConfigError(std::string("measure: ") + e.what());
  }
}

} // namespace lamprate
