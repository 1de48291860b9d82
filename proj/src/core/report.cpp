// Copyright 2026 The lamprate Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/report.hpp"

#include "core/errors.hpp"

#include <cstdio>

namespace lamprate {

using nlohmann::json;

json to_json(const Interval &ci) { return json::array({ci.lo, ci.hi}); }

json to_json(const MeanEstimate &m) {
  return {{"mean", m.mean}, {"sd", m.sd}, {"samples", m.samples}, {"ci99", to_json(m.ci)}};
}

json to_json(const ProportionEstimate &p) {
  return {{"p", p.p}, {"successes", p.successes}, {"trials", p.trials}, {"ci99", to_json(p.ci)}};
}

json to_json(const RateEstimates &r) {
  json out{{"horizon", r.horizon},
           {"trials", r.trials},
           {"seed", r.seed},
           {"lamp_cost", format_rational(r.lamp_cost)},
           {"l0", to_json(r.l0)},
           {"lsupp", to_json(r.lsupp)},
           {"lts", r.lts ? to_json(*r.lts) : json()},
           {"l", r.l ? to_json(*r.l) : json()},
           {"acceleration", r.acceleration ? to_json(*r.acceleration) : json()},
           {"slopes",
            {{"l0", r.slope_l0}, {"lsupp", r.slope_lsupp}, {"lts", r.slope_lts ? json(*r.slope_lts) : json()}}},
           {"range_rate", to_json(r.range_rate)},
           {"return_frequency", to_json(r.return_freq)},
           {"heuristic_fraction", r.heuristic_fraction},
           {"final_heuristic_fraction", r.final_heuristic_fraction},
           {"grade", r.exact_grade ? "exact" : "heuristic"}};
  return out;
}

json to_json(const IdentityReport &r) {
  return {{"lsupp", r.lsupp.mean},
          {"p_return", to_json(r.p_return.probability)},
          {"return_horizon", r.p_return.horizon},
          {"caveat", r.p_return.caveat},
          {"predicted", r.predicted},
          {"discrepancy", r.discrepancy},
          {"joint_half_width99", r.joint_half_width}};
}

json to_json(const RangeLaw &r) {
  json out{{"rate", to_json(r.rate)}};
  out["complement"] = r.complement ? json(*r.complement) : json();
  out["discrepancy"] = r.discrepancy ? json(*r.discrepancy) : json();
  return out;
}

namespace {

Interval interval_from_json(const json &doc) { return {doc.at(0).get<double>(), doc.at(1).get<double>()}; }

} // namespace

MeanEstimate mean_from_json(const json &doc) {
  MeanEstimate m;
  m.mean = doc.at("mean").get<double>();
  m.sd = doc.at("sd").get<double>();
  m.samples = doc.at("samples").get<std::size_t>();
  m.ci = interval_from_json(doc.at("ci99"));
  return m;
}

ProportionEstimate proportion_from_json(const json &doc) {
  ProportionEstimate p;
  p.p = doc.at("p").get<double>();
  p.successes = doc.at("successes").get<std::size_t>();
  p.trials = doc.at("trials").get<std::size_t>();
  p.ci = interval_from_json(doc.at("ci99"));
  return p;
}

RateEstimates rate_estimates_from_json(const json &doc) {
  try {
    RateEstimates r;
    r.horizon = doc.at("horizon").get<std::uint64_t>();
    r.trials = doc.at("trials").get<std::size_t>();
    r.seed = doc.at("seed").get<std::uint64_t>();
    r.lamp_cost = parse_rational(doc.at("lamp_cost").get<std::string>());
    r.l0 = mean_from_json(doc.at("l0"));
    r.lsupp = mean_from_json(doc.at("lsupp"));
    if (!doc.at("lts").is_null())
      r.lts = mean_from_json(doc.at("lts"));
    if (!doc.at("l").is_null())
      r.l = mean_from_json(doc.at("l"));
    if (!doc.at("acceleration").is_null())
      r.acceleration = mean_from_json(doc.at("acceleration"));
    const json &s = doc.at("slopes");
    r.slope_l0 = s.at("l0").get<double>();
    r.slope_lsupp = s.at("lsupp").get<double>();
    if (!s.at("lts").is_null())
      r.slope_lts = s.at("lts").get<double>();
    r.range_rate = mean_from_json(doc.at("range_rate"));
    r.return_freq = proportion_from_json(doc.at("return_frequency"));
    r.heuristic_fraction = doc.at("heuristic_fraction").get<double>();
    r.final_heuristic_fraction = doc.at("final_heuristic_fraction").get<double>();
    r.exact_grade = doc.at("grade").get<std::string>() == "exact";
    return r;
  } catch (const json::exception &e) {
    throw ConfigError(std::string("malformed estimates document: ") + e.what());
  }
}

json checkpoint_record(const GroupBackend &backend, const TrajectoryRecord &record, const CheckpointRow &row) {
  json out{{"trial", record.trial},
           {"seed", record.seed},
           {"n", row.n},
           {"d", format_rational(backend.to_rational(row.distance))},
           {"supp", row.support},
           {"range", row.range}};
  if (row.tsp) {
    out["d_ts"] = format_rational(backend.to_rational(*row.tsp));
    out["mode"] = std::string(to_string(row.mode));
  } else {
    out["d_ts"] = nullptr;
    out["mode"] = nullptr;
  }
  return out;
}

std::string csv_header() {
  return "name,horizon,trials,seed,lamp_cost,l0,l0_lo,l0_hi,lsupp,lsupp_lo,lsupp_hi,lts,lts_lo,lts_hi,"
         "accel,accel_lo,accel_hi,range_rate,return_freq,p_return,identity_discrepancy,grade";
}

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

void append_mean(std::string &out, const std::optional<MeanEstimate> &m) {
  if (m)
    out += "," + num(m->mean) + "," + num(m->ci.lo) + "," + num(m->ci.hi);
  else
    out += ",,,";
}

std::string quoted(const std::string &s) {
  if (s.find_first_of(",\"\n") == std::string::npos)
    return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"')
      out += '"';
    out += c;
  }
  return out + "\"";
}

} // namespace

std::string csv_row(const std::string &name, const RateEstimates &r, const IdentityReport *identity) {
  std::string out = quoted(name) + "," + std::to_string(r.horizon) + "," + std::to_string(r.trials) + "," +
                    std::to_string(r.seed) + "," + format_rational(r.lamp_cost);
  append_mean(out, r.l0);
  append_mean(out, r.lsupp);
  append_mean(out, r.lts);
  append_mean(out, r.acceleration);
  out += "," + num(r.range_rate.mean) + "," + num(r.return_freq.p);
  if (identity)
    out += "," + num(identity->p_return.probability.p) + "," + num(identity->discrepancy);
  else
    out += ",,";
  out += r.exact_grade ? ",exact" : ",heuristic";
  return out;
}

} // namespace lamprate
