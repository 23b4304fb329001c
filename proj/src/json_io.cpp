#include "mahavier/json_io.hpp"

#include <fstream>
#include <sstream>

namespace mahavier::io {

namespace {

Rational rational_field(const json& node) {
  if (node.is_string()) return parse_rational(node.get<std::string>());
  if (node.is_number_integer()) return Rational(node.get<long long>());
  throw std::invalid_argument("relation spec: rationals must be \"p/q\" strings");
}

Interval interval_field(const json& node) {
  if (!node.is_array() || node.size() != 2)
    throw std::invalid_argument("relation spec: intervals must be [lo, hi]");
  return Interval{node[0].get<double>(), node[1].get<double>()};
}

}  // namespace

ClosedRelation relation_from_json(const json& spec) {
  if (!spec.contains("space")) throw std::invalid_argument("relation spec: missing \"space\"");
  std::vector<Interval> intervals;
  for (const auto& node : spec.at("space")) intervals.push_back(interval_field(node));
  IntervalUnion space(std::move(intervals));

  std::vector<BranchMap> branches;
  for (const auto& node : spec.value("branches", json::array())) {
    const Interval domain = interval_field(node.at("domain"));
    const std::string form = node.at("form").get<std::string>();
    const int family = node.value("family", -1);
    if (form == "affine") {
      branches.push_back(BranchMap::affine(domain, rational_field(node.at("slope")),
                                           rational_field(node.at("offset")), family));
    } else if (form == "power") {
      branches.push_back(BranchMap::shifted_power(domain, rational_field(node.at("shift_in")),
                                                  rational_field(node.at("exponent")),
                                                  rational_field(node.at("offset_out")), family));
    } else {
      throw std::invalid_argument("relation spec: unknown branch form '" + form + "'");
    }
  }
  return ClosedRelation(std::move(space), std::move(branches), spec.value("diagonal", false));
}

json relation_to_json(const ClosedRelation& rel) {
  json spec;
  spec["space"] = json::array();
  for (const auto& iv : rel.space().intervals()) spec["space"].push_back({iv.lo, iv.hi});
  spec["diagonal"] = rel.include_diagonal();
  spec["branches"] = json::array();
  for (const auto& b : rel.branches()) {
    json node;
    node["domain"] = {b.domain().lo, b.domain().hi};
    if (b.form() == BranchForm::Affine) {
      node["form"] = "affine";
      node["slope"] = format_rational(b.param_a());
      node["offset"] = format_rational(b.param_b());
    } else {
      node["form"] = "power";
      node["shift_in"] = format_rational(b.param_a());
      node["exponent"] = format_rational(b.exponent());
      node["offset_out"] = format_rational(b.param_b());
    }
    if (b.family() >= 0) node["family"] = b.family();
    spec["branches"].push_back(std::move(node));
  }
  return spec;
}

ClosedRelation load_relation(const std::string& path) {
  return relation_from_json(json::parse(read_file(path)));
}

Cylinder cylinder_from_json(const json& spec) {
  if (!spec.is_array()) throw std::invalid_argument("cylinder spec: expected an array");
  std::vector<Cylinder::Constraint> constraints;
  for (const auto& node : spec)
    constraints.push_back(
        {node.at("index").get<int>(), node.at("lo").get<double>(), node.at("hi").get<double>()});
  return Cylinder(std::move(constraints));
}

json cylinder_to_json(const Cylinder& cylinder) {
  json out = json::array();
  for (const auto& c : cylinder.constraints())
    out.push_back({{"index", c.index}, {"lo", c.lo}, {"hi", c.hi}});
  return out;
}

json word_to_json(const ForwardWord& w) { return json(w.coords()); }

ForwardWord word_from_json(const json& spec) {
  return ForwardWord(spec.get<std::vector<double>>());
}

json to_json(const GapInterval& gap) {
  return {{"lo", gap.lo}, {"hi", gap.hi}, {"margin", gap.margin}, {"from_point", gap.from_point}};
}

json to_json(const TransitivityReport& report) {
  json out;
  out["pass"] = report.pass;
  out["worst_density"] = report.worst_density;
  out["threshold"] = report.threshold;
  out["depth"] = report.depth;
  out["samples"] = json::array();
  for (const auto& s : report.samples)
    out["samples"].push_back({{"point", s.point}, {"density", s.density}});
  if (report.witness) out["witness"] = to_json(*report.witness);
  return out;
}

json to_json(const MixingPadCertificate& cert) {
  json out;
  out["base"] = word_to_json(cert.base);
  out["entry_depth"] = cert.entry_depth;
  out["hit_time"] = cert.hit_time;
  out["verified_range"] = {cert.n0, cert.n_max};
  out["verified"] = cert.verified;
  out["padded"] = json::array();
  for (const auto& w : cert.padded) out["padded"].push_back(word_to_json(w));
  return out;
}

json to_json(const PeriodicWitness& w) {
  return {{"x", w.x}, {"y", w.y}, {"n", w.n}, {"z", word_to_json(w.z)},
          {"period", witness_period(w)}};
}

json to_json(const SensitivityWitness& w) {
  return {{"x", word_to_json(w.x)},
          {"y", word_to_json(w.y)},
          {"m", w.m},
          {"k0", w.k0},
          {"separation", w.separation},
          {"spine_distance", w.spine_distance},
          {"epsilon", w.epsilon}};
}

json to_json(const DensityProbeReport& report) {
  return {{"trials", report.trials},
          {"successes", report.successes},
          {"success_fraction", report.success_fraction},
          {"eps", report.eps},
          {"min_sup", report.min_sup},
          {"max_steps_used", report.max_steps_used},
          {"tail_metric_bound", report.tail_metric_bound},
          {"all_coordinates_bounded", report.all_coordinates_bounded}};
}

json legs_to_json(const FanApproximation& fan) {
  json out = json::array();
  for (const auto& leg : fan.legs) {
    json node;
    node["address"] = leg.address.forward_string();
    if (!leg.address.backward.empty()) node["backward"] = leg.address.backward_string();
    node["t_max"] = leg.t_max;
    out.push_back(std::move(node));
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << contents;
}

}  // namespace mahavier::io
