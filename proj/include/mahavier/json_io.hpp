#pragma once

#include "mahavier/diagnostics.hpp"
#include "mahavier/fan.hpp"
#include "mahavier/relation.hpp"
#include "mahavier/words.hpp"

#include <json.hpp>

#include <string>

namespace mahavier::io {

using nlohmann::json;

// Relation specs:
// {
//   "space": [[lo, hi], ...],
//   "diagonal": bool,
//   "branches": [
//     {"domain": [lo, hi], "form": "affine", "slope": "p/q", "offset": "p/q",
//      "family": int?},
//     {"domain": [lo, hi], "form": "power", "shift_in": "p/q",
//      "exponent": "p/q", "offset_out": "p/q", "family": int?}
//   ]
// }
// Rationals travel as "p/q" strings; bare integers are accepted on input.
ClosedRelation relation_from_json(const json& spec);
json relation_to_json(const ClosedRelation& rel);
ClosedRelation load_relation(const std::string& path);

// Cylinder specs: [{"index": i, "lo": a, "hi": b}, ...]
Cylinder cylinder_from_json(const json& spec);
json cylinder_to_json(const Cylinder& cylinder);

json word_to_json(const ForwardWord& w);
ForwardWord word_from_json(const json& spec);

json to_json(const GapInterval& gap);
json to_json(const TransitivityReport& report);
json to_json(const MixingPadCertificate& cert);
json to_json(const PeriodicWitness& w);
json to_json(const SensitivityWitness& w);
json to_json(const DensityProbeReport& report);

/// Leg list export: [{"address": ..., "t_max": ...}, ...]
json legs_to_json(const FanApproximation& fan);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace mahavier::io
