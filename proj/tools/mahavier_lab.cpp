// mahavier-lab: certificates, orbits, witnesses and fan renderings for
// closed-relation shift dynamics on interval unions.

#include "mahavier/diagnostics.hpp"
#include "mahavier/fan.hpp"
#include "mahavier/json_io.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

using namespace mahavier;
using nlohmann::json;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitInputError = 2;
constexpr int kExitBudget = 3;

struct Options {
  std::string relation = "devaney_5";
  std::string pair = "1/2,3";
  std::string out;
  std::uint64_t seed = 1;
  int depth = 24;
  int samples = 50;
  double delta = 0.05;
  double eps = 0.05;
  double tol = 1e-9;
  int k_max = 16;
  int n_max = 8;
  int backward_depth = 0;
  double start = 0.5;
  double x = 0.0;
  double y = 0.0;
  bool search = false;
  std::string kind = "periodic";
  std::string fan = "lelek";
  std::string spine = "0,2,4";
  std::string cylinder;
};

NCPair parse_pair(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos)
    throw std::invalid_argument("expected --pair as \"r,rho\", e.g. \"1/2,3\"");
  return NCPair::checked(parse_rational(text.substr(0, comma)),
                         parse_rational(text.substr(comma + 1)));
}

ClosedRelation resolve_relation(const Options& opt) {
  if (opt.relation == "lelek" || opt.relation == "lelek_diag")
    return builtin_relation(opt.relation, parse_pair(opt.pair));
  if (opt.relation == "devaney_5" || opt.relation == "robinson_3" || opt.relation == "knudsen_3")
    return builtin_relation(opt.relation);
  return io::load_relation(opt.relation);
}

std::vector<double> parse_values(const std::string& text) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) values.push_back(std::stod(item));
  return values;
}

void emit(const Options& opt, const std::string& payload) {
  if (opt.out.empty()) std::cout << payload;
  else io::write_file(opt.out, payload);
}

int cmd_certify(const Options& opt) {
  const ClosedRelation base_rel = resolve_relation(opt);
  json report;
  report["relation"] = opt.relation;
  report["seed"] = opt.seed;

  const auto transitivity =
      transitivity_certificate(base_rel, opt.samples, opt.depth, opt.delta, opt.seed);
  report["transitivity"] = io::to_json(transitivity);

  // Mixing side of the pipeline: pad a seeded base word over the relation
  // with the diagonal added.
  const ClosedRelation padded_rel = base_rel.with_diagonal();
  const int hit_time = 4 + static_cast<int>(opt.seed % 3);
  const int window = 3;
  const ForwardWord base = random_word(padded_rel, hit_time + window + 2, opt.seed);
  auto around = [&](const ForwardWord& w) {
    std::vector<Cylinder::Constraint> cs;
    for (int i = 1; i <= window; ++i) cs.push_back({i, w(i) - 0.05, w(i) + 0.05});
    return Cylinder(std::move(cs));
  };
  const Cylinder U = around(base);
  const Cylinder V = around(shift_forward(base, hit_time));
  const auto cert = mixing_pad(padded_rel, base, U, V, hit_time, opt.k_max, opt.tol);
  report["mixing"] = io::to_json(cert);
  report["mixing"]["U"] = io::cylinder_to_json(U);
  report["mixing"]["V"] = io::cylinder_to_json(V);

  bool self_check = verify(cert, padded_rel, U, V, opt.tol);
  if (transitivity.witness) {
    // The gap interval must really be disjoint from the impression it was
    // derived from.
    const auto impression =
        forward_impression(base_rel, transitivity.witness->from_point, opt.depth);
    for (double v : impression)
      if (v > transitivity.witness->lo && v < transitivity.witness->hi) self_check = false;
  }
  report["self_check"] = self_check;

  const bool pass = transitivity.pass && cert.verified && self_check;
  report["pass"] = pass;
  emit(opt, report.dump(2) + "\n");
  return pass ? kExitPass : kExitFail;
}

int cmd_orbit(const Options& opt) {
  const ClosedRelation rel = resolve_relation(opt);
  if (!rel.space().contains(opt.start, opt.tol))
    throw std::domain_error("orbit: start point outside the space");

  struct Row {
    int id, parent, index;
    double value;
  };
  std::vector<Row> rows{{0, -1, 1, opt.start}};
  std::vector<int> frontier{0};
  for (int d = 0; d < opt.depth; ++d) {
    std::vector<int> next;
    for (int id : frontier)
      for (double v : rel.image(rows[static_cast<std::size_t>(id)].value, opt.tol)) {
        rows.push_back({static_cast<int>(rows.size()), id, d + 2, v});
        next.push_back(rows.back().id);
      }
    frontier = std::move(next);
  }

  std::string csv = "id,parent,index,value\n";
  char line[128];
  for (const auto& row : rows) {
    std::snprintf(line, sizeof(line), "%d,%d,%d,%.17g\n", row.id, row.parent, row.index,
                  row.value);
    csv += line;
  }
  emit(opt, csv);
  return kExitPass;
}

int cmd_render(const Options& opt) {
  if (opt.fan == "lelek") {
    if (opt.depth > 14) throw std::invalid_argument("render: lelek depth capped at 14");
    const auto fan = lelek_approximation(parse_pair(opt.pair), opt.depth, opt.backward_depth);
    emit(opt, render_fan_svg(fan));
    return kExitPass;
  }
  if (opt.fan == "quotient") {
    if (opt.depth > 8) throw std::invalid_argument("render: quotient depth capped at 8");
    const ClosedRelation rel = resolve_relation(opt);
    const auto fan = cantor_quotient_embed(rel, parse_values(opt.spine), opt.depth);
    emit(opt, render_fan_svg(fan));
    return kExitPass;
  }
  throw std::invalid_argument("render: --fan must be lelek or quotient");
}

int cmd_witness(const Options& opt) {
  const ClosedRelation rel = resolve_relation(opt);
  json out;
  out["kind"] = opt.kind;

  if (opt.kind == "periodic") {
    std::optional<PeriodicWitness> witness;
    if (!opt.search && opt.relation == "devaney_5") {
      witness = periodic_witness_devaney5(opt.x, opt.y, opt.tol);
    } else {
      witness = periodic_witness_search(rel, opt.x, opt.y, opt.n_max, opt.tol);
      if (!witness) {
        std::cerr << "no periodic witness within n_max = " << opt.n_max << "\n";
        return kExitBudget;
      }
    }
    out["witness"] = io::to_json(*witness);
    out["self_check"] = verify(*witness, rel, opt.tol);
  } else if (opt.kind == "sensitivity") {
    if (opt.cylinder.empty()) throw std::invalid_argument("witness: --cylinder required");
    const json spec = opt.cylinder.front() == '['
                          ? json::parse(opt.cylinder)
                          : json::parse(io::read_file(opt.cylinder));
    const Cylinder U = io::cylinder_from_json(spec);
    const int root_q = opt.relation == "knudsen_3" ? 2 : 3;
    std::optional<SensitivityWitness> witness;
    try {
      witness = sensitivity_witness_ladder(rel, U, root_q, opt.tol);
    } catch (const std::runtime_error& err) {
      std::cerr << err.what() << "\n";
      return kExitBudget;
    }
    out["witness"] = io::to_json(*witness);
    out["self_check"] = verify(*witness, rel, U, {0, 2, 4}, opt.tol);
  } else if (opt.kind == "transitive") {
    const auto gap = non_transitivity_witness(rel, opt.x, opt.depth, opt.eps);
    if (gap) {
      std::cerr << "impression of " << opt.x << " is not dense at depth " << opt.depth << "\n";
      return kExitBudget;
    }
    const auto impression = forward_impression(rel, opt.x, opt.depth);
    out["witness"] = {{"point", opt.x},
                      {"depth", opt.depth},
                      {"density", delta_density(impression, rel.space())},
                      {"impression_size", impression.size()}};
    out["self_check"] = delta_density(impression, rel.space()) <= opt.eps;
  } else {
    throw std::invalid_argument("witness: --kind must be periodic, sensitivity or transitive");
  }

  if (!out.value("self_check", false)) return kExitFail;
  emit(opt, out.dump(2) + "\n");
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"closed-relation shift dynamics: certificates, witnesses, fans"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--relation", opt.relation, "builtin name or JSON spec path");
    cmd->add_option("--pair", opt.pair, "never-connect pair r,rho (e.g. 1/2,3)");
    cmd->add_option("--seed", opt.seed, "random seed");
    cmd->add_option("--out", opt.out, "output path (default: stdout)");
    cmd->add_option("--depth", opt.depth, "exploration depth");
    cmd->add_option("--tol", opt.tol, "adjacency tolerance");
  };

  auto* certify = app.add_subcommand("certify", "transitivity + mixing pipeline");
  add_common(certify);
  certify->add_option("--samples", opt.samples, "sample count");
  certify->add_option("--delta", opt.delta, "density threshold");
  certify->add_option("--kmax", opt.k_max, "stutter padding budget");

  auto* orbit = app.add_subcommand("orbit", "extensions tree dump (CSV)");
  add_common(orbit);
  orbit->add_option("--start", opt.start, "start point")->required();

  auto* render = app.add_subcommand("render", "SVG fan rendering");
  add_common(render);
  render->add_option("--fan", opt.fan, "lelek or quotient");
  render->add_option("--spine", opt.spine, "spine values, e.g. 0,2,4");
  render->add_option("--backward-depth", opt.backward_depth, "two-sided leg depth");

  auto* witness = app.add_subcommand("witness", "periodic/sensitivity/transitive witnesses");
  add_common(witness);
  witness->add_option("--kind", opt.kind, "periodic, sensitivity or transitive");
  witness->add_option("--x", opt.x, "first coordinate of the relation pair / start point");
  witness->add_option("--y", opt.y, "second coordinate of the relation pair");
  witness->add_option("--nmax", opt.n_max, "periodic search budget");
  witness->add_option("--cylinder", opt.cylinder, "cylinder spec (JSON inline or path)");
  witness->add_flag("--search", opt.search, "force breadth-first search");
  witness->add_option("--eps", opt.eps, "density epsilon for transitive witnesses");

  CLI11_PARSE(app, argc, argv);
  if (render->parsed() && render->count("--depth") == 0) opt.depth = opt.fan == "lelek" ? 8 : 4;
  if (orbit->parsed() && orbit->count("--depth") == 0) opt.depth = 5;

  try {
    if (certify->parsed()) return cmd_certify(opt);
    if (orbit->parsed()) return cmd_orbit(opt);
    if (render->parsed()) return cmd_render(opt);
    return cmd_witness(opt);
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitInputError;
  }
}
