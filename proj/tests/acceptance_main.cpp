// Acceptance suite: one line per criterion, every tolerance pinned in code.
#include "mahavier/diagnostics.hpp"
#include "mahavier/fan.hpp"
#include "oracles.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

using namespace mahavier;

namespace {

int failures = 0;

void criterion(const char* name, double budget_seconds, const std::function<bool()>& body) {
  const auto start = std::chrono::steady_clock::now();
  bool ok = false;
  std::string error;
  try {
    ok = body();
  } catch (const std::exception& err) {
    error = err.what();
  }
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (elapsed >= budget_seconds) ok = false;
  std::printf("[%s] %-18s (%.3fs / budget %.0fs)%s%s\n", ok ? "PASS" : "FAIL", name, elapsed,
              budget_seconds, error.empty() ? "" : " error: ", error.c_str());
  if (!ok) ++failures;
}

std::pair<double, double> random_pair(const ClosedRelation& rel, std::mt19937_64& rng) {
  const auto& iv = rel.space().intervals()[rng() % rel.space().size()];
  const double x = iv.lo + iv.length() * uniform01(rng());
  const auto img = rel.image(x);
  return {x, img[rng() % img.size()]};
}

// C1: 200 seeded pairs (x, y) in the 5-interval relation; the case-table
// witness validates at 1e-9, starts at y, ends at x, and needs n <= 3.
bool periodic_witness_suite() {
  const auto dev = builtin_relation(Builtin::Devaney5);
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 200; ++trial) {
    const auto [x, y] = random_pair(dev, rng);
    const auto w = periodic_witness_devaney5(x, y, 1e-9);
    if (w.n > 3) return false;
    if (w.z(1) != y || w.z(w.n + 1) != x) return false;
    if (!validate_word(dev, w.z, 1e-9)) return false;
  }
  return true;
}

// C2: 50 interior samples at depth 24 stay delta-dense at 0.05; on 10 samples
// every exponent-grid value with |m|, |n| <= 8 reachable within the depth is
// within 1e-6 of the computed impression.
bool transitivity_density() {
  const auto dev = builtin_relation(Builtin::Devaney5);
  const auto report = transitivity_certificate(dev, 50, 24, 0.05, 202);
  if (!report.pass || report.worst_density > 0.05) return false;

  std::mt19937_64 rng(203);
  for (int sample = 0; sample < 10; ++sample) {
    const int component = static_cast<int>(rng() % 5);
    const auto& iv = dev.space().intervals()[static_cast<std::size_t>(component)];
    const double s = iv.lo + iv.length() * (0.05 + 0.9 * uniform01(rng()));
    const double t = s - 2.0 * component;
    // fine dedup grid for the cross-check: the 1e-6 snap can merge values
    // just below a root-branch radicand whose roots then differ by > 1e-6
    const auto impression = forward_impression(dev, s, 24, 1e-12);
    for (const auto& state : oracles::devaney5_reachable_states(t, component, 24)) {
      if (std::abs(state.m) > 8 || std::abs(state.n) > 8) continue;
      const double closed = oracles::devaney5_closed_form(t, state);
      double best = 1e9;
      for (double v : impression) best = std::min(best, std::abs(v - closed));
      if (best > 1e-6) return false;
    }
  }
  return true;
}

// C3: the square-root system's impressions match the closed-form sets within
// 1e-9 and a gap interval of width >= 0.1 exists for each listed start.
bool non_transitivity() {
  const auto knud = builtin_relation(Builtin::Knudsen3);

  auto matches_exact = [&](double x, const std::vector<double>& expect) {
    const auto impression = forward_impression(knud, x, 24);
    if (impression.size() != expect.size()) return false;
    for (std::size_t i = 0; i < expect.size(); ++i)
      if (std::abs(impression[i] - expect[i]) > 1e-9) return false;
    return true;
  };
  if (!matches_exact(2.0, {0, 2, 4})) return false;
  if (!matches_exact(1.0, {1, 3, 5})) return false;

  const double x = 0.5;
  for (double v : forward_impression(knud, x, 24)) {
    double best = 1e9;
    for (int l = 0; l < 3; ++l)
      for (int k = -60; k <= 60; ++k)
        best = std::min(best, std::abs(std::pow(x, std::ldexp(1.0, k)) + 2.0 * l - v));
    if (best > 1e-9) return false;
  }

  for (double start : {2.0, 1.0, 0.5}) {
    const auto gap = non_transitivity_witness(knud, start, 24);
    if (!gap || gap->width() < 0.1) return false;
  }
  return true;
}

// C4: 20 seeded stutter-pad instances with k_max = 16: all 17 padded words
// validate, enter U, and their (m+k)-shifts equal the m-shift of the base
// coordinatewise exactly.
bool mixing_pad_suite() {
  const auto rel = builtin_relation(Builtin::Devaney5).with_diagonal();
  std::mt19937_64 rng(404);
  for (int trial = 0; trial < 20; ++trial) {
    const int m = 4 + static_cast<int>(rng() % 3);
    const ForwardWord base = random_word(rel, m + 6, rng());
    auto around = [&](const ForwardWord& w, int upto) {
      std::vector<Cylinder::Constraint> cs;
      for (int i = 1; i <= upto; ++i) cs.push_back({i, w(i) - 0.05, w(i) + 0.05});
      return Cylinder(std::move(cs));
    };
    const Cylinder U = around(base, 3);
    const Cylinder V = around(shift_forward(base, m), 3);
    const auto cert = mixing_pad(rel, base, U, V, m, 16, 1e-9);
    if (!cert.verified || cert.padded.size() != 17) return false;
    if (!verify(cert, rel, U, V, 1e-9)) return false;
    const ForwardWord target = shift_forward(base, m);
    for (int k = 0; k <= 16; ++k) {
      const auto shifted = shift_forward(cert.padded[static_cast<std::size_t>(k)], m + k);
      if (!(shifted == target)) return false;
    }
  }
  return true;
}

// C5: 20 seeded cylinders in the cube-root system: separation >= 1, spine
// distance >= 9/20, both above epsilon = 1/4, escalation settles in < 10^4.
bool sensitivity_constants() {
  const auto rob = builtin_relation(Builtin::Robinson3);
  std::mt19937_64 rng(505);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 3);
    ForwardWord seed_word = random_word(rob, n, rng());
    std::vector<Cylinder::Constraint> cs;
    for (int i = 1; i <= n; ++i) cs.push_back({i, seed_word(i) - 0.02, seed_word(i) + 0.02});
    const Cylinder U((std::vector<Cylinder::Constraint>(cs)));

    const auto w = sensitivity_witness_robinson3(U);
    if (!(w.epsilon == 0.25)) return false;
    if (w.separation < 1.0 || w.spine_distance < 0.45) return false;
    if (w.separation <= w.epsilon || w.spine_distance <= w.epsilon) return false;
    if (w.k0 >= 10000) return false;
    if (!U.matches(w.x) || !U.matches(w.y)) return false;
    if (!verify(w, rob, U, {0, 2, 4}, 1e-9)) return false;
  }
  return true;
}

// C6: exact never-connect decisions at bound 64.
bool nc_checking() {
  return is_never_connect(Rational(1, 2), Rational(3), 64) &&
         is_never_connect(Rational(2, 3), Rational(7, 2), 64) &&
         !is_never_connect(Rational(1, 2), Rational(2), 64) &&
         !is_never_connect(Rational(1, 2), Rational(4), 64) &&
         !is_never_connect(Rational(2, 3), Rational(9, 4), 64);
}

// C7: 100 seeded leg points at eps = 0.05: every greedy extension reaches
// sup >= 0.95 within 10^3 steps with all coordinates <= 1.
bool endpoint_density() {
  const auto pair = NCPair::checked(Rational(1, 2), Rational(3));
  const auto report = endpoint_density_probe(pair, 8, 0.05, 100, 707, 1000);
  return report.success_fraction == 1.0 && report.min_sup >= 0.95 &&
         report.all_coordinates_bounded && report.max_steps_used <= 1000;
}

// C8: impression BFS equals brute-force branch-string enumeration at depths
// <= 4 on all three builtin systems (set equality on the 1e-6 grid).
bool oracle_equivalence() {
  std::mt19937_64 rng(808);
  for (auto name : {Builtin::Devaney5, Builtin::Robinson3, Builtin::Knudsen3}) {
    const auto rel = builtin_relation(name);
    for (int trial = 0; trial < 20; ++trial) {
      const auto& iv = rel.space().intervals()[rng() % rel.space().size()];
      const double x = iv.lo + iv.length() * uniform01(rng());
      for (int depth = 1; depth <= 4; ++depth) {
        const auto fast = forward_impression(rel, x, depth, 1e-6);
        const auto brute = oracles::brute_force_impression(rel, x, depth);
        if (!oracles::sets_agree_on_grid(fast, brute, 1e-6)) return false;
      }
    }
  }
  return true;
}

// C9: spine preservation on 1000 seeded words per system, plus 1000
// collapse/expand round trips.
bool quotient_compatibility() {
  struct System {
    Builtin name;
    std::vector<double> spine;
  };
  const std::vector<System> systems{{Builtin::Devaney5, {0, 2, 4, 6, 8}},
                                    {Builtin::Robinson3, {0, 2, 4}},
                                    {Builtin::Knudsen3, {0, 2, 4}}};
  std::mt19937_64 rng(909);
  for (const auto& system : systems) {
    const auto rel = builtin_relation(system.name);
    if (!quotient_compatibility_check(rel, system.spine, 1000, rng()))
      return false;
    for (int trial = 0; trial < 1000; ++trial) {
      ForwardWord w = trial % 2 == 0 ? random_word(rel, 6, rng()) : [&] {
        // spine walk
        std::vector<double> coords{system.spine[rng() % system.spine.size()]};
        for (int i = 1; i < 6; ++i) {
          std::vector<double> stay;
          for (double v : rel.image(coords.back()))
            for (double s : system.spine)
              if (std::abs(v - s) <= 1e-9) stay.push_back(v);
          coords.push_back(stay[rng() % stay.size()]);
        }
        return ForwardWord(coords);
      }();
      const bool before = quotient_canonical(w, system.spine).is_spine;
      const bool after = quotient_canonical(shift_forward(w), system.spine).is_spine;
      if (before && !after) return false;
      if (!before && after) {
        // only legal when the dropped head was the lone non-spine coordinate,
        // which spine preservation forbids
        return false;
      }
    }
  }

  const auto dev = builtin_relation(Builtin::Devaney5);
  std::mt19937_64 rng2(910);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<double> coords{0.2 + 0.6 * uniform01(rng2())};
    std::vector<int> pattern;
    while (coords.size() < 5) {
      std::vector<double> moves;
      for (double v : dev.image(coords.back()))
        if (v != coords.back()) moves.push_back(v);
      coords.push_back(moves[rng2() % moves.size()]);
    }
    for (int i = 0; i < 5; ++i) pattern.push_back(1 + static_cast<int>(rng2() % 4));
    const ForwardWord w(coords);
    const auto expanded = diagonal_expand(w, pattern);
    const auto [collapsed, back] = diagonal_collapse(expanded);
    if (!(collapsed == w) || back != pattern) return false;
  }
  return true;
}

// C10: depth-8 Lelek rendering is byte-identical across runs and has exactly
// as many segments as the approximation has legs.
bool rendering_determinism() {
  const auto pair = NCPair::checked(Rational(1, 2), Rational(3));
  const auto fan = lelek_approximation(pair, 8);
  const auto first = render_fan_svg(fan);
  const auto second = render_fan_svg(lelek_approximation(pair, 8));
  if (first != second) return false;
  std::size_t lines = 0, at = 0;
  while ((at = first.find("<line ", at)) != std::string::npos) {
    ++lines;
    at += 6;
  }
  return lines == fan.legs.size();
}

}  // namespace

int main() {
  criterion("C1 periodic", 1.0, periodic_witness_suite);
  criterion("C2 transitivity", 10.0, transitivity_density);
  criterion("C3 non-transitive", 2.0, non_transitivity);
  criterion("C4 mixing pad", 2.0, mixing_pad_suite);
  criterion("C5 sensitivity", 2.0, sensitivity_constants);
  criterion("C6 never-connect", 1.0, nc_checking);
  criterion("C7 endpoint density", 2.0, endpoint_density);
  criterion("C8 oracle equality", 10.0, oracle_equivalence);
  criterion("C9 quotient", 10.0, quotient_compatibility);
  criterion("C10 rendering", 2.0, rendering_determinism);
  if (failures > 0) std::printf("%d criteria failed\n", failures);
  else std::printf("all criteria passed\n");
  return failures == 0 ? 0 : 1;
}
