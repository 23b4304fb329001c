#pragma once

#include "mahavier/diagnostics.hpp"
#include "mahavier/relation.hpp"
#include "mahavier/words.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace mahavier {

/// Multiplier symbols along a fan leg. In a forward address they mean
/// {1, r, rho}; in a backward address {1, 1/r, 1/rho}.
enum class LegSymbol : std::uint8_t { One = 0, R = 1, Rho = 2 };

/// The address (a, b) of a straight leg of the geometric realization: the
/// point at parameter t has origin coordinate t, forward coordinates given by
/// running products of the forward symbols and backward coordinates by the
/// backward ones.
struct LegAddress {
  std::vector<LegSymbol> forward;
  std::vector<LegSymbol> backward;
  NCPair pair;

  /// Largest t keeping every coordinate inside [0, 1].
  double t_max() const;

  std::string forward_string() const;   // over {'1','r','p'}
  std::string backward_string() const;  // over {'1','R','P'}
};

TwoSidedWord leg_point(const LegAddress& addr, double t);

/// Finite-window surrogate of sup_k x(k); the endpoint criterion is sup = 1.
double endpoint_sup(const TwoSidedWord& w);
double endpoint_sup(const ForwardWord& w);

struct ExtensionResult {
  ForwardWord word;
  double sup = 0.0;
  int steps = 0;
  bool reached = false;
};

/// Greedily appends multipliers from {r, rho} (rho whenever the running value
/// stays <= 1, r otherwise) until the running sup exceeds 1 - eps or
/// max_steps runs out; reached=false reports the best sup attained.
ExtensionResult endpoint_extension(const ForwardWord& w, const NCPair& pair, double eps,
                                   int max_steps);

struct FanLeg {
  LegAddress address;
  double t_max = 0.0;
};

struct FanApproximation {
  std::vector<FanLeg> legs;
  int depth = 0;
  NCPair pair;
};

/// All forward addresses over {r, rho} up to the given depth with their
/// parameter bounds; legs with t_max = 0 are pruned. backward_depth > 0
/// additionally enumerates backward addresses over the full backward
/// alphabet (two-sided legs).
FanApproximation lelek_approximation(const NCPair& pair, int depth, int backward_depth = 0);

struct DensityProbeReport {
  int trials = 0;
  int successes = 0;
  double success_fraction = 0.0;
  double eps = 0.0;
  double min_sup = 0.0;
  int max_steps_used = 0;
  double tail_metric_bound = 0.0;  // max over trials of 2^-len(sample)
  bool all_coordinates_bounded = false;
};

/// Samples points on random legs and runs endpoint_extension on each; the
/// target is a 100% success fraction.
DensityProbeReport endpoint_density_probe(const NCPair& pair, int depth, double eps, int trials,
                                          std::uint64_t seed, int max_steps = 1000);

/// One leg of a quotient Cantor fan: a branch-family itinerary anchored at
/// the collapsed spine class.
struct QuotientLeg {
  std::vector<int> itinerary;  // family indices, 0-based
};

struct QuotientFan {
  std::vector<QuotientLeg> legs;
  int depth = 0;
  int family_count = 0;
};

/// Enumerates depth-bounded branch-family itineraries whose reachable set is
/// nondegenerate; requires the spine quotient to be compatible.
QuotientFan cantor_quotient_embed(const ClosedRelation& rel, const std::vector<double>& spine,
                                  int depth);

/// Leg angle in degrees: the digit string read as a base-`base` fraction,
/// mapped affinely onto [15, 165].
double leg_angle_degrees(const std::vector<int>& digits, int base);

// Deterministic SVG 1.1 renderings: straight segments from the common origin,
// angle from the address digits, radius t_max (Lelek) or 1 (quotient).
std::string render_fan_svg(const FanApproximation& fan);
std::string render_fan_svg(const QuotientFan& fan);

}  // namespace mahavier
