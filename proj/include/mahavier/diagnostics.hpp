#pragma once

#include "mahavier/words.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace mahavier {

/// An open subinterval of the space that the depth-bounded orbit closure of
/// some start point provably misses, with the stated margin.
struct GapInterval {
  double lo = 0.0;
  double hi = 0.0;
  double margin = 0.0;
  double from_point = 0.0;

  double width() const { return hi - lo; }
};

struct TransitivitySample {
  double point = 0.0;
  double density = 0.0;
};

/// Finite-budget transitivity certificate: PASS means every sampled forward
/// impression is delta-dense at the explored depth, never a proof.
struct TransitivityReport {
  bool pass = false;
  double worst_density = 0.0;
  double threshold = 0.0;
  int depth = 0;
  std::vector<TransitivitySample> samples;
  std::optional<GapInterval> witness;  // attached on FAIL, for the worst sample
};

TransitivityReport transitivity_certificate(const ClosedRelation& rel, int samples, int depth,
                                            double delta, std::uint64_t seed,
                                            double grid = kImpressionGrid);

/// A gap interval disjoint from the depth-bounded impression of x, or nothing
/// when that impression is already dense_delta-dense.
std::optional<GapInterval> non_transitivity_witness(const ClosedRelation& rel, double x, int depth,
                                                    double dense_delta = 0.05,
                                                    double grid = kImpressionGrid);

/// Stutter-padding certificate: for each k the padded word x_k repeats
/// coordinate m of the base word k+1 times, still enters U, and its (m+k)-th
/// shift equals the m-th shift of the base coordinatewise.
struct MixingPadCertificate {
  ForwardWord base;
  int entry_depth = 0;  // largest coordinate index U constrains
  int hit_time = 0;     // m
  std::vector<ForwardWord> padded;  // indexed by k = 0 .. k_max
  int n0 = 0;
  int n_max = 0;
  bool verified = false;
};

MixingPadCertificate mixing_pad(const ClosedRelation& rel_with_diag, const ForwardWord& base,
                                const Cylinder& U, const Cylinder& V, int m, int k_max,
                                double tol = kMembershipTol);

/// Independent re-check of an emitted certificate.
bool verify(const MixingPadCertificate& cert, const ClosedRelation& rel_with_diag,
            const Cylinder& U, const Cylinder& V, double tol = kMembershipTol);

/// Removes repeated consecutive coordinates and records the run lengths.
std::pair<ForwardWord, std::vector<int>> diagonal_collapse(const ForwardWord& w);

/// Inverse of diagonal_collapse.
ForwardWord diagonal_expand(const ForwardWord& w, const std::vector<int>& pattern);

/// A loop certificate for a dense-periodic-points argument: z is a valid word
/// with z(1) = y, z(n+1) = x, so together with (x, y) in F it closes a cycle.
struct PeriodicWitness {
  double x = 0.0;
  double y = 0.0;
  int n = 0;
  ForwardWord z;
};

bool verify(const PeriodicWitness& w, const ClosedRelation& rel, double tol = kMembershipTol);

/// The closed-form case table for the 5-interval system. Throws
/// std::domain_error when (x, y) is not in the relation.
PeriodicWitness periodic_witness_devaney5(double x, double y, double tol = kMembershipTol);

/// Breadth-first search over branch compositions for a return path from y to
/// x, deduplicating visited values on the grid.
std::optional<PeriodicWitness> periodic_witness_search(const ClosedRelation& rel, double x,
                                                       double y, int n_max,
                                                       double tol = kMembershipTol,
                                                       double grid = kImpressionGrid);

/// Length of the repeating block realized by the witness loop: n when the
/// loop start and end coincide, n+1 otherwise.
int witness_period(const PeriodicWitness& w);

/// Concatenates the witness loop `copies` times into a valid periodic word.
ForwardWord periodic_point_from_witness(const ClosedRelation& rel, const PeriodicWitness& w,
                                        int copies, double tol = kMembershipTol);

/// Two words in the same cylinder whose m-th shifts separate by more than
/// epsilon while the second stays more than epsilon away from the spine set.
struct SensitivityWitness {
  ForwardWord x;
  ForwardWord y;
  int m = 0;
  int k0 = 0;
  double separation = 0.0;
  double spine_distance = 0.0;
  double epsilon = 0.25;
};

/// Escalating-continuation witness for the 3-interval ladder systems; the
/// root branch exponent is 1/root_q (3 for the cube-root system, 2 for the
/// square-root one). Throws std::runtime_error when the cylinder admits no
/// usable start or the escalation fails to settle within 10^4 steps.
SensitivityWitness sensitivity_witness_ladder(const ClosedRelation& rel, const Cylinder& U,
                                              int root_q, double tol = kMembershipTol);

SensitivityWitness sensitivity_witness_robinson3(const Cylinder& U);

bool verify(const SensitivityWitness& w, const ClosedRelation& rel, const Cylinder& U,
            const std::vector<double>& spine, double tol = kMembershipTol);

/// Canonical representative under the spine-collapsing equivalence: the
/// all-zero word when every coordinate is a spine value, the word itself
/// otherwise.
struct QuotientClass {
  bool is_spine = false;
  ForwardWord canonical;
};

QuotientClass quotient_canonical(const ForwardWord& w, const std::vector<double>& spine,
                                 double tol = kMembershipTol);

/// Checks that the shift maps spine words to spine words and non-spine words
/// to non-spine words: exact preimage closure of the spine value set plus a
/// seeded sampled word check.
bool quotient_compatibility_check(const ClosedRelation& rel, const std::vector<double>& spine,
                                  int samples, std::uint64_t seed = 1,
                                  double tol = kMembershipTol);

/// A seeded valid word: random start, uniformly random branch choices.
ForwardWord random_word(const ClosedRelation& rel, int length, std::uint64_t seed);

}  // namespace mahavier
