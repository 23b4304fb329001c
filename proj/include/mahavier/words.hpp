#pragma once

#include "mahavier/relation.hpp"

#include <cstdint>
#include <vector>

namespace mahavier {

/// Default snap distance when deduplicating orbit-closure values.
inline constexpr double kImpressionGrid = 1e-6;

/// A finite prefix (x_1, ..., x_n) of a one-sided Mahavier word. Coordinates
/// are addressed 1-based, matching the cylinder indexing.
class ForwardWord {
 public:
  explicit ForwardWord(std::vector<double> coords);

  int length() const { return static_cast<int>(coords_.size()); }
  double operator()(int i) const;  // 1-based
  const std::vector<double>& coords() const { return coords_; }

  ForwardWord appended(double value) const;
  ForwardWord prefix(int n) const;

  bool operator==(const ForwardWord& other) const { return coords_ == other.coords_; }

 private:
  std::vector<double> coords_;
};

/// A finite window of a two-sided word, with integer indices and a marked
/// origin at index 0. Shifting re-marks the origin; no data is lost.
class TwoSidedWord {
 public:
  TwoSidedWord(std::vector<double> coords, int origin_position);

  int min_index() const { return -origin_; }
  int max_index() const { return static_cast<int>(coords_.size()) - 1 - origin_; }
  double operator()(int index) const;

  /// Re-marks the origin one step right (+1) or left (-1).
  TwoSidedWord shifted(int direction) const;

  const std::vector<double>& coords() const { return coords_; }
  int origin_position() const { return origin_; }

  bool operator==(const TwoSidedWord& other) const {
    return origin_ == other.origin_ && coords_ == other.coords_;
  }

 private:
  std::vector<double> coords_;
  int origin_ = 0;
};

/// A basic open set constraining finitely many coordinates; membership uses
/// strict open-interval comparison with no tolerance.
class Cylinder {
 public:
  struct Constraint {
    int index;
    double lo, hi;
  };

  Cylinder() = default;
  explicit Cylinder(std::vector<Constraint> constraints);

  const std::vector<Constraint>& constraints() const { return constraints_; }
  bool empty() const { return constraints_.empty(); }
  int max_index() const;

  /// False when a constrained coordinate lies outside its interval or beyond
  /// the word's window.
  bool matches(const ForwardWord& w) const;
  bool matches(const TwoSidedWord& w) const;

 private:
  std::vector<Constraint> constraints_;
};

bool validate_word(const ClosedRelation& rel, const ForwardWord& w, double tol = kMembershipTol);
bool validate_word(const ClosedRelation& rel, const TwoSidedWord& w, double tol = kMembershipTol);

ForwardWord shift_forward(const ForwardWord& w);
ForwardWord shift_forward(const ForwardWord& w, int steps);

/// One-step continuations of w, one per element of image(last coordinate).
std::vector<ForwardWord> extensions(const ClosedRelation& rel, const ForwardWord& w,
                                    double tol = kMembershipTol);

/// max_k |u_k - v_k| / 2^k over the common (equal) length.
double forward_metric(const ForwardWord& u, const ForwardWord& v);

/// max_k |u_k - v_k| / 2^(|k|+1) over the common (equal) index window.
double two_sided_metric(const TwoSidedWord& u, const TwoSidedWord& v);

/// Breadth-first closure of {x} under image() for at most depth steps,
/// deduplicating values closer than grid. Sorted ascending; contains x.
std::vector<double> forward_impression(const ClosedRelation& rel, double x, int depth,
                                       double grid = kImpressionGrid);

/// Smallest delta such that every point of the space is within delta of some
/// sample, computed exactly from the sorted samples and interval endpoints.
double delta_density(const std::vector<double>& points, const IntervalUnion& space);

/// The point of the space realizing delta_density together with its distance
/// to the nearest sample.
std::pair<double, double> farthest_point_from(const std::vector<double>& points,
                                              const IntervalUnion& space);

/// Deterministic uniform double in [0, 1), independent of the standard
/// library's distribution implementations.
inline double uniform01(std::uint64_t raw) {
  return static_cast<double>(raw >> 11) * 0x1.0p-53;
}

}  // namespace mahavier
