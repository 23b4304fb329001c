#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace mahavier {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  bool contains(double x, double tol = 0.0) const { return x >= lo - tol && x <= hi + tol; }
  double length() const { return hi - lo; }
  bool degenerate() const { return hi <= lo; }
};

/// A compact space X given as a finite union of disjoint closed intervals,
/// sorted ascending. Membership is inclusive of endpoints.
class IntervalUnion {
 public:
  explicit IntervalUnion(std::vector<Interval> intervals);

  bool contains(double x, double tol = 0.0) const;
  const std::vector<Interval>& intervals() const { return intervals_; }
  std::size_t size() const { return intervals_.size(); }

  /// Index of the component containing x; throws std::domain_error if none.
  std::size_t component_of(double x, double tol = 0.0) const;

  double lo() const { return intervals_.front().lo; }
  double hi() const { return intervals_.back().hi; }

 private:
  std::vector<Interval> intervals_;
};

}  // namespace mahavier
