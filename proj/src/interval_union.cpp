#include "mahavier/interval_union.hpp"

#include <string>

namespace mahavier {

IntervalUnion::IntervalUnion(std::vector<Interval> intervals) : intervals_(std::move(intervals)) {
  if (intervals_.empty()) throw std::invalid_argument("IntervalUnion: no intervals");
  for (std::size_t i = 0; i < intervals_.size(); ++i) {
    if (!(intervals_[i].lo <= intervals_[i].hi))
      throw std::invalid_argument("IntervalUnion: interval with lo > hi");
    if (i > 0 && !(intervals_[i - 1].hi < intervals_[i].lo))
      throw std::invalid_argument("IntervalUnion: intervals must be sorted and disjoint");
  }
}

bool IntervalUnion::contains(double x, double tol) const {
  for (const auto& iv : intervals_)
    if (iv.contains(x, tol)) return true;
  return false;
}

std::size_t IntervalUnion::component_of(double x, double tol) const {
  for (std::size_t i = 0; i < intervals_.size(); ++i)
    if (intervals_[i].contains(x, tol)) return i;
  throw std::domain_error("point " + std::to_string(x) + " outside the space");
}

}  // namespace mahavier
