#include "mahavier/words.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace mahavier {

ForwardWord::ForwardWord(std::vector<double> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw std::invalid_argument("ForwardWord: empty coordinate sequence");
}

double ForwardWord::operator()(int i) const {
  if (i < 1 || i > length()) throw std::out_of_range("ForwardWord: index out of range");
  return coords_[static_cast<std::size_t>(i) - 1];
}

ForwardWord ForwardWord::appended(double value) const {
  std::vector<double> c(coords_);
  c.push_back(value);
  return ForwardWord(std::move(c));
}

ForwardWord ForwardWord::prefix(int n) const {
  if (n < 1 || n > length()) throw std::out_of_range("ForwardWord: bad prefix length");
  return ForwardWord(std::vector<double>(coords_.begin(), coords_.begin() + n));
}

TwoSidedWord::TwoSidedWord(std::vector<double> coords, int origin_position)
    : coords_(std::move(coords)), origin_(origin_position) {
  if (coords_.empty()) throw std::invalid_argument("TwoSidedWord: empty coordinate sequence");
  if (origin_ < 0 || origin_ >= static_cast<int>(coords_.size()))
    throw std::invalid_argument("TwoSidedWord: origin outside the window");
}

double TwoSidedWord::operator()(int index) const {
  const int pos = index + origin_;
  if (pos < 0 || pos >= static_cast<int>(coords_.size()))
    throw std::out_of_range("TwoSidedWord: index outside the window");
  return coords_[static_cast<std::size_t>(pos)];
}

TwoSidedWord TwoSidedWord::shifted(int direction) const {
  if (direction != 1 && direction != -1)
    throw std::invalid_argument("TwoSidedWord::shifted: direction must be +1 or -1");
  const int new_origin = origin_ + direction;
  if (new_origin < 0 || new_origin >= static_cast<int>(coords_.size()))
    throw std::out_of_range("TwoSidedWord::shifted: origin would leave the window");
  return TwoSidedWord(coords_, new_origin);
}

Cylinder::Cylinder(std::vector<Constraint> constraints) : constraints_(std::move(constraints)) {
  for (const auto& c : constraints_)
    if (!(c.lo < c.hi)) throw std::invalid_argument("Cylinder: empty open interval constraint");
  std::sort(constraints_.begin(), constraints_.end(),
            [](const Constraint& a, const Constraint& b) { return a.index < b.index; });
}

int Cylinder::max_index() const {
  return constraints_.empty() ? 0 : constraints_.back().index;
}

bool Cylinder::matches(const ForwardWord& w) const {
  for (const auto& c : constraints_) {
    if (c.index < 1 || c.index > w.length()) return false;
    const double v = w(c.index);
    if (!(c.lo < v && v < c.hi)) return false;
  }
  return true;
}

bool Cylinder::matches(const TwoSidedWord& w) const {
  for (const auto& c : constraints_) {
    if (c.index < w.min_index() || c.index > w.max_index()) return false;
    const double v = w(c.index);
    if (!(c.lo < v && v < c.hi)) return false;
  }
  return true;
}

bool validate_word(const ClosedRelation& rel, const ForwardWord& w, double tol) {
  const auto& c = w.coords();
  for (double v : c)
    if (!rel.space().contains(v, tol)) return false;
  for (std::size_t i = 0; i + 1 < c.size(); ++i)
    if (!rel.contains(c[i], c[i + 1], tol)) return false;
  return true;
}

bool validate_word(const ClosedRelation& rel, const TwoSidedWord& w, double tol) {
  const auto& c = w.coords();
  for (double v : c)
    if (!rel.space().contains(v, tol)) return false;
  for (std::size_t i = 0; i + 1 < c.size(); ++i)
    if (!rel.contains(c[i], c[i + 1], tol)) return false;
  return true;
}

ForwardWord shift_forward(const ForwardWord& w) {
  if (w.length() < 2) throw std::underflow_error("shift_forward: word too short");
  return ForwardWord(std::vector<double>(w.coords().begin() + 1, w.coords().end()));
}

ForwardWord shift_forward(const ForwardWord& w, int steps) {
  if (steps < 0 || steps >= w.length())
    throw std::underflow_error("shift_forward: word too short for requested shift");
  return ForwardWord(std::vector<double>(w.coords().begin() + steps, w.coords().end()));
}

std::vector<ForwardWord> extensions(const ClosedRelation& rel, const ForwardWord& w, double tol) {
  std::vector<ForwardWord> out;
  for (double v : rel.image(w(w.length()), tol)) out.push_back(w.appended(v));
  return out;
}

double forward_metric(const ForwardWord& u, const ForwardWord& v) {
  if (u.length() != v.length()) throw std::invalid_argument("forward_metric: length mismatch");
  double best = 0.0;
  for (int k = 1; k <= u.length(); ++k)
    best = std::max(best, std::abs(u(k) - v(k)) * std::ldexp(1.0, -k));
  return best;
}

double two_sided_metric(const TwoSidedWord& u, const TwoSidedWord& v) {
  if (u.min_index() != v.min_index() || u.max_index() != v.max_index())
    throw std::invalid_argument("two_sided_metric: index window mismatch");
  double best = 0.0;
  for (int k = u.min_index(); k <= u.max_index(); ++k)
    best = std::max(best, std::abs(u(k) - v(k)) * std::ldexp(1.0, -(std::abs(k) + 1)));
  return best;
}

std::vector<double> forward_impression(const ClosedRelation& rel, double x, int depth,
                                       double grid) {
  if (!rel.space().contains(x, kMembershipTol))
    throw std::domain_error("forward_impression: start outside the space");
  if (depth < 1) throw std::invalid_argument("forward_impression: depth must be >= 1");

  std::set<double> reached;
  auto try_insert = [&](double v) -> bool {
    auto it = reached.lower_bound(v);
    if (it != reached.end() && *it - v <= grid) return false;
    if (it != reached.begin() && v - *std::prev(it) <= grid) return false;
    reached.insert(it, v);
    return true;
  };

  try_insert(x);
  std::vector<double> frontier{x};
  for (int step = 0; step < depth && !frontier.empty(); ++step) {
    std::vector<double> next;
    for (double v : frontier)
      for (double w : rel.image(v))
        if (try_insert(w)) next.push_back(w);
    frontier = std::move(next);
  }
  return {reached.begin(), reached.end()};
}

std::pair<double, double> farthest_point_from(const std::vector<double>& points,
                                              const IntervalUnion& space) {
  if (points.empty()) throw std::invalid_argument("delta_density: empty sample set");
  std::vector<double> pts(points);
  std::sort(pts.begin(), pts.end());
  for (double p : pts)
    if (!space.contains(p, kMembershipTol))
      throw std::domain_error("delta_density: sample outside the space");

  auto dist_to_samples = [&](double x) {
    auto it = std::lower_bound(pts.begin(), pts.end(), x);
    double best = std::numeric_limits<double>::infinity();
    if (it != pts.end()) best = std::min(best, *it - x);
    if (it != pts.begin()) best = std::min(best, x - *std::prev(it));
    return best;
  };

  // The farthest point of a closed interval from a finite sample set is an
  // endpoint or a midpoint of consecutive samples.
  double worst = 0.0, at = space.lo();
  auto consider = [&](double x) {
    const double d = dist_to_samples(x);
    if (d > worst) {
      worst = d;
      at = x;
    }
  };
  for (const auto& iv : space.intervals()) {
    consider(iv.lo);
    consider(iv.hi);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      const double mid = 0.5 * (pts[i] + pts[i + 1]);
      if (iv.contains(mid)) consider(mid);
    }
  }
  return {at, worst};
}

double delta_density(const std::vector<double>& points, const IntervalUnion& space) {
  return farthest_point_from(points, space).second;
}

}  // namespace mahavier
