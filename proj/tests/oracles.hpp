// Test-only oracles, kept independent of the library code paths they check.
#pragma once

#include "mahavier/relation.hpp"
#include "mahavier/words.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <map>
#include <set>
#include <vector>

namespace oracles {

/// Brute-force orbit closure: every branch string of length <= depth applied
/// to x, no grid snapping. Independent of the BFS implementation.
inline std::vector<double> brute_force_impression(const mahavier::ClosedRelation& rel, double x,
                                                  int depth) {
  std::vector<double> all{x};
  std::vector<double> layer{x};
  for (int d = 0; d < depth; ++d) {
    std::vector<double> next;
    for (double v : layer) {
      if (rel.include_diagonal()) next.push_back(v);
      for (const auto& b : rel.branches())
        if (b.domain_contains(v, 1e-9))
          next.push_back(b(std::clamp(v, b.domain().lo, b.domain().hi)));
    }
    all.insert(all.end(), next.begin(), next.end());
    layer = std::move(next);
    if (layer.size() > 2'000'000) throw std::runtime_error("oracle blow-up");
  }
  std::sort(all.begin(), all.end());
  return all;
}

/// Two-sided set agreement on a grid: every point of each set is within grid
/// of some point of the other.
inline bool sets_agree_on_grid(const std::vector<double>& a, const std::vector<double>& b,
                               double grid) {
  auto covered = [grid](const std::vector<double>& pts, double v) {
    auto it = std::lower_bound(pts.begin(), pts.end(), v);
    if (it != pts.end() && *it - v <= grid) return true;
    return it != pts.begin() && v - *std::prev(it) <= grid;
  };
  for (double v : a)
    if (!covered(b, v)) return false;
  for (double v : b)
    if (!covered(a, v)) return false;
  return true;
}

/// Exponent-state oracle for the 5-interval system: a value reachable from an
/// interior start s = t + 2k (t in (0,1)) always has the closed form
/// t^(2^m / 3^n) + 2k'. States (m, n, k') evolve by the five moves below, one
/// branch application each; the oracle enumerates exactly the states
/// reachable within `depth` steps and evaluates the closed forms directly.
///
/// States on an offset rung (k >= 1) whose fractional part t^e drops under
/// kOffsetResolution are excluded together with their descendants. Storing
/// the offset as 2k + t^e costs an absolute half-ulp ~2.2e-16, i.e. a
/// relative offset error of 2.2e-16 / t^e, and the root branches turn that
/// into an absolute error of the same relative size on O(1) values. Keeping
/// t^e >= 1e-9 keeps that error under ~1e-7, well inside the 1e-6 agreement
/// tolerance; below it no double-precision orbit preserves the closed form
/// (t^64 + 2 == 2.0 exactly for interior t).
inline constexpr double kOffsetResolution = 1e-9;

struct ExponentState {
  int m = 0, n = 0, k = 0;
  auto operator<=>(const ExponentState&) const = default;
};

inline double devaney5_closed_form(double t, const ExponentState& state) {
  const double exponent = std::ldexp(1.0, state.m) / std::pow(3.0, state.n);
  return std::pow(t, exponent) + 2.0 * state.k;
}

inline std::vector<ExponentState> devaney5_reachable_states(double t, int start_component,
                                                            int depth) {
  std::map<ExponentState, int> best;
  std::deque<std::pair<ExponentState, int>> queue;
  const ExponentState start{0, 0, start_component};
  best[start] = 0;
  queue.push_back({start, 0});
  auto representable = [t](const ExponentState& state) {
    if (state.k == 0) return true;
    const double exponent = std::ldexp(1.0, state.m) / std::pow(3.0, state.n);
    return std::pow(t, exponent) >= kOffsetResolution;
  };
  while (!queue.empty()) {
    auto [state, steps] = queue.front();
    queue.pop_front();
    if (steps == depth) continue;
    auto push = [&](ExponentState next) {
      if (!representable(next)) return;
      auto it = best.find(next);
      if (it != best.end() && it->second <= steps + 1) return;
      best[next] = steps + 1;
      queue.push_back({next, steps + 1});
    };
    if (state.k <= 3) push({state.m, state.n, state.k + 1});           // +2 climb
    if (state.k == 1) push({state.m + 1, state.n, 0});                 // square
    if (state.k == 2) push({state.m - 1, state.n, 1});                 // square root
    if (state.k == 3) push({state.m, state.n - 1, 2});                 // cube
    if (state.k == 4) push({state.m, state.n + 1, 3});                 // cube root
  }
  std::vector<ExponentState> out;
  out.reserve(best.size());
  for (const auto& [state, steps] : best) out.push_back(state);
  return out;
}

/// Exhaustive best running sup over all multiplier strings in {r, rho}^n.
inline double exhaustive_endpoint_sup(double start, double r, double rho, int n) {
  double best = start;
  std::vector<double> layer{start};
  for (int step = 0; step < n; ++step) {
    std::vector<double> next;
    next.reserve(layer.size() * 2);
    for (double v : layer) {
      for (double factor : {r, rho}) {
        const double w = v * factor;
        if (w <= 1.0) {
          best = std::max(best, w);
          next.push_back(w);
        }
      }
    }
    layer = std::move(next);
  }
  return best;
}

}  // namespace oracles
