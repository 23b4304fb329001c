#include "mahavier/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <random>
#include <set>
#include <string>
#include <thread>

namespace mahavier {

namespace {

int worker_cap() {
  int cap = static_cast<int>(std::thread::hardware_concurrency());
  if (cap < 1) cap = 1;
  if (const char* env = std::getenv("MAHAVIER_LAB_THREADS")) {
    const int requested = std::atoi(env);
    if (requested >= 1) cap = std::min(cap, requested);
  }
  return std::min(cap, 8);
}

/// Index-parallel loop; results must be written to per-index slots so the
/// outcome does not depend on scheduling.
template <typename Fn>
void parallel_for(int n, Fn&& fn) {
  const int threads = std::min(worker_cap(), n);
  if (threads <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&, t] {
      for (int i = t; i < n; i += threads) fn(i);
    });
  for (auto& th : pool) th.join();
}

double dist_to_values(double x, const std::vector<double>& values) {
  double best = std::numeric_limits<double>::infinity();
  for (double v : values) best = std::min(best, std::abs(x - v));
  return best;
}

class GridSet {
 public:
  explicit GridSet(double grid) : grid_(grid) {}

  bool insert(double v) {
    auto it = values_.lower_bound(v);
    if (it != values_.end() && *it - v <= grid_) return false;
    if (it != values_.begin() && v - *std::prev(it) <= grid_) return false;
    values_.insert(it, v);
    return true;
  }

 private:
  double grid_;
  std::set<double> values_;
};

}  // namespace

TransitivityReport transitivity_certificate(const ClosedRelation& rel, int samples, int depth,
                                            double delta, std::uint64_t seed, double grid) {
  if (samples < 1) throw std::invalid_argument("transitivity_certificate: need samples >= 1");
  if (!rel.projections_are_full())
    throw std::invalid_argument("transitivity_certificate: projections of F are not full");

  const auto& components = rel.space().intervals();
  std::mt19937_64 rng(seed);
  std::vector<double> points(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i) {
    const auto& iv = components[static_cast<std::size_t>(i) % components.size()];
    const double margin = 1e-3 * iv.length();
    points[static_cast<std::size_t>(i)] =
        iv.lo + margin + (iv.length() - 2 * margin) * uniform01(rng());
  }

  TransitivityReport report;
  report.threshold = delta;
  report.depth = depth;
  report.samples.resize(static_cast<std::size_t>(samples));
  parallel_for(samples, [&](int i) {
    const double p = points[static_cast<std::size_t>(i)];
    const auto impression = forward_impression(rel, p, depth, grid);
    report.samples[static_cast<std::size_t>(i)] = {p, delta_density(impression, rel.space())};
  });

  const auto worst = std::max_element(
      report.samples.begin(), report.samples.end(),
      [](const TransitivitySample& a, const TransitivitySample& b) { return a.density < b.density; });
  report.worst_density = worst->density;
  report.pass = report.worst_density <= delta;
  if (!report.pass) report.witness = non_transitivity_witness(rel, worst->point, depth, delta, grid);
  return report;
}

std::optional<GapInterval> non_transitivity_witness(const ClosedRelation& rel, double x, int depth,
                                                    double dense_delta, double grid) {
  const auto impression = forward_impression(rel, x, depth, grid);
  const auto [center, dist] = farthest_point_from(impression, rel.space());
  if (dist <= dense_delta) return std::nullopt;
  const auto& component = rel.space().intervals()[rel.space().component_of(center)];
  GapInterval gap;
  gap.lo = std::max(component.lo, center - dist / 2);
  gap.hi = std::min(component.hi, center + dist / 2);
  gap.margin = dist / 2;
  gap.from_point = x;
  return gap;
}

MixingPadCertificate mixing_pad(const ClosedRelation& rel_with_diag, const ForwardWord& base,
                                const Cylinder& U, const Cylinder& V, int m, int k_max,
                                double tol) {
  if (!rel_with_diag.has_full_diagonal())
    throw std::invalid_argument("mixing_pad: the relation does not contain the diagonal");
  if (k_max < 0) throw std::invalid_argument("mixing_pad: k_max must be >= 0");
  if (m <= U.max_index())
    throw std::invalid_argument("mixing_pad: m must exceed the deepest coordinate U constrains");
  if (m < 1 || m >= base.length())
    throw std::invalid_argument("mixing_pad: m must lie inside the base word");
  if (!U.matches(base)) throw std::runtime_error("mixing_pad: base word is not in U");
  const ForwardWord target = shift_forward(base, m);
  if (!V.matches(target))
    throw std::runtime_error("mixing_pad: shifted base word is not in V");

  MixingPadCertificate cert{base, U.max_index(), m, {}, m, m + k_max, false};
  cert.padded.reserve(static_cast<std::size_t>(k_max) + 1);
  const auto& c = base.coords();
  for (int k = 0; k <= k_max; ++k) {
    std::vector<double> padded(c.begin(), c.begin() + m);
    padded.insert(padded.end(), static_cast<std::size_t>(k), c[static_cast<std::size_t>(m) - 1]);
    padded.insert(padded.end(), c.begin() + m, c.end());
    cert.padded.emplace_back(std::move(padded));
  }
  cert.verified = verify(cert, rel_with_diag, U, V, tol);
  if (!cert.verified) throw std::runtime_error("mixing_pad: certificate failed verification");
  return cert;
}

bool verify(const MixingPadCertificate& cert, const ClosedRelation& rel_with_diag,
            const Cylinder& U, const Cylinder& V, double tol) {
  if (cert.padded.empty()) return false;
  if (!(cert.padded.front() == cert.base)) return false;
  const ForwardWord target = shift_forward(cert.base, cert.hit_time);
  for (int k = 0; k < static_cast<int>(cert.padded.size()); ++k) {
    const ForwardWord& word = cert.padded[static_cast<std::size_t>(k)];
    if (word.length() != cert.base.length() + k) return false;
    if (!validate_word(rel_with_diag, word, tol)) return false;
    if (!U.matches(word)) return false;
    const ForwardWord shifted = shift_forward(word, cert.hit_time + k);
    if (!(shifted == target)) return false;  // coordinatewise, exact
    if (!V.matches(shifted)) return false;
  }
  return true;
}

std::pair<ForwardWord, std::vector<int>> diagonal_collapse(const ForwardWord& w) {
  std::vector<double> collapsed;
  std::vector<int> runs;
  for (double v : w.coords()) {
    if (!collapsed.empty() && collapsed.back() == v) {
      ++runs.back();
    } else {
      collapsed.push_back(v);
      runs.push_back(1);
    }
  }
  return {ForwardWord(std::move(collapsed)), std::move(runs)};
}

ForwardWord diagonal_expand(const ForwardWord& w, const std::vector<int>& pattern) {
  if (static_cast<int>(pattern.size()) != w.length())
    throw std::invalid_argument("diagonal_expand: pattern length must equal word length");
  std::vector<double> out;
  for (int i = 1; i <= w.length(); ++i) {
    const int run = pattern[static_cast<std::size_t>(i) - 1];
    if (run < 1) throw std::invalid_argument("diagonal_expand: run lengths must be >= 1");
    out.insert(out.end(), static_cast<std::size_t>(run), w(i));
  }
  return ForwardWord(std::move(out));
}

bool verify(const PeriodicWitness& w, const ClosedRelation& rel, double tol) {
  if (w.n < 1 || w.z.length() != w.n + 1) return false;
  if (std::abs(w.z(1) - w.y) > tol) return false;
  if (std::abs(w.z(w.n + 1) - w.x) > tol) return false;
  return validate_word(rel, w.z, tol) && rel.contains(w.x, w.y, tol);
}

PeriodicWitness periodic_witness_devaney5(double x, double y, double tol) {
  static const ClosedRelation rel = builtin_relation(Builtin::Devaney5);
  if (!rel.contains(x, y, tol))
    throw std::domain_error("periodic_witness_devaney5: (x, y) is not in the relation");

  auto close = [tol](double a, double b) { return std::abs(a - b) <= tol; };

  std::vector<double> z;
  if (close(y, x)) {
    z = {y, x};
  } else {
    switch (rel.space().component_of(x, tol)) {
      case 0:  // the x+2 edge returns through the square-root branch
        z = {y, y + 2, std::sqrt(x) + 2, x};
        break;
      case 1:
        if (close(y, (x - 2) * (x - 2))) z = {y, y + 2, y + 4, x};
        else z = {y, std::sqrt(x - 2) + 2, x - 2, x};
        break;
      case 2:
        if (close(y, std::sqrt(x - 4) + 2)) z = {y, x - 4, x - 2, x};
        else z = {y, y + 2, std::cbrt(x - 4) + 6, x};
        break;
      case 3: {
        const double cube = (x - 6) * (x - 6) * (x - 6);
        if (close(y, cube + 4)) z = {y, cube + 6, cube + 8, x};
        else z = {y, std::cbrt(x - 6) + 6, x - 2, x};
        break;
      }
      default:
        z = {y, x - 4, x - 2, x};
        break;
    }
  }
  const int n = static_cast<int>(z.size()) - 1;
  PeriodicWitness w{x, y, n, ForwardWord(std::move(z))};
  if (!verify(w, rel, tol))
    throw std::runtime_error("periodic_witness_devaney5: constructed witness failed verification");
  return w;
}

std::optional<PeriodicWitness> periodic_witness_search(const ClosedRelation& rel, double x,
                                                       double y, int n_max, double tol,
                                                       double grid) {
  if (!rel.contains(x, y, tol))
    throw std::domain_error("periodic_witness_search: (x, y) is not in the relation");
  if (n_max < 1) throw std::invalid_argument("periodic_witness_search: n_max must be >= 1");

  struct Node {
    double value;
    int parent;
  };
  std::vector<Node> nodes{{y, -1}};
  std::vector<int> frontier{0};
  GridSet visited(grid);
  visited.insert(y);

  for (int step = 1; step <= n_max && !frontier.empty(); ++step) {
    std::vector<int> next;
    for (int node_index : frontier) {
      const double value = nodes[static_cast<std::size_t>(node_index)].value;
      for (double v : rel.image(value, tol)) {
        if (std::abs(v - x) <= tol) {
          std::vector<double> path{x};
          for (int at = node_index; at >= 0; at = nodes[static_cast<std::size_t>(at)].parent)
            path.push_back(nodes[static_cast<std::size_t>(at)].value);
          std::reverse(path.begin(), path.end());
          PeriodicWitness w{x, y, step, ForwardWord(std::move(path))};
          if (verify(w, rel, tol)) return w;
          continue;
        }
        if (visited.insert(v)) {
          nodes.push_back({v, node_index});
          next.push_back(static_cast<int>(nodes.size()) - 1);
        }
      }
    }
    frontier = std::move(next);
  }
  return std::nullopt;
}

int witness_period(const PeriodicWitness& w) {
  return w.z(1) == w.z(w.n + 1) ? w.n : w.n + 1;
}

ForwardWord periodic_point_from_witness(const ClosedRelation& rel, const PeriodicWitness& w,
                                        int copies, double tol) {
  if (copies < 1) throw std::invalid_argument("periodic_point_from_witness: copies must be >= 1");
  if (!verify(w, rel, tol))
    throw std::invalid_argument("periodic_point_from_witness: invalid witness");
  const int period = witness_period(w);
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(period) * static_cast<std::size_t>(copies));
  for (int c = 0; c < copies; ++c)
    for (int i = 1; i <= period; ++i) out.push_back(w.z(i));
  return ForwardWord(std::move(out));
}

namespace {

/// Forward interval propagation through the cylinder constraints: finds one
/// valid word (x_1, ..., x_n) with every constrained coordinate strictly
/// inside its interval, x_n at least `last_margin` away from `avoid_last`.
std::optional<std::vector<double>> solve_prefix(const ClosedRelation& rel, const Cylinder& U,
                                                int n, const std::vector<double>& avoid_last,
                                                double last_margin) {
  struct Segment {
    Interval iv;
    int parent;
    int branch;  // -1 for a diagonal step, -2 for a root segment
  };

  auto constraint_at = [&](int index) -> std::optional<Interval> {
    for (const auto& c : U.constraints())
      if (c.index == index) return Interval{c.lo, c.hi};
    return std::nullopt;
  };
  auto clip = [](Interval a, const Interval& b) -> std::optional<Interval> {
    a.lo = std::max(a.lo, b.lo);
    a.hi = std::min(a.hi, b.hi);
    if (a.hi - a.lo < 1e-12) return std::nullopt;
    return a;
  };

  std::vector<Segment> segments;
  std::vector<std::vector<int>> levels(static_cast<std::size_t>(n));
  const auto c1 = constraint_at(1);
  for (const auto& component : rel.space().intervals()) {
    Interval iv = component;
    if (c1) {
      auto clipped = clip(iv, *c1);
      if (!clipped) continue;
      iv = *clipped;
    }
    if (iv.hi - iv.lo < 1e-12) continue;
    segments.push_back({iv, -1, -2});
    levels[0].push_back(static_cast<int>(segments.size()) - 1);
  }

  for (int level = 1; level < n; ++level) {
    const auto next_constraint = constraint_at(level + 1);
    for (int seg_index : levels[static_cast<std::size_t>(level) - 1]) {
      const Interval current = segments[static_cast<std::size_t>(seg_index)].iv;
      auto push = [&](Interval iv, int branch) {
        if (next_constraint) {
          auto clipped = clip(iv, *next_constraint);
          if (!clipped) return;
          iv = *clipped;
        }
        if (iv.hi - iv.lo < 1e-12) return;
        segments.push_back({iv, seg_index, branch});
        levels[static_cast<std::size_t>(level)].push_back(static_cast<int>(segments.size()) - 1);
      };
      if (rel.include_diagonal()) push(current, -1);
      for (std::size_t b = 0; b < rel.branches().size(); ++b) {
        const auto& branch = rel.branches()[b];
        auto dom = clip(current, branch.domain());
        if (!dom) continue;
        push(Interval{branch(dom->lo), branch(dom->hi)}, static_cast<int>(b));
      }
    }
  }

  for (int seg_index : levels[static_cast<std::size_t>(n) - 1]) {
    const Interval last = segments[static_cast<std::size_t>(seg_index)].iv;
    double pick = std::numeric_limits<double>::quiet_NaN();
    for (double frac : {0.5, 0.25, 0.75, 0.375, 0.625, 0.125, 0.875, 0.0625, 0.9375}) {
      const double candidate = last.lo + frac * last.length();
      if (dist_to_values(candidate, avoid_last) > last_margin) {
        pick = candidate;
        break;
      }
    }
    if (std::isnan(pick)) continue;

    std::vector<double> coords{pick};
    int at = seg_index;
    while (segments[static_cast<std::size_t>(at)].parent >= 0) {
      const auto& seg = segments[static_cast<std::size_t>(at)];
      const auto& parent = segments[static_cast<std::size_t>(seg.parent)];
      double prev = coords.back();
      if (seg.branch >= 0)
        prev = rel.branches()[static_cast<std::size_t>(seg.branch)].inverse(coords.back());
      coords.push_back(std::clamp(prev, parent.iv.lo, parent.iv.hi));
      at = seg.parent;
    }
    std::reverse(coords.begin(), coords.end());
    return coords;
  }
  return std::nullopt;
}

}  // namespace

SensitivityWitness sensitivity_witness_ladder(const ClosedRelation& rel, const Cylinder& U,
                                              int root_q, double tol) {
  if (root_q != 2 && root_q != 3)
    throw std::invalid_argument("sensitivity_witness_ladder: root_q must be 2 or 3");
  static const std::vector<double> avoid{0, 1, 2, 3, 4, 5};
  constexpr int kWindow = 8;
  constexpr int kMaxEscalation = 10000;

  const int n = std::max(1, U.max_index());
  auto prefix = solve_prefix(rel, U, n, avoid, 1e-6);
  if (!prefix)
    throw std::runtime_error("sensitivity witness: cylinder admits no usable start coordinate");

  // Walk the last coordinate down the ladder until it lands in (0, 1).
  std::vector<double> reduction;
  double w = prefix->back();
  while (!(w > 0.0 && w < 1.0)) {
    const std::size_t current = rel.space().component_of(w, tol);
    double next = w;
    std::size_t next_component = current;
    for (double v : rel.image(w, tol)) {
      const std::size_t cv = rel.space().component_of(v, tol);
      if (cv < next_component) {
        next_component = cv;
        next = v;
      }
    }
    if (next_component == current || reduction.size() > 4)
      throw std::runtime_error("sensitivity witness: cannot reduce the start into (0, 1)");
    reduction.push_back(next);
    w = next;
  }

  auto root = [root_q](double v) { return root_q == 3 ? std::cbrt(v) : std::sqrt(v); };

  int j_star = 0;
  double wj = w;
  for (int j = 1; j <= kMaxEscalation; ++j) {
    wj = root(wj);
    if (wj > 0.9) {
      j_star = j;
      break;
    }
  }
  if (j_star == 0)
    throw std::runtime_error("sensitivity witness: escalation did not settle within budget");

  const int k0 = 2 * j_star;
  const int n_eff = n + static_cast<int>(reduction.size());
  const int m = n_eff + k0 + 1;
  const int total = m + kWindow;

  std::vector<double> shared(*prefix);
  shared.insert(shared.end(), reduction.begin(), reduction.end());

  std::vector<double> xc(shared), yc(shared);
  xc.insert(xc.end(), static_cast<std::size_t>(total - n_eff), w);
  double level = w;
  while (static_cast<int>(yc.size()) < total) {
    yc.push_back(level + 2);
    if (static_cast<int>(yc.size()) < total) yc.push_back(level + 4);
    level = root(level);
  }

  SensitivityWitness out{ForwardWord(std::move(xc)), ForwardWord(std::move(yc)),
                         m, k0, 0.0, 0.0, 0.25};
  for (int k = 1; k <= total - m; ++k) {
    const double weight = std::ldexp(1.0, -k);
    out.separation = std::max(out.separation, std::abs(out.x(m + k) - out.y(m + k)) * weight);
    out.spine_distance =
        std::max(out.spine_distance, dist_to_values(out.y(m + k), {0, 2, 4}) * weight);
  }
  if (!validate_word(rel, out.x, tol) || !validate_word(rel, out.y, tol))
    throw std::runtime_error("sensitivity witness: constructed words failed validation");
  return out;
}

SensitivityWitness sensitivity_witness_robinson3(const Cylinder& U) {
  static const ClosedRelation rel = builtin_relation(Builtin::Robinson3);
  return sensitivity_witness_ladder(rel, U, 3);
}

bool verify(const SensitivityWitness& w, const ClosedRelation& rel, const Cylinder& U,
            const std::vector<double>& spine, double tol) {
  if (w.x.length() != w.y.length() || w.m < 1 || w.m >= w.x.length()) return false;
  if (!validate_word(rel, w.x, tol) || !validate_word(rel, w.y, tol)) return false;
  if (!U.matches(w.x) || !U.matches(w.y)) return false;
  double separation = 0.0, spine_distance = 0.0;
  for (int k = 1; k <= w.x.length() - w.m; ++k) {
    const double weight = std::ldexp(1.0, -k);
    separation = std::max(separation, std::abs(w.x(w.m + k) - w.y(w.m + k)) * weight);
    spine_distance = std::max(spine_distance, dist_to_values(w.y(w.m + k), spine) * weight);
  }
  if (std::abs(separation - w.separation) > 1e-12) return false;
  if (std::abs(spine_distance - w.spine_distance) > 1e-12) return false;
  return separation > w.epsilon && spine_distance > w.epsilon;
}

QuotientClass quotient_canonical(const ForwardWord& w, const std::vector<double>& spine,
                                 double tol) {
  for (double v : w.coords())
    if (dist_to_values(v, spine) > tol)
      return {false, w};
  return {true, ForwardWord(std::vector<double>(static_cast<std::size_t>(w.length()), 0.0))};
}

ForwardWord random_word(const ClosedRelation& rel, int length, std::uint64_t seed) {
  if (length < 1) throw std::invalid_argument("random_word: length must be >= 1");
  std::mt19937_64 rng(seed);
  const auto& components = rel.space().intervals();
  const auto& iv = components[rng() % components.size()];
  std::vector<double> coords{iv.lo + iv.length() * uniform01(rng())};
  while (static_cast<int>(coords.size()) < length) {
    const auto img = rel.image(coords.back());
    coords.push_back(img[rng() % img.size()]);
  }
  return ForwardWord(std::move(coords));
}

bool quotient_compatibility_check(const ClosedRelation& rel, const std::vector<double>& spine,
                                  int samples, std::uint64_t seed, double tol) {
  if (spine.empty()) throw std::invalid_argument("quotient_compatibility_check: empty spine");
  // Exact part: a non-spine value stepping onto the spine is the only way a
  // non-spine word can shift into the spine class.
  for (double v : spine) {
    if (!rel.space().contains(v, tol)) return false;
    for (double u : rel.preimage(v, tol))
      if (dist_to_values(u, spine) > tol) return false;
  }

  std::mt19937_64 rng(seed);
  auto is_spine_word = [&](const ForwardWord& w) {
    return quotient_canonical(w, spine, tol).is_spine;
  };
  for (int s = 0; s < samples; ++s) {
    ForwardWord word = [&]() -> ForwardWord {
      if (s % 2 == 0) {
        // Walk inside the spine.
        std::vector<double> coords{spine[rng() % spine.size()]};
        for (int i = 1; i < 6; ++i) {
          std::vector<double> stay;
          for (double v : rel.image(coords.back(), tol))
            if (dist_to_values(v, spine) <= tol) stay.push_back(v);
          if (stay.empty()) break;
          coords.push_back(stay[rng() % stay.size()]);
        }
        return ForwardWord(std::move(coords));
      }
      return random_word(rel, 6, rng());
    }();
    if (word.length() < 2) continue;
    const bool before = is_spine_word(word);
    const bool after = is_spine_word(shift_forward(word));
    if (before && !after) return false;
    if (!before && after && dist_to_values(word(1), spine) > tol) return false;
  }
  return true;
}

}  // namespace mahavier
