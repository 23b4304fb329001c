#include "mahavier/fan.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

namespace mahavier {

namespace {

double symbol_value(LegSymbol s, const NCPair& pair, bool backward) {
  switch (s) {
    case LegSymbol::One: return 1.0;
    case LegSymbol::R: return backward ? 1.0 / to_double(pair.r) : to_double(pair.r);
    default: return backward ? 1.0 / to_double(pair.rho) : to_double(pair.rho);
  }
}

double max_running_product(const std::vector<LegSymbol>& symbols, const NCPair& pair,
                           bool backward) {
  double prod = 1.0, best = 1.0;
  for (LegSymbol s : symbols) {
    prod *= symbol_value(s, pair, backward);
    best = std::max(best, prod);
  }
  return best;
}

char symbol_char(LegSymbol s, bool backward) {
  switch (s) {
    case LegSymbol::One: return '1';
    case LegSymbol::R: return backward ? 'R' : 'r';
    default: return backward ? 'P' : 'p';
  }
}

}  // namespace

double LegAddress::t_max() const {
  const double bound =
      std::max(max_running_product(forward, pair, false), max_running_product(backward, pair, true));
  return 1.0 / bound;
}

std::string LegAddress::forward_string() const {
  std::string s;
  for (LegSymbol sym : forward) s.push_back(symbol_char(sym, false));
  return s;
}

std::string LegAddress::backward_string() const {
  std::string s;
  for (LegSymbol sym : backward) s.push_back(symbol_char(sym, true));
  return s;
}

TwoSidedWord leg_point(const LegAddress& addr, double t) {
  if (t < 0.0 || t > addr.t_max() + 1e-12)
    throw std::out_of_range("leg_point: t outside [0, t_max]");
  std::vector<double> coords;
  coords.reserve(addr.backward.size() + 1 + addr.forward.size());
  double prod = 1.0;
  for (LegSymbol s : addr.backward) {
    prod *= symbol_value(s, addr.pair, true);
    coords.push_back(prod * t);
  }
  std::reverse(coords.begin(), coords.end());
  const int origin = static_cast<int>(coords.size());
  coords.push_back(t);
  prod = 1.0;
  for (LegSymbol s : addr.forward) {
    prod *= symbol_value(s, addr.pair, false);
    coords.push_back(prod * t);
  }
  return TwoSidedWord(std::move(coords), origin);
}

double endpoint_sup(const TwoSidedWord& w) {
  return *std::max_element(w.coords().begin(), w.coords().end());
}

double endpoint_sup(const ForwardWord& w) {
  return *std::max_element(w.coords().begin(), w.coords().end());
}

ExtensionResult endpoint_extension(const ForwardWord& w, const NCPair& pair, double eps,
                                   int max_steps) {
  if (eps <= 0.0) throw std::invalid_argument("endpoint_extension: eps must be positive");
  double value = w(w.length());
  if (value <= 0.0)
    throw std::domain_error("endpoint_extension: last coordinate must be positive");

  ExtensionResult out{w, endpoint_sup(w), 0, false};
  const double r = to_double(pair.r);
  const double rho = to_double(pair.rho);
  if (out.sup > 1.0 - eps) {
    out.reached = true;
    return out;
  }
  std::vector<double> coords = w.coords();
  while (out.steps < max_steps) {
    value = (value * rho <= 1.0) ? value * rho : value * r;
    coords.push_back(value);
    ++out.steps;
    out.sup = std::max(out.sup, value);
    if (out.sup > 1.0 - eps) {
      out.reached = true;
      break;
    }
  }
  out.word = ForwardWord(std::move(coords));
  return out;
}

FanApproximation lelek_approximation(const NCPair& pair, int depth, int backward_depth) {
  if (depth < 1) throw std::invalid_argument("lelek_approximation: depth must be >= 1");
  std::vector<std::vector<LegSymbol>> forwards{{}};
  for (int d = 0; d < depth; ++d) {
    std::vector<std::vector<LegSymbol>> next;
    for (const auto& prefix : forwards)
      for (LegSymbol s : {LegSymbol::R, LegSymbol::Rho}) {
        auto ext = prefix;
        ext.push_back(s);
        next.push_back(std::move(ext));
      }
    forwards = std::move(next);
  }
  std::vector<std::vector<LegSymbol>> backwards{{}};
  for (int d = 0; d < backward_depth; ++d) {
    std::vector<std::vector<LegSymbol>> next;
    for (const auto& prefix : backwards)
      for (LegSymbol s : {LegSymbol::One, LegSymbol::R, LegSymbol::Rho}) {
        auto ext = prefix;
        ext.push_back(s);
        next.push_back(std::move(ext));
      }
    backwards = std::move(next);
  }

  FanApproximation fan{{}, depth, pair};
  for (const auto& fwd : forwards)
    for (const auto& bwd : backwards) {
      LegAddress addr{fwd, bwd, pair};
      const double bound = addr.t_max();
      if (bound > 0.0) fan.legs.push_back({std::move(addr), bound});
    }
  return fan;
}

DensityProbeReport endpoint_density_probe(const NCPair& pair, int depth, double eps, int trials,
                                          std::uint64_t seed, int max_steps) {
  DensityProbeReport report;
  report.trials = trials;
  report.eps = eps;
  report.min_sup = 1.0;
  report.all_coordinates_bounded = true;

  std::mt19937_64 rng(seed);
  for (int trial = 0; trial < trials; ++trial) {
    LegAddress addr{{}, {}, pair};
    for (int d = 0; d < depth; ++d)
      addr.forward.push_back((rng() & 1) ? LegSymbol::Rho : LegSymbol::R);
    const double bound = addr.t_max();
    const double t = bound * (0.02 + 0.98 * uniform01(rng()));

    const TwoSidedWord point = leg_point(addr, t);
    std::vector<double> fwd(point.coords().begin() + point.origin_position(),
                            point.coords().end());
    const ForwardWord sample{std::move(fwd)};

    const ExtensionResult ext = endpoint_extension(sample, pair, eps, max_steps);
    bool bounded = true;
    for (double v : ext.word.coords())
      if (v > 1.0 + 1e-12) bounded = false;
    report.all_coordinates_bounded = report.all_coordinates_bounded && bounded;
    report.min_sup = std::min(report.min_sup, ext.sup);
    report.max_steps_used = std::max(report.max_steps_used, ext.steps);
    report.tail_metric_bound =
        std::max(report.tail_metric_bound, std::ldexp(1.0, -sample.length()));
    if (ext.reached && bounded) ++report.successes;
  }
  report.success_fraction =
      trials == 0 ? 0.0 : static_cast<double>(report.successes) / static_cast<double>(trials);
  return report;
}

QuotientFan cantor_quotient_embed(const ClosedRelation& rel, const std::vector<double>& spine,
                                  int depth) {
  if (depth < 0) throw std::invalid_argument("cantor_quotient_embed: depth must be >= 0");
  if (!quotient_compatibility_check(rel, spine, 200))
    throw std::invalid_argument("cantor_quotient_embed: spine quotient is not shift-compatible");

  const auto families = rel.family_partition();
  QuotientFan fan{{}, depth, static_cast<int>(families.size())};

  std::vector<Interval> roots;
  for (const auto& iv : rel.space().intervals())
    if (iv.length() > 1e-9) roots.push_back(iv);

  struct Frame {
    std::vector<int> itinerary;
    std::vector<Interval> reachable;
  };
  std::vector<Frame> stack{{{}, roots}};
  while (!stack.empty()) {
    Frame frame = std::move(stack.back());
    stack.pop_back();
    if (static_cast<int>(frame.itinerary.size()) == depth) {
      bool nondegenerate = false;
      for (const auto& iv : frame.reachable) nondegenerate |= iv.length() > 1e-9;
      if (nondegenerate && depth > 0) fan.legs.push_back({frame.itinerary});
      continue;
    }
    // Descend in reverse family order so the DFS emits legs lexicographically.
    for (int f = static_cast<int>(families.size()) - 1; f >= 0; --f) {
      std::vector<Interval> next;
      for (const auto& iv : frame.reachable)
        for (std::size_t b : families[static_cast<std::size_t>(f)]) {
          const auto& branch = rel.branches()[b];
          const Interval dom{std::max(iv.lo, branch.domain().lo),
                             std::min(iv.hi, branch.domain().hi)};
          if (dom.hi - dom.lo <= 1e-12) continue;
          next.push_back({branch(dom.lo), branch(dom.hi)});
          if (next.size() > 256) break;
        }
      if (next.empty()) continue;
      Frame child{frame.itinerary, std::move(next)};
      child.itinerary.push_back(f);
      stack.push_back(std::move(child));
    }
  }
  return fan;
}

double leg_angle_degrees(const std::vector<int>& digits, int base) {
  double frac = 0.0, scale = 1.0;
  for (int d : digits) {
    scale /= base;
    frac += d * scale;
  }
  return 15.0 + 150.0 * frac;
}

namespace {

struct Segment {
  double angle_deg;
  double radius;
};

std::string render_segments(const std::vector<Segment>& segments) {
  constexpr double kCx = 500.0, kCy = 950.0, kScale = 900.0;
  char buf[256];
  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg +=
      "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
      "viewBox=\"0 0 1000 1000\">\n";
  std::snprintf(buf, sizeof(buf),
                "<circle cx=\"%.6f\" cy=\"%.6f\" r=\"3.000000\" fill=\"black\"/>\n", kCx, kCy);
  svg += buf;
  svg += "<g stroke=\"black\" stroke-width=\"1\" stroke-linecap=\"round\">\n";
  for (const auto& seg : segments) {
    const double theta = seg.angle_deg * M_PI / 180.0;
    const double x2 = kCx + kScale * seg.radius * std::cos(theta);
    const double y2 = kCy - kScale * seg.radius * std::sin(theta);
    std::snprintf(buf, sizeof(buf),
                  "<line x1=\"%.6f\" y1=\"%.6f\" x2=\"%.6f\" y2=\"%.6f\"/>\n", kCx, kCy, x2, y2);
    svg += buf;
  }
  svg += "</g>\n</svg>\n";
  return svg;
}

}  // namespace

std::string render_fan_svg(const FanApproximation& fan) {
  std::vector<Segment> segments;
  segments.reserve(fan.legs.size());
  for (const auto& leg : fan.legs) {
    std::vector<int> digits;
    for (LegSymbol s : leg.address.forward) digits.push_back(static_cast<int>(s));
    for (LegSymbol s : leg.address.backward) digits.push_back(static_cast<int>(s));
    segments.push_back({leg_angle_degrees(digits, 3), leg.t_max});
  }
  return render_segments(segments);
}

std::string render_fan_svg(const QuotientFan& fan) {
  const int base = std::max(3, fan.family_count);
  std::vector<Segment> segments;
  segments.reserve(fan.legs.size());
  for (const auto& leg : fan.legs)
    segments.push_back({leg_angle_degrees(leg.itinerary, base), 1.0});
  return render_segments(segments);
}

}  // namespace mahavier
