#include "mahavier/relation.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace mahavier {

namespace {

void insert_dedup(std::vector<double>& values, double v, double tol) {
  for (double w : values)
    if (std::abs(w - v) <= tol) return;
  values.push_back(v);
}

/// Merges closed intervals and checks they cover the whole space.
bool covers_space(const IntervalUnion& space, std::vector<Interval> pieces, double tol) {
  std::sort(pieces.begin(), pieces.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  for (const auto& component : space.intervals()) {
    double covered_to = component.lo;
    for (const auto& piece : pieces) {
      if (piece.lo > covered_to + tol) break;
      covered_to = std::max(covered_to, piece.hi);
    }
    if (covered_to < component.hi - tol) return false;
  }
  return true;
}

}  // namespace

ClosedRelation::ClosedRelation(IntervalUnion space, std::vector<BranchMap> branches,
                               bool include_diagonal)
    : space_(std::move(space)), branches_(std::move(branches)), include_diagonal_(include_diagonal) {
  for (const auto& b : branches_) {
    const Interval img = b.image();
    if (!space_.contains(b.domain().lo, 1e-9) || !space_.contains(b.domain().hi, 1e-9) ||
        !space_.contains(img.lo, 1e-9) || !space_.contains(img.hi, 1e-9))
      throw std::invalid_argument("branch domain or image leaves the space");
  }
}

bool ClosedRelation::contains(double x, double y, double tol) const {
  if (!space_.contains(x, tol) || !space_.contains(y, tol))
    throw std::domain_error("contains: point outside the space");
  if (include_diagonal_ && std::abs(x - y) <= tol) return true;
  for (const auto& b : branches_) {
    if (!b.domain_contains(x, tol)) continue;
    const double xc = std::clamp(x, b.domain().lo, b.domain().hi);
    if (std::abs(b(xc) - y) <= tol) return true;
  }
  return false;
}

std::vector<double> ClosedRelation::image(double x, double tol) const {
  if (!space_.contains(x, tol)) throw std::domain_error("image: point outside the space");
  std::vector<double> out;
  if (include_diagonal_) out.push_back(x);
  for (const auto& b : branches_) {
    if (!b.domain_contains(x, tol)) continue;
    const double xc = std::clamp(x, b.domain().lo, b.domain().hi);
    insert_dedup(out, b(xc), tol);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<double> ClosedRelation::preimage(double y, double tol) const {
  if (!space_.contains(y, tol)) throw std::domain_error("preimage: point outside the space");
  std::vector<double> out;
  if (include_diagonal_) out.push_back(y);
  for (const auto& b : branches_) {
    if (!b.image_contains(y, tol)) continue;
    const double yc = std::clamp(y, b.image().lo, b.image().hi);
    insert_dedup(out, std::clamp(b.inverse(yc), b.domain().lo, b.domain().hi), tol);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool ClosedRelation::projections_are_full() const {
  if (include_diagonal_) return true;
  std::vector<Interval> domains, images;
  domains.reserve(branches_.size());
  images.reserve(branches_.size());
  for (const auto& b : branches_) {
    domains.push_back(b.domain());
    images.push_back(b.image());
  }
  return covers_space(space_, domains, 1e-12) && covers_space(space_, images, 1e-12);
}

bool ClosedRelation::has_full_diagonal() const {
  if (include_diagonal_) return true;
  std::vector<Interval> identity_domains;
  for (const auto& b : branches_)
    if (b.is_identity()) identity_domains.push_back(b.domain());
  return !identity_domains.empty() && covers_space(space_, identity_domains, 1e-12);
}

ClosedRelation ClosedRelation::with_diagonal() const {
  return ClosedRelation(space_, branches_, true);
}

std::vector<std::vector<std::size_t>> ClosedRelation::family_partition() const {
  int fresh = 0;
  for (const auto& b : branches_) fresh = std::max(fresh, b.family() + 1);
  std::map<int, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < branches_.size(); ++i) {
    const int tag = branches_[i].family() >= 0 ? branches_[i].family() : fresh++;
    groups[tag].push_back(i);
  }
  std::vector<std::vector<std::size_t>> out;
  out.reserve(groups.size());
  for (auto& [tag, members] : groups) out.push_back(std::move(members));
  return out;
}

bool is_never_connect(const Rational& r, const Rational& rho, int bound) {
  if (r <= 0 || rho <= 0) throw std::domain_error("is_never_connect: slopes must be positive");
  if (bound < 1) throw std::invalid_argument("is_never_connect: bound must be >= 1");
  if (!(r < 1 && rho > 1)) return false;
  // r^k = rho^l forces sign(k) = -sign(l); by the (k,l) -> (-k,-l) symmetry it
  // is enough to scan (1/r)^k against rho^l for k, l in [1, bound].
  const Rational r_inv(denominator(r), numerator(r));
  std::vector<Rational> pow_r(static_cast<std::size_t>(bound) + 1);
  std::vector<Rational> pow_rho(static_cast<std::size_t>(bound) + 1);
  pow_r[0] = pow_rho[0] = 1;
  for (int i = 1; i <= bound; ++i) {
    pow_r[i] = pow_r[i - 1] * r_inv;
    pow_rho[i] = pow_rho[i - 1] * rho;
  }
  for (int k = 1; k <= bound; ++k)
    for (int l = 1; l <= bound; ++l)
      if (pow_r[k] == pow_rho[l]) return false;
  return true;
}

NCPair NCPair::checked(Rational r, Rational rho, int bound) {
  if (!is_never_connect(r, rho, bound))
    throw std::invalid_argument("slopes " + format_rational(r) + ", " + format_rational(rho) +
                                " are not a never-connect pair at bound " + std::to_string(bound));
  return NCPair{std::move(r), std::move(rho), bound};
}

namespace {

// Families 0, 1, 2 correspond to the three homeomorphisms whose graphs make
// up each builtin relation.
ClosedRelation make_devaney5() {
  IntervalUnion space({{0, 1}, {2, 3}, {4, 5}, {6, 7}, {8, 9}});
  std::vector<BranchMap> b;
  for (int k = 0; k < 5; ++k)
    b.push_back(BranchMap::affine({2.0 * k, 2.0 * k + 1}, 1, 0, 0));
  b.push_back(BranchMap::affine({0, 1}, 1, 2, 1));
  b.push_back(BranchMap::shifted_power({2, 3}, 2, 2, 0, 1));
  b.push_back(BranchMap::affine({4, 5}, 1, 2, 1));
  b.push_back(BranchMap::shifted_power({6, 7}, 6, 3, 4, 1));
  b.push_back(BranchMap::affine({8, 9}, 1, 0, 1));
  b.push_back(BranchMap::affine({0, 1}, 1, 0, 2));
  b.push_back(BranchMap::affine({2, 3}, 1, 2, 2));
  b.push_back(BranchMap::shifted_power({4, 5}, 4, Rational(1, 2), 2, 2));
  b.push_back(BranchMap::affine({6, 7}, 1, 2, 2));
  b.push_back(BranchMap::shifted_power({8, 9}, 8, Rational(1, 3), 6, 2));
  return ClosedRelation(std::move(space), std::move(b), false);
}

ClosedRelation make_ladder3(const Rational& root_exponent) {
  IntervalUnion space({{0, 1}, {2, 3}, {4, 5}});
  std::vector<BranchMap> b;
  for (int k = 0; k < 3; ++k)
    b.push_back(BranchMap::affine({2.0 * k, 2.0 * k + 1}, 1, 0, 0));
  b.push_back(BranchMap::affine({0, 1}, 1, 2, 1));
  b.push_back(BranchMap::shifted_power({2, 3}, 2, 2, 0, 1));
  b.push_back(BranchMap::affine({4, 5}, 1, 0, 1));
  b.push_back(BranchMap::affine({0, 1}, 1, 0, 2));
  b.push_back(BranchMap::affine({2, 3}, 1, 2, 2));
  b.push_back(BranchMap::shifted_power({4, 5}, 4, root_exponent, 2, 2));
  return ClosedRelation(std::move(space), std::move(b), false);
}

ClosedRelation make_lelek(const NCPair& pair, bool with_diag) {
  IntervalUnion space({{0, 1}});
  const double rho = to_double(pair.rho);
  std::vector<BranchMap> b;
  b.push_back(BranchMap::affine({0, 1}, pair.r, 0, 0));
  b.push_back(BranchMap::affine({0, 1 / rho}, pair.rho, 0, 1));
  return ClosedRelation(std::move(space), std::move(b), with_diag);
}

}  // namespace

ClosedRelation builtin_relation(Builtin name) {
  switch (name) {
    case Builtin::Devaney5: return make_devaney5();
    case Builtin::Robinson3: return make_ladder3(Rational(1, 3));
    case Builtin::Knudsen3: return make_ladder3(Rational(1, 2));
    default:
      throw std::invalid_argument("this builtin relation needs a never-connect pair");
  }
}

ClosedRelation builtin_relation(Builtin name, const NCPair& pair) {
  switch (name) {
    case Builtin::Lelek: return make_lelek(pair, false);
    case Builtin::LelekDiag: return make_lelek(pair, true);
    default: return builtin_relation(name);
  }
}

namespace {

Builtin builtin_by_name(const std::string& name) {
  if (name == "devaney_5") return Builtin::Devaney5;
  if (name == "robinson_3") return Builtin::Robinson3;
  if (name == "knudsen_3") return Builtin::Knudsen3;
  if (name == "lelek") return Builtin::Lelek;
  if (name == "lelek_diag") return Builtin::LelekDiag;
  throw std::invalid_argument("unknown builtin relation '" + name + "'");
}

}  // namespace

ClosedRelation builtin_relation(const std::string& name) {
  return builtin_relation(builtin_by_name(name));
}

ClosedRelation builtin_relation(const std::string& name, const NCPair& pair) {
  return builtin_relation(builtin_by_name(name), pair);
}

std::vector<double> builtin_spine(Builtin name) {
  if (name == Builtin::Devaney5) return {0, 2, 4, 6, 8};
  if (name == Builtin::Robinson3 || name == Builtin::Knudsen3) return {0, 2, 4};
  return {0};
}

}  // namespace mahavier
