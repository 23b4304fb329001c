#pragma once

#include "mahavier/branch.hpp"
#include "mahavier/interval_union.hpp"
#include "mahavier/rational.hpp"

#include <string>
#include <vector>

namespace mahavier {

/// Default tolerance for branch-value membership comparisons in binary64.
inline constexpr double kMembershipTol = 1e-9;

/// A closed relation F on X given as a finite union of monotone branch graphs,
/// optionally together with the diagonal {(t,t) | t in X}.
class ClosedRelation {
 public:
  ClosedRelation(IntervalUnion space, std::vector<BranchMap> branches, bool include_diagonal);

  const IntervalUnion& space() const { return space_; }
  const std::vector<BranchMap>& branches() const { return branches_; }
  bool include_diagonal() const { return include_diagonal_; }

  /// (x, y) in F within tol. Throws std::domain_error when x or y is outside X.
  bool contains(double x, double y, double tol = kMembershipTol) const;

  /// All branch values at x (plus x itself when the diagonal is included),
  /// sorted and deduplicated within tol. Throws when x is outside X.
  std::vector<double> image(double x, double tol = kMembershipTol) const;

  /// All x with (x, y) in F, via closed-form branch inverses.
  std::vector<double> preimage(double y, double tol = kMembershipTol) const;

  /// p1(F) = p2(F) = X, checked by interval cover.
  bool projections_are_full() const;

  /// Whether the whole diagonal lies in F, either via the flag or because
  /// identity branches cover the space.
  bool has_full_diagonal() const;

  ClosedRelation with_diagonal() const;

  /// Branch indices grouped by family tag, in ascending tag order. Branches
  /// constructed without a tag each form a singleton family, so the groups
  /// always partition the branch list.
  std::vector<std::vector<std::size_t>> family_partition() const;

 private:
  IntervalUnion space_;
  std::vector<BranchMap> branches_;
  bool include_diagonal_ = false;
};

/// Exact check that r < 1 < rho and r^k = rho^l has no solution with
/// 0 < |k|, |l| <= bound. Throws std::domain_error for non-positive inputs.
bool is_never_connect(const Rational& r, const Rational& rho, int bound);

/// A never-connect slope pair, validated at construction.
struct NCPair {
  Rational r;
  Rational rho;
  int verified_bound = 0;

  static NCPair checked(Rational r, Rational rho, int bound = 64);
};

enum class Builtin { Devaney5, Robinson3, Knudsen3, Lelek, LelekDiag };

/// The reference relations. Lelek variants need a never-connect pair.
ClosedRelation builtin_relation(Builtin name);
ClosedRelation builtin_relation(Builtin name, const NCPair& pair);
ClosedRelation builtin_relation(const std::string& name);
ClosedRelation builtin_relation(const std::string& name, const NCPair& pair);

/// Spine value sets under which the quotients of the builtin systems collapse
/// to fans: {0,2,4,6,8} for the 5-interval system, {0,2,4} for the 3-interval
/// ones.
std::vector<double> builtin_spine(Builtin name);

}  // namespace mahavier
