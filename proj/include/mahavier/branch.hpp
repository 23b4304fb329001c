#pragma once

#include "mahavier/interval_union.hpp"
#include "mahavier/rational.hpp"

namespace mahavier {

enum class BranchForm { Affine, ShiftedPower };

/// One monotone homeomorphism branch of a closed relation, in closed form:
///
///   affine:         x -> slope*x + offset           (slope > 0)
///   shifted power:  x -> (x - shift)^(p/q) + offset (x >= shift on the domain)
///
/// Both forms are strictly increasing on their domain, so the inverse is again
/// a closed-form branch of the same kind.
class BranchMap {
 public:
  static BranchMap affine(Interval domain, Rational slope, Rational offset, int family = -1);
  static BranchMap shifted_power(Interval domain, Rational shift_in, Rational exponent,
                                 Rational offset_out, int family = -1);

  double operator()(double x) const;
  double inverse(double y) const;

  const Interval& domain() const { return domain_; }
  Interval image() const;
  bool domain_contains(double x, double tol = 0.0) const { return domain_.contains(x, tol); }
  bool image_contains(double y, double tol = 0.0) const { return image().contains(y, tol); }

  /// The inverse homeomorphism as a branch (domain = this->image()).
  BranchMap inverse_branch() const;

  BranchForm form() const { return form_; }
  int family() const { return family_; }
  bool is_identity() const;

  // Closed-form parameters, exact. For Affine: a = slope, b = offset.
  // For ShiftedPower: a = shift_in, b = offset_out, exponent() = p/q.
  const Rational& param_a() const { return a_; }
  const Rational& param_b() const { return b_; }
  const Rational& exponent() const { return exp_; }

 private:
  BranchMap() = default;

  BranchForm form_ = BranchForm::Affine;
  Interval domain_;
  Rational a_, b_, exp_;
  double a_d_ = 0.0, b_d_ = 0.0, exp_d_ = 1.0;
  int family_ = -1;
};

}  // namespace mahavier
