#include "mahavier/branch.hpp"

#include <cmath>

namespace mahavier {

namespace {

double power_eval(double t, const Rational& exp, double exp_d) {
  if (t < 0.0) {
    if (t > -1e-9) t = 0.0;  // absorb roundoff at the radicand boundary
    else throw std::domain_error("shifted power branch: negative radicand");
  }
  const auto p = numerator(exp);
  const auto q = denominator(exp);
  if (q == 1) {
    if (p == 1) return t;
    if (p == 2) return t * t;
    if (p == 3) return t * t * t;
  }
  if (p == 1) {
    if (q == 2) return std::sqrt(t);
    if (q == 3) return std::cbrt(t);
  }
  if (p == 2 && q == 3) {
    const double c = std::cbrt(t);
    return c * c;
  }
  return std::pow(t, exp_d);
}

}  // namespace

BranchMap BranchMap::affine(Interval domain, Rational slope, Rational offset, int family) {
  if (slope <= 0) throw std::invalid_argument("affine branch: slope must be positive");
  BranchMap b;
  b.form_ = BranchForm::Affine;
  b.domain_ = domain;
  b.a_ = std::move(slope);
  b.b_ = std::move(offset);
  b.exp_ = 1;
  b.a_d_ = to_double(b.a_);
  b.b_d_ = to_double(b.b_);
  b.family_ = family;
  return b;
}

BranchMap BranchMap::shifted_power(Interval domain, Rational shift_in, Rational exponent,
                                   Rational offset_out, int family) {
  if (exponent <= 0) throw std::invalid_argument("power branch: exponent must be positive");
  if (to_double(shift_in) > domain.lo + 1e-12)
    throw std::invalid_argument("power branch: radicand negative on domain");
  BranchMap b;
  b.form_ = BranchForm::ShiftedPower;
  b.domain_ = domain;
  b.a_ = std::move(shift_in);
  b.b_ = std::move(offset_out);
  b.exp_ = std::move(exponent);
  b.a_d_ = to_double(b.a_);
  b.b_d_ = to_double(b.b_);
  b.exp_d_ = to_double(b.exp_);
  b.family_ = family;
  return b;
}

double BranchMap::operator()(double x) const {
  if (form_ == BranchForm::Affine) return a_d_ * x + b_d_;
  return power_eval(x - a_d_, exp_, exp_d_) + b_d_;
}

double BranchMap::inverse(double y) const {
  if (form_ == BranchForm::Affine) return (y - b_d_) / a_d_;
  const Rational inv_exp(denominator(exp_), numerator(exp_));
  return power_eval(y - b_d_, inv_exp, 1.0 / exp_d_) + a_d_;
}

Interval BranchMap::image() const {
  return Interval{(*this)(domain_.lo), (*this)(domain_.hi)};
}

BranchMap BranchMap::inverse_branch() const {
  if (form_ == BranchForm::Affine) {
    // y = a x + b  =>  x = (1/a) y - b/a
    return affine(image(), Rational(1) / a_, -b_ / a_, family_);
  }
  // y = (x - s)^e + o  =>  x = (y - o)^(1/e) + s
  return shifted_power(image(), b_, Rational(denominator(exp_), numerator(exp_)), a_, family_);
}

bool BranchMap::is_identity() const {
  return form_ == BranchForm::Affine && a_ == 1 && b_ == 0;
}

}  // namespace mahavier
