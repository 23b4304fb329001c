#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace mahavier {

/// Exact rational arithmetic. Branch parameters and never-connect checks are
/// exact; orbit dynamics are binary64.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/// Parses "p/q" or a bare integer "p". Throws std::invalid_argument on junk.
Rational parse_rational(const std::string& text);

/// Formats as "p/q" (the wire form used by relation specs).
std::string format_rational(const Rational& r);

/// Exact r^k for any integer k (negative exponents invert). Throws on 0^-k.
Rational rational_pow(const Rational& base, long exp);

}  // namespace mahavier
