#pragma once

#include <iosfwd>

#include "mchain/numeric.hpp"

namespace mchain {

/// Closed interval [lo, hi] with exact rational endpoints.
struct Interval {
  Rational lo;
  Rational hi;

  Interval() = default;
  Interval(Rational lo_, Rational hi_);
  static Interval point(const Rational& x) { return {x, x}; }

  Rational width() const { return hi - lo; }
  Rational mid() const;
  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
  bool contains_zero() const { return lo <= 0 && hi >= 0; }
  bool subset_of(const Interval& other) const { return other.lo <= lo && hi <= other.hi; }
  /// +1 / -1 if the interval excludes zero, 0 otherwise.
  int sign() const;

  Interval abs() const;
  Interval operator-() const { return {-hi, -lo}; }
  Interval inverse() const;  // throws ZeroDenominator if 0 is inside

  /// Smallest interval with endpoints on the grid 2^-bits that contains *this.
  Interval round_out(long bits) const;
  Interval intersect(const Interval& other) const;
  Interval hull(const Interval& other) const;
};

Interval operator+(const Interval& a, const Interval& b);
Interval operator-(const Interval& a, const Interval& b);
Interval operator*(const Interval& a, const Interval& b);
Interval operator/(const Interval& a, const Interval& b);
Interval operator*(const Rational& s, const Interval& a);
Interval operator+(const Rational& s, const Interval& a);

/// Interval power for a non-negative exponent (tight for even powers).
Interval pow(const Interval& a, unsigned exp);
Interval max(const Interval& a, const Interval& b);
Interval min(const Interval& a, const Interval& b);

std::ostream& operator<<(std::ostream& os, const Interval& x);

}  // namespace mchain
