#include "mchain/interval.hpp"

#include <algorithm>
#include <ostream>

#include "mchain/errors.hpp"

namespace mchain {

Interval::Interval(Rational lo_, Rational hi_) : lo(std::move(lo_)), hi(std::move(hi_)) {
  if (lo > hi) throw Error("interval with lo > hi");
}

Rational Interval::mid() const {
  Rational m = (lo + hi) / 2;
  m.canonicalize();
  return m;
}

int Interval::sign() const {
  if (lo > 0) return 1;
  if (hi < 0) return -1;
  return 0;
}

Interval Interval::abs() const {
  if (lo >= 0) return *this;
  if (hi <= 0) return -*this;
  return {Rational(0), std::max(Rational(-lo), hi)};
}

Interval Interval::inverse() const {
  if (contains_zero()) throw ZeroDenominator("interval inverse across zero");
  return {1 / hi, 1 / lo};
}

Interval Interval::round_out(long bits) const {
  Rational scale = pow2(bits);
  Rational l = Rational(floor(lo * scale)) / scale;
  Rational h = Rational(ceil(hi * scale)) / scale;
  l.canonicalize();
  h.canonicalize();
  return {l, h};
}

Interval Interval::intersect(const Interval& other) const {
  Rational l = std::max(lo, other.lo);
  Rational h = std::min(hi, other.hi);
  if (l > h) throw InconsistencyError("disjoint enclosures of one real number");
  return {l, h};
}

Interval Interval::hull(const Interval& other) const {
  return {std::min(lo, other.lo), std::max(hi, other.hi)};
}

Interval operator+(const Interval& a, const Interval& b) { return {a.lo + b.lo, a.hi + b.hi}; }

Interval operator-(const Interval& a, const Interval& b) { return {a.lo - b.hi, a.hi - b.lo}; }

Interval operator*(const Interval& a, const Interval& b) {
  Rational c1 = a.lo * b.lo;
  Rational c2 = a.lo * b.hi;
  Rational c3 = a.hi * b.lo;
  Rational c4 = a.hi * b.hi;
  return {std::min({c1, c2, c3, c4}), std::max({c1, c2, c3, c4})};
}

Interval operator/(const Interval& a, const Interval& b) { return a * b.inverse(); }

Interval operator*(const Rational& s, const Interval& a) {
  if (s >= 0) return {s * a.lo, s * a.hi};
  return {s * a.hi, s * a.lo};
}

Interval operator+(const Rational& s, const Interval& a) { return {s + a.lo, s + a.hi}; }

Interval pow(const Interval& a, unsigned exp) {
  if (exp == 0) return Interval::point(Rational(1));
  if (exp % 2 == 1) return {pow(a.lo, exp), pow(a.hi, exp)};
  Interval b = a.abs();
  return {pow(b.lo, exp), pow(b.hi, exp)};
}

Interval max(const Interval& a, const Interval& b) {
  return {std::max(a.lo, b.lo), std::max(a.hi, b.hi)};
}

Interval min(const Interval& a, const Interval& b) {
  return {std::min(a.lo, b.lo), std::min(a.hi, b.hi)};
}

std::ostream& operator<<(std::ostream& os, const Interval& x) {
  return os << '[' << to_decimal(x.lo, 20, Rounding::down) << ", "
            << to_decimal(x.hi, 20, Rounding::up) << ']';
}

}  // namespace mchain
