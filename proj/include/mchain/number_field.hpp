#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "mchain/interval.hpp"
#include "mchain/numeric.hpp"

namespace mchain {

/// Dense polynomial over Q, coefficients stored lowest degree first.
using Poly = std::vector<Rational>;

namespace poly {
void trim(Poly& p);
int degree(const Poly& p);  // -1 for the zero polynomial
Rational eval(const Poly& p, const Rational& x);
Interval eval(const Poly& p, const Interval& x);
Poly derivative(const Poly& p);
Poly sub(const Poly& a, const Poly& b);
Poly mul(const Poly& a, const Poly& b);
/// Remainder of a modulo b (b nonzero).
Poly rem(const Poly& a, const Poly& b);
void divmod(const Poly& a, const Poly& b, Poly& quot, Poly& rest);
Poly gcd(const Poly& a, const Poly& b);  // monic
/// Number of distinct real roots in (lo, hi] of a squarefree p.
int count_roots(const Poly& p, const Rational& lo, const Rational& hi);
Poly from_integers_high_first(const std::vector<Integer>& c);
}  // namespace poly

/// Q(theta) for a real root theta of an integer polynomial, pinned down by an
/// isolating interval. Irreducibility of the polynomial is the caller's
/// responsibility; a reducible modulus is detected lazily when an inverse
/// fails to exist.
class NumberField {
 public:
  /// `coeffs` lists c_d, ..., c_0. Throws ParseError if the polynomial is not
  /// squarefree or the interval does not isolate exactly one root.
  NumberField(std::vector<Integer> coeffs, Interval isolating);

  int degree() const { return degree_; }
  const std::vector<Integer>& coefficients() const { return coeffs_; }
  /// Monic modulus, lowest degree first.
  const Poly& modulus() const { return monic_; }
  const Interval& isolating_interval() const { return isolating_; }

  /// Enclosure of theta of width <= 2^-bits. Thread-safe.
  Interval root_interval(long bits) const;

  /// True when both describe the same embedded field and generator.
  bool same_as(const NumberField& other) const;

  std::string describe() const;

 private:
  std::vector<Integer> coeffs_;
  Poly poly_;
  Poly monic_;
  Interval isolating_;
  int degree_;
  mutable std::mutex mu_;
  mutable std::map<long, Interval> cache_;
};

using FieldPtr = std::shared_ptr<const NumberField>;

/// Element of a NumberField as coordinates over the power basis 1, theta, ...
class FieldElement {
 public:
  FieldElement() = default;
  FieldElement(FieldPtr field, Poly coords);
  static FieldElement constant(FieldPtr field, const Rational& c);
  static FieldElement generator(FieldPtr field);

  const FieldPtr& field() const { return field_; }
  const Poly& coords() const { return coords_; }

  bool is_zero() const;
  std::optional<Rational> as_rational() const;
  /// Enclosure of width <= 2^-bits.
  Interval interval(long bits) const;
  /// Exact sign. Terminates for every element since zero is detected symbolically.
  int sign() const;

  FieldElement inverse() const;
  FieldElement operator-() const;
  friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator/(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator*(const Rational& s, const FieldElement& a);
  friend bool operator==(const FieldElement& a, const FieldElement& b);

 private:
  FieldPtr field_;
  Poly coords_;  // exactly degree() entries
};

/// Throws CrossFieldError unless the two fields coincide.
void require_same_field(const FieldPtr& a, const FieldPtr& b);

}  // namespace mchain
