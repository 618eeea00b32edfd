#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <variant>

#include "mchain/number_field.hpp"
#include "mchain/oracle.hpp"

namespace mchain {

/// An exactly comparable real: a rational, an element of a real number field,
/// or a precision oracle. Immutable and cheap to copy.
class RealScalar {
 public:
  enum class Kind { rational, algebraic, oracle };

  RealScalar() : value_(Rational(0)) {}
  RealScalar(Rational r) : value_(std::move(r)) {}  // NOLINT(google-explicit-constructor)
  RealScalar(long v) : value_(Rational(v)) {}       // NOLINT(google-explicit-constructor)
  explicit RealScalar(FieldElement e);
  explicit RealScalar(OraclePtr o) : value_(std::move(o)) {}

  Kind kind() const;
  const Rational& rational() const { return std::get<Rational>(value_); }
  const FieldElement& algebraic() const { return std::get<FieldElement>(value_); }
  const OraclePtr& oracle() const { return std::get<OraclePtr>(value_); }

  /// Enclosure of width <= 2^-bits.
  Interval interval(long bits) const;
  /// Nearest double, for display only.
  double approx() const;
  std::string describe() const;

  RealScalar operator-() const;
  friend RealScalar operator+(const RealScalar& a, const RealScalar& b);
  friend RealScalar operator-(const RealScalar& a, const RealScalar& b);
  friend RealScalar operator*(const RealScalar& a, const RealScalar& b);
  friend RealScalar operator/(const RealScalar& a, const RealScalar& b);

  /// Parses the number grammar: rational:a/b, algebraic:c_d,...,c_0:lo,hi,
  /// builtin:name, decimal:digits:tail=r.
  static RealScalar parse(std::string_view spec);

 private:
  std::variant<Rational, FieldElement, OraclePtr> value_;
};

enum class Ordering { LT, EQ, GT };

/// Exact sign. Oracles are refined up to max_precision_bits().
int sign_of(const RealScalar& x);
/// Exact comparison of |x| and |y|.
Ordering compare_abs(const RealScalar& x, const RealScalar& y);
/// Exact equality test; for oracle values this throws PrecisionExhausted
/// unless the values are separable.
bool exactly_equal(const RealScalar& x, const RealScalar& y);

/// Exact floor of x.
Integer floor_of(const RealScalar& x);

/// golden, cos2pi7 or liouville.
RealScalar builtin(std::string_view name);

/// Sign of an interval-valued quantity, refined up to the precision cap.
/// `enclose(bits)` must return an enclosure whose width tends to zero.
int refine_sign(const std::function<Interval(long)>& enclose, std::string_view what);

}  // namespace mchain
