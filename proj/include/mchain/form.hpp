#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "mchain/real_scalar.hpp"

namespace mchain {

/// The coefficient tuple (alpha_1, ..., alpha_n) of a linear form.
struct FormTarget {
  std::vector<RealScalar> alphas;
  bool independence_asserted = false;
  /// Set when independence of {alpha_1, ..., alpha_n, 1} was proven exactly.
  bool independence_verified = false;

  std::size_t n() const { return alphas.size(); }
  std::size_t ell() const { return alphas.size() + 1; }
};

/// Builds a target and checks independence of {alpha_1, ..., alpha_n, 1}.
/// Values from a single number field are checked exactly; anything involving
/// an oracle relies on `asserted`. Throws DependentTarget otherwise.
FormTarget make_target(std::vector<RealScalar> alphas, bool asserted = false);

/// The target (alpha^n, ..., alpha^2, alpha).
FormTarget powers_target(const RealScalar& alpha, int n, bool asserted = false);

/// Exact linear form evaluation xi(c) = c_ell + sum_i alpha_i c_i.
///
/// Signs of integer combinations are decided by a double-double estimate with
/// a certified error bound, falling back to exact field arithmetic or interval
/// refinement when the estimate is inconclusive.
class FormContext {
 public:
  explicit FormContext(FormTarget target);

  const FormTarget& target() const { return target_; }
  std::size_t n() const { return target_.n(); }
  std::size_t ell() const { return target_.ell(); }
  /// True when every alpha lives in one number field (or is rational).
  bool exact() const { return field_ != nullptr; }
  const FieldPtr& field() const { return field_; }

  /// alpha_i ~ hi[i] + lo[i] with |error| <= err[i].
  const std::vector<double>& alpha_hi() const { return hi_; }
  const std::vector<double>& alpha_lo() const { return lo_; }
  const std::vector<double>& alpha_err() const { return err_; }

  int sign(std::span<const std::int64_t> c) const;
  int sign(std::span<const Integer> c) const;
  Interval interval(std::span<const Integer> c, long bits) const;
  /// xi(c) as a field element (exact targets) or derived oracle.
  RealScalar value(std::span<const Integer> c) const;
  RealScalar value(std::span<const std::int64_t> c) const;

  /// Double-double estimate of xi(c) and a rigorous bound on its error.
  /// Returns false if the coefficients are too large for the fast path.
  bool estimate(std::span<const Integer> c, double& value, double& err) const;
  void estimate(std::span<const std::int64_t> c, double& value, double& err) const;

 private:
  int exact_sign(std::span<const Integer> c) const;

  FormTarget target_;
  FieldPtr field_;
  std::vector<Poly> coords_;  // field coordinates of alpha_i
  std::vector<double> hi_, lo_, err_, mag_;
};

using ContextPtr = std::shared_ptr<const FormContext>;

/// sum_i num_i gamma_i / den with gamma = (alpha_1, ..., alpha_n, 1), den > 0.
/// Norm values of lattice vectors live in this span and compare exactly.
struct SpanValue {
  std::vector<Integer> num;
  Integer den{1};

  static SpanValue zero(std::size_t ell);
  static SpanValue constant(std::size_t ell, const Rational& c);
  static SpanValue of_integers(std::span<const Integer> c);
  static SpanValue of_integers(std::span<const std::int64_t> c);

  SpanValue operator-() const;
  SpanValue scaled(const Rational& s) const;
  void normalize();
};

SpanValue operator+(const SpanValue& a, const SpanValue& b);
SpanValue operator-(const SpanValue& a, const SpanValue& b);
bool operator==(const SpanValue& a, const SpanValue& b);

int sign(const FormContext& ctx, const SpanValue& v);
/// Sign of a - b.
int compare(const FormContext& ctx, const SpanValue& a, const SpanValue& b);
SpanValue abs(const FormContext& ctx, const SpanValue& v);
Interval interval(const FormContext& ctx, const SpanValue& v, long bits);
RealScalar value(const FormContext& ctx, const SpanValue& v);
/// Double estimate of v with certified error bound; false if not available.
bool estimate(const FormContext& ctx, const SpanValue& v, double& value, double& err);

}  // namespace mchain
