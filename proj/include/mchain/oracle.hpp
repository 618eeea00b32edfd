#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "mchain/interval.hpp"

namespace mchain {

/// Upper limit on refinement precision (bits) used by every sign decision.
long max_precision_bits();
void set_max_precision_bits(long bits);

/// A real number known only through certified enclosures.
///
/// interval(p) has width <= 2^-p, contains the value, and is nested with every
/// interval previously returned by the same object: lower precision requests
/// always contain higher precision ones.
class Oracle {
 public:
  explicit Oracle(bool asserted_irrational = true) : irrational_(asserted_irrational) {}
  virtual ~Oracle() = default;
  Oracle(const Oracle&) = delete;
  Oracle& operator=(const Oracle&) = delete;

  Interval interval(long bits) const;
  bool asserted_irrational() const { return irrational_; }
  virtual std::string describe() const = 0;

 protected:
  /// Raw enclosure of width <= 2^-bits; no nesting requirement.
  virtual Interval compute(long bits) const = 0;

 private:
  bool irrational_;
  mutable std::mutex mu_;
  mutable std::map<long, Interval> cache_;
};

using OraclePtr = std::shared_ptr<const Oracle>;

/// Sum of 10^{-m!} for m >= 1.
class LiouvilleOracle final : public Oracle {
 public:
  /// Least M with 2 * 10^{-(M+1)!} <= width.
  static int truncation_level(const Rational& width);
  static Rational partial_sum(int M);
  std::string describe() const override { return "liouville"; }

 protected:
  Interval compute(long bits) const override;
};

/// A decimal approximation d with |x - d| <= tail. Requests finer than the
/// tail raise PrecisionExhausted.
class DecimalOracle final : public Oracle {
 public:
  DecimalOracle(Rational value, Rational tail);
  std::string describe() const override;

 protected:
  Interval compute(long bits) const override;

 private:
  Rational value_;
  Rational tail_;
};

/// Oracle defined by a function from precision to enclosure; used for values
/// derived from other oracles. The function may return wider intervals than
/// requested, in which case precision is increased until it complies.
class DerivedOracle final : public Oracle {
 public:
  using Fn = std::function<Interval(long bits)>;
  DerivedOracle(Fn fn, std::string label, bool asserted_irrational = true);
  std::string describe() const override { return label_; }

 protected:
  Interval compute(long bits) const override;

 private:
  Fn fn_;
  std::string label_;
};

}  // namespace mchain
