#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace mchain {

using Integer = mpz_class;
using Rational = mpq_class;

/// Largest integer <= x.
Integer floor(const Rational& x);
/// Smallest integer >= x.
Integer ceil(const Rational& x);

Rational pow(const Rational& base, unsigned exp);
Integer pow(const Integer& base, unsigned exp);

/// 2^k as a rational (k may be negative).
Rational pow2(long k);

bool fits_int64(const Integer& x);
std::int64_t to_int64(const Integer& x);

/// Parses "a", "a/b", "-a/b" or a finite decimal "12.5e-3" exactly.
Rational parse_rational(std::string_view text);

std::string to_string(const Integer& x);
std::string to_string(const Rational& x);

enum class Rounding { down, up };

/// Writes x as a finite decimal with `significant` significant digits,
/// rounded in the requested direction. No exponent notation; the string is
/// an exact decimal fraction bounding x from the requested side.
std::string to_decimal(const Rational& x, int significant, Rounding dir);

/// Nearest double (ties to even); never used for decisions.
double to_double(const Rational& x);

/// floor(log2(|x|)) for x != 0.
long ilog2(const Rational& x);

}  // namespace mchain
