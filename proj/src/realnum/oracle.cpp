#include "mchain/oracle.hpp"

#include <atomic>

#include "mchain/errors.hpp"

namespace mchain {

namespace {
std::atomic<long> g_max_bits{4096};
}

long max_precision_bits() { return g_max_bits.load(std::memory_order_relaxed); }

void set_max_precision_bits(long bits) {
  if (bits < 64) throw Error("precision cap must be at least 64 bits");
  g_max_bits.store(bits, std::memory_order_relaxed);
}

Interval Oracle::interval(long bits) const {
  std::lock_guard<std::mutex> lock(mu_);
  if (auto it = cache_.find(bits); it != cache_.end()) return it->second;
  // Raw enclosure two bits finer, rounded outward on a grid four bits finer:
  // width <= 3/8 * 2^-bits, leaving room for the hull below.
  Interval out = compute(bits + 2).round_out(bits + 4);
  // Contained in every coarser enclosure already handed out.
  for (auto it = cache_.begin(); it != cache_.end() && it->first < bits; ++it) {
    out = out.intersect(it->second);
  }
  // Contains every finer one; the hull of two enclosures of one point has
  // width at most the sum, and the finer one is at most 2^-(bits+1) wide.
  if (auto it = cache_.upper_bound(bits); it != cache_.end()) out = out.hull(it->second);
  cache_.emplace(bits, out);
  return out;
}

int LiouvilleOracle::truncation_level(const Rational& width) {
  // 2 * 10^{-(M+1)!} <= width  <=>  10^{(M+1)!} >= 2 / width.
  Rational need = 2 / width;
  Integer fact(1);
  for (int M = 1;; ++M) {
    fact *= (M + 1);
    if (!fact.fits_ulong_p()) return M;
    if (pow(Rational(10), static_cast<unsigned>(fact.get_ui())) >= need) return M;
  }
}

Rational LiouvilleOracle::partial_sum(int M) {
  Rational s(0);
  unsigned long fact = 1;
  for (int m = 1; m <= M; ++m) {
    fact *= static_cast<unsigned long>(m);
    s += Rational(1) / pow(Integer(10), static_cast<unsigned>(fact));
  }
  s.canonicalize();
  return s;
}

Interval LiouvilleOracle::compute(long bits) const {
  int M = truncation_level(pow2(-bits));
  unsigned long fact = 1;
  for (int m = 2; m <= M + 1; ++m) fact *= static_cast<unsigned long>(m);
  Rational s = partial_sum(M);
  Rational tail = Rational(2) / pow(Integer(10), static_cast<unsigned>(fact));
  tail.canonicalize();
  return {s, s + tail};
}

DecimalOracle::DecimalOracle(Rational value, Rational tail)
    : Oracle(true), value_(std::move(value)), tail_(std::move(tail)) {
  if (tail_ <= 0) throw ParseError("decimal tail bound must be positive");
}

std::string DecimalOracle::describe() const {
  return "decimal " + to_string(value_) + " +- " + to_string(tail_);
}

Interval DecimalOracle::compute(long bits) const {
  if (2 * tail_ > pow2(-bits)) {
    throw PrecisionExhausted("decimal input too short for 2^-" + std::to_string(bits) + " precision");
  }
  return {value_ - tail_, value_ + tail_};
}

DerivedOracle::DerivedOracle(Fn fn, std::string label, bool asserted_irrational)
    : Oracle(asserted_irrational), fn_(std::move(fn)), label_(std::move(label)) {}

Interval DerivedOracle::compute(long bits) const {
  Rational target = pow2(-bits);
  const long cap = max_precision_bits() + 512;
  for (long extra = 8;; extra *= 2) {
    long p = bits + extra;
    if (p > cap) break;
    Interval v = fn_(p);
    if (v.width() <= target) return v;
  }
  throw PrecisionExhausted("derived value '" + label_ + "' not resolvable at 2^-" + std::to_string(bits));
}

}  // namespace mchain
