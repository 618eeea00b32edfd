#include <algorithm>

#include "mchain/errors.hpp"
#include "mchain/lattice.hpp"
#include "mchain/oracle.hpp"

namespace mchain {

namespace {

Interval positive_part(const Interval& x) {
  Rational lo = x.lo > 0 ? x.lo : Rational(0);
  Rational hi = x.hi > 0 ? x.hi : Rational(0);
  return {lo, hi};
}

// Volume of {y in prod [-w_i, w_i] : sum y_i <= u} by inclusion-exclusion
// over the corners of the box.
Interval corner_sum(const std::vector<Interval>& w, const Interval& u) {
  const std::size_t ell = w.size();
  Interval total = Interval::point(0);
  Interval W = Interval::point(0);
  for (const auto& x : w) W = W + x;
  for (std::size_t mask = 0; mask < (std::size_t{1} << ell); ++mask) {
    Interval s = u + W;
    int parity = 0;
    for (std::size_t i = 0; i < ell; ++i) {
      if (mask >> i & 1) {
        s = s - Rational(2) * w[i];
        parity ^= 1;
      }
    }
    Interval term = pow(positive_part(s), static_cast<unsigned>(ell));
    total = parity ? total - term : total + term;
  }
  Integer f = 1;
  for (std::size_t i = 2; i <= ell; ++i) f *= static_cast<unsigned long>(i);
  return Rational(Integer(1), f) * total;
}

}  // namespace

Interval cube_slab_volume(const FormContext& ctx, const Interval& h, long bits) {
  const std::size_t n = ctx.n();
  const long cap = max_precision_bits();
  for (long b = bits + 16;; b *= 2) {
    const long bb = std::min(b, cap);
    // Substituting y_i = a_i x_i maps the cube onto prod [-|a_i|, |a_i|].
    std::vector<Interval> w;
    bool separated = true;
    for (std::size_t i = 0; i < n; ++i) {
      Interval a = ctx.target().alphas[i].interval(bb).abs();
      if (a.lo <= 0) separated = false;
      w.push_back(a);
    }
    w.push_back(Interval::point(1));
    if (separated) {
      Interval jac = Interval::point(1);
      for (const auto& x : w) jac = jac * x;
      Interval slab = corner_sum(w, h) - corner_sum(w, -h);
      return slab / jac;
    }
    if (bb >= cap) throw PrecisionExhausted("cube_slab_volume: a coefficient could not be separated from zero");
  }
}

}  // namespace mchain
