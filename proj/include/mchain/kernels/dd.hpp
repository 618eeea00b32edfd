#pragma once

#include <cmath>

// Error-free transformations for double-double arithmetic. Translation units
// using these must be compiled with -ffp-contract=off.

namespace mchain::dd {

inline void two_sum(double a, double b, double& s, double& e) {
  s = a + b;
  double bb = s - a;
  e = (a - (s - bb)) + (b - bb);
}

inline void quick_two_sum(double a, double b, double& s, double& e) {
  s = a + b;
  e = b - (s - a);
}

inline void two_prod(double a, double b, double& p, double& e) {
  p = a * b;
  e = std::fma(a, b, -p);
}

/// (sh, sl) += x * (ah + al) for an integer-valued double x.
inline void accumulate(double x, double ah, double al, double& sh, double& sl) {
  double ph, pl;
  two_prod(x, ah, ph, pl);
  pl = std::fma(x, al, pl);
  double s, e;
  two_sum(sh, ph, s, e);
  e += sl + pl;
  quick_two_sum(s, e, sh, sl);
}

}  // namespace mchain::dd
