#pragma once

#include <string>
#include <vector>

#include "mchain/hurwitz.hpp"
#include "mchain/minkowski.hpp"

namespace mchain::testing {

// Rows of B are (q, -p) and (q', -p') of the Farey pair, in either order.
inline bool matches_farey_pair(const IntMatrix& B, const FareyPair& f) {
  IntMatrix a = IntMatrix::from_rows(std::vector<std::vector<Integer>>{{f.q, -f.p}, {f.qp, -f.pp}});
  IntMatrix b = IntMatrix::from_rows(std::vector<std::vector<Integer>>{{f.qp, -f.pp}, {f.q, -f.p}});
  return B == a || B == b;
}

struct BlockStep {
  std::size_t k = 0, b = 0;
  char kind = '?';  // 'L', 'R', 'l' (J L^b), 'r' (J R^b)
  bool ok = false;
  std::string detail;
};

inline IntMatrix power(const IntMatrix& m, std::size_t e) {
  IntMatrix r = IntMatrix::identity(m.rows());
  for (std::size_t i = 0; i < e; ++i) r = r * m;
  return r;
}

// For k = a_1 + ... + a_j + a (0 <= a < a_{j+1}) with b = a if a > 0 else a_j,
// checks B_k = M B_{k-b} with M in {L^b, R^b, J L^b, J R^b} and the matching
// exact identity for alpha_{k,1} in terms of x = alpha_{k-b,1}:
// x / (1 + b x), x + b, b + 1/x, 1 / (x + b).
inline std::vector<BlockStep> block_recurrence(const std::vector<ChainEntry>& entries,
                                               const std::vector<Integer>& quotients) {
  const IntMatrix L{{1, 0}, {1, 1}}, R{{1, 1}, {0, 1}}, J{{0, 1}, {1, 0}};
  std::vector<BlockStep> out;
  for (std::size_t k = 1; k <= entries.size(); ++k) {
    std::size_t rest = k, j = 0;
    while (j < quotients.size() && rest >= quotients[j].get_ui()) rest -= quotients[j++].get_ui();
    if (j == quotients.size()) break;
    std::size_t b = rest > 0 ? rest : (j > 0 ? quotients[j - 1].get_ui() : 0);
    if (b == 0 || b >= k) continue;
    BlockStep s;
    s.k = k;
    s.b = b;
    const ChainEntry& now = entries[k - 1];
    const ChainEntry& then = entries[k - b - 1];
    IntMatrix M = now.B * inverse_unimodular(then.B);
    RealScalar x = then.alpha_k.front();
    RealScalar want;
    RealScalar bb(static_cast<long>(b));
    if (M == power(L, b)) {
      s.kind = 'L';
      want = x / (RealScalar(1L) + bb * x);
    } else if (M == power(R, b)) {
      s.kind = 'R';
      want = x + bb;
    } else if (M == J * power(L, b)) {
      s.kind = 'l';
      want = bb + RealScalar(1L) / x;
    } else if (M == J * power(R, b)) {
      s.kind = 'r';
      want = RealScalar(1L) / (x + bb);
    } else {
      s.detail = "M = " + to_string(M);
      out.push_back(s);
      continue;
    }
    s.ok = exactly_equal(now.alpha_k.front(), want) &&
           exactly_equal(now.alpha_k.front(), projective_action(M, then.alpha_k).front());
    if (!s.ok) s.detail = "identity fails";
    out.push_back(s);
  }
  return out;
}

}  // namespace mchain::testing
