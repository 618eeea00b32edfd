#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "mchain/form.hpp"
#include "mchain/intmat.hpp"

namespace mchain::testing {

struct GlOptimum {
  IntMatrix A;
  SpanValue value;  // max_i |xi(row_i)|
};

namespace detail {

inline std::int64_t det_small(const std::vector<const std::vector<std::int64_t>*>& rows) {
  const std::size_t n = rows.size();
  if (n == 2) return (*rows[0])[0] * (*rows[1])[1] - (*rows[0])[1] * (*rows[1])[0];
  if (n == 3) {
    const auto &a = *rows[0], &b = *rows[1], &c = *rows[2];
    return a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) + a[2] * (b[0] * c[1] - b[1] * c[0]);
  }
  std::vector<std::vector<std::int64_t>> r;
  for (auto* p : rows) r.push_back(*p);
  return det(IntMatrix::from_rows(r)).get_si();
}

}  // namespace detail

// Minimum of max_i |xi(row_i)| over all A with |A|_inf < Q and |det A| = 1,
// for ell = 2 or 3: walk the box vectors in |xi| order and stop at the first
// prefix that contains a unimodular ell-subset.
inline GlOptimum gl_optimum(const FormContext& ctx, long Q) {
  const std::size_t ell = ctx.ell();
  const long K = Q - 1;
  std::vector<std::vector<std::int64_t>> vs;
  std::vector<std::int64_t> v(ell, -K);
  while (true) {
    std::size_t f = 0;
    while (f < ell && v[f] == 0) ++f;
    if (f < ell && v[f] > 0) vs.push_back(v);
    std::size_t i = ell;
    while (i > 0 && v[i - 1] == K) {
      v[i - 1] = -K;
      --i;
    }
    if (i == 0) break;
    ++v[i - 1];
  }
  std::vector<SpanValue> val;
  for (const auto& x : vs) val.push_back(abs(ctx, SpanValue::of_integers(std::span<const std::int64_t>(x))));
  std::vector<std::size_t> order(vs.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return compare(ctx, val[a], val[b]) < 0; });
  for (std::size_t k = 0; k < order.size(); ++k) {
    // Subsets of the prefix that contain order[k].
    std::vector<std::size_t> pick{order[k]};
    std::optional<std::vector<std::size_t>> hit;
    auto rec = [&](auto&& self, std::size_t from) -> void {
      if (hit) return;
      if (pick.size() == ell) {
        std::vector<const std::vector<std::int64_t>*> rows;
        for (auto i : pick) rows.push_back(&vs[i]);
        auto d = detail::det_small(rows);
        if (d == 1 || d == -1) hit = pick;
        return;
      }
      for (std::size_t j = from; j < k; ++j) {
        pick.push_back(order[j]);
        self(self, j + 1);
        pick.pop_back();
      }
    };
    rec(rec, 0);
    if (hit) {
      std::vector<std::vector<std::int64_t>> rows;
      for (auto i : *hit) rows.push_back(vs[i]);
      return GlOptimum{IntMatrix::from_rows(rows), val[order[k]]};
    }
  }
  throw InconsistencyError("no unimodular matrix in the box");
}

}  // namespace mchain::testing
