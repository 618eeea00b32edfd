#include "mchain/minkowski.hpp"

#include <algorithm>

#include "mchain/errors.hpp"

namespace mchain {

GreedyMatrix greedy_matrix(const ContextPtr& ctx, long m) {
  if (m < 1) throw InconsistencyError("order m must be positive");
  ChainEngine engine(ctx);
  while (engine.order() < m) engine.step();
  GreedyMatrix g;
  g.m = m;
  g.A = engine.matrix();
  for (const auto& r : engine.rows()) g.beta.push_back(ctx->value(std::span<const std::int64_t>(r)));
  return g;
}

ChainEntry make_entry(const FormContext& ctx, std::size_t k, long m_k, const IntMatrix& B) {
  ChainEntry e;
  e.k = k;
  e.m_k = m_k;
  e.B = B;
  for (std::size_t i = 0; i < B.rows(); ++i) {
    std::vector<Integer> r = B.row(i);
    e.beta.push_back(ctx.value(std::span<const Integer>(r)));
  }
  const RealScalar& last = e.beta.back();
  for (std::size_t i = 0; i + 1 < e.beta.size(); ++i) e.alpha_k.push_back(e.beta[i] / last);
  return e;
}

std::vector<ChainEntry> chain(const ContextPtr& ctx, const ChainLimits& limits) {
  std::vector<ChainEntry> out;
  ChainEngine engine(ctx);
  while (engine.order() < limits.m_max && (!limits.k_max || out.size() < *limits.k_max)) {
    if (engine.step()) out.push_back(make_entry(*ctx, out.size() + 1, engine.order(), engine.matrix()));
  }
  return out;
}

std::vector<RealScalar> projective_action(const IntMatrix& B, const std::vector<RealScalar>& x) {
  const std::size_t n = x.size();
  if (B.rows() != n + 1 || B.cols() != n + 1) throw InconsistencyError("matrix size does not match the tuple");
  auto row_value = [&](std::size_t i) {
    RealScalar acc(Rational(B(i, n)));
    for (std::size_t j = 0; j < n; ++j) {
      if (B(i, j) != 0) acc = acc + RealScalar(Rational(B(i, j))) * x[j];
    }
    return acc;
  };
  RealScalar den = row_value(n);
  if (sign_of(den) == 0) throw ZeroDenominator("projective action: last row vanishes on the tuple");
  std::vector<RealScalar> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(row_value(i) / den);
  return out;
}

namespace {

bool same_tuple(const std::vector<RealScalar>& a, const std::vector<RealScalar>& b, TupleMode mode) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    // Cheap separation first.
    Interval ia = a[i].interval(48), ib = b[i].interval(48);
    if (mode == TupleMode::up_to_sign) {
      ia = ia.abs();
      ib = ib.abs();
    }
    if (ia.hi < ib.lo || ib.hi < ia.lo) return false;
    bool eq = mode == TupleMode::exact ? exactly_equal(a[i], b[i]) : compare_abs(a[i], b[i]) == Ordering::EQ;
    if (!eq) return false;
  }
  return true;
}

}  // namespace

std::vector<TupleClass> distinct_tuples(const std::vector<ChainEntry>& entries, TupleMode mode) {
  std::vector<TupleClass> classes;
  for (const auto& e : entries) {
    auto it = std::find_if(classes.begin(), classes.end(),
                           [&](const TupleClass& c) { return same_tuple(c.tuple, e.alpha_k, mode); });
    if (it != classes.end()) {
      it->ks.push_back(e.k);
      continue;
    }
    TupleClass c;
    for (const auto& x : e.alpha_k) c.tuple.push_back(mode == TupleMode::up_to_sign && sign_of(x) < 0 ? -x : x);
    c.ks.push_back(e.k);
    classes.push_back(std::move(c));
  }
  return classes;
}

std::optional<std::pair<std::size_t, std::size_t>> find_repetition(const std::vector<ChainEntry>& entries) {
  for (std::size_t j = 1; j < entries.size(); ++j)
    for (std::size_t i = 0; i < j; ++i)
      if (same_tuple(entries[i].alpha_k, entries[j].alpha_k, TupleMode::exact)) return std::make_pair(i, j);
  return std::nullopt;
}

std::vector<Integer> recover_minimal_polynomial(const FormContext& ctx, const IntMatrix& Bk, const IntMatrix& Bk2) {
  const std::size_t ell = ctx.ell(), n = ctx.n();
  if (Bk.rows() != ell || Bk2.rows() != ell) throw InconsistencyError("matrix size does not match the target");
  IntMatrix C = adjugate(Bk) * Bk2;
  // C (x^n, ..., x, 1)^T is proportional to (x^n, ..., x, 1)^T. Eliminating
  // the factor between components i and i+1 leaves
  // sum_j c_ij x^(n-j) - x sum_j c_(i+1)j x^(n-j) = 0; coefficients low first.
  std::vector<Integer> found;
  for (std::size_t i = 0; i + 1 < ell && found.empty(); ++i) {
    std::vector<Integer> q(ell + 1, Integer(0));
    for (std::size_t j = 0; j < ell; ++j) {
      q[n - j] += C(i, j);
      q[n - j + 1] -= C(i + 1, j);
    }
    if (std::any_of(q.begin(), q.end(), [](const Integer& c) { return c != 0; })) found = std::move(q);
  }
  if (found.empty()) throw DegenerateScalar("all eliminants vanish: the two chain matrices are proportional");
  while (found.back() == 0) found.pop_back();
  Integer g = 0;
  for (const auto& c : found) g = gcd(g, c);
  for (auto& c : found) c /= g;
  if (found.back() < 0) {
    for (auto& c : found) c = -c;
  }
  std::vector<Integer> high_first(found.rbegin(), found.rend());
  // Check against alpha = last coordinate of the powers target.
  const RealScalar& alpha = ctx.target().alphas.back();
  RealScalar acc(0L);
  for (const auto& c : high_first) acc = acc * alpha + RealScalar(Rational(c));
  if (ctx.exact()) {
    if (sign_of(acc) != 0) throw InconsistencyError("recovered polynomial does not vanish at alpha");
  } else if (!acc.interval(64).contains_zero()) {
    throw InconsistencyError("recovered polynomial does not vanish at alpha");
  }
  return high_first;
}

std::vector<Integer> recover_minimal_polynomial(const FormContext& ctx, const std::vector<ChainEntry>& entries) {
  const auto& al = ctx.target().alphas;
  for (std::size_t i = 0; i + 1 < al.size(); ++i) {
    if (!exactly_equal(al[i], al[i + 1] * al.back())) throw InconsistencyError("target is not of the form (a^n, ..., a)");
  }
  auto rep = find_repetition(entries);
  if (!rep) throw NoRepetition("no repeated tuple among " + std::to_string(entries.size()) + " chain entries");
  return recover_minimal_polynomial(ctx, entries[rep->first].B, entries[rep->second].B);
}

namespace {

// Enclosure of |x| with relative width about 2^-bits.
Interval abs_enclosure(const RealScalar& x, long bits) {
  const long cap = max_precision_bits();
  for (long b = bits;; b *= 2) {
    long bb = std::min(b, cap);
    Interval iv = x.interval(bb).abs();
    if (!iv.contains_zero() && iv.width() <= iv.lo * pow2(-bits)) return iv;
    if (bb >= cap) return iv;
  }
}

}  // namespace

std::vector<DiagnosticRow> diagnose(const FormContext& ctx, const std::vector<ChainEntry>& entries, long bits) {
  std::vector<DiagnosticRow> out;
  const unsigned n = static_cast<unsigned>(ctx.n());
  for (const auto& e : entries) {
    DiagnosticRow r;
    r.k = e.k;
    r.m_k = e.m_k;
    r.abs_alpha_k1 = abs_enclosure(e.alpha_k.front(), bits);
    Rational scale = pow(Rational(e.m_k), n);
    r.scaled_beta1 = scale * abs_enclosure(e.beta.front(), bits);
    r.scaled_beta_ell = scale * abs_enclosure(e.beta.back(), bits);
    r.det = det(e.B);
    if (out.empty()) {
      r.running_min_alpha_k1 = r.abs_alpha_k1;
      r.running_min_scaled_beta1 = r.scaled_beta1;
      r.running_max_scaled_beta_ell = r.scaled_beta_ell;
    } else {
      const DiagnosticRow& p = out.back();
      r.running_min_alpha_k1 = min(p.running_min_alpha_k1, r.abs_alpha_k1);
      r.running_min_scaled_beta1 = min(p.running_min_scaled_beta1, r.scaled_beta1);
      r.running_max_scaled_beta_ell = max(p.running_max_scaled_beta_ell, r.scaled_beta_ell);
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<DiagnosticRow> diagnose(const ContextPtr& ctx, const ChainLimits& limits, long bits) {
  return diagnose(*ctx, chain(ctx, limits), bits);
}

}  // namespace mchain
