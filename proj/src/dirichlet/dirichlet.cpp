#include "mchain/dirichlet.hpp"

#include <algorithm>

#include "mchain/errors.hpp"

namespace mchain {

namespace {

constexpr long kValueBits = 80;

DirichletCertificate certify(const FormContext& ctx, long Q, const DirichletCandidate& c) {
  DirichletCertificate out;
  out.Q = Q;
  out.t = c.t;
  out.A = c.A;
  out.det = c.det;
  out.value = c.value;
  out.c_achieved = pow(Rational(Q), static_cast<unsigned>(ctx.n())) * c.value;
  return out;
}

}  // namespace

std::vector<Rational> DirichletPolicy::factors() const {
  if (!custom.empty()) return custom;
  std::vector<Rational> out;
  for (int j = 0; j <= J; ++j) out.push_back(Rational(1) / pow(Rational(2), static_cast<unsigned>(j)));
  for (int j = 1; j <= J; ++j) out.push_back(pow(Rational(3, 2), static_cast<unsigned>(j)));
  for (int k = 1; k <= 2 * refine; ++k) {
    Rational f(k, refine);
    f.canonicalize();
    if (std::find(out.begin(), out.end(), f) == out.end()) out.push_back(f);
  }
  return out;
}

std::vector<DirichletCandidate> dirichlet_scan(const ContextPtr& ctx, long Q, const DirichletPolicy& policy) {
  if (Q < 2) throw ParseError("Q must be at least 2");
  if (policy.J < 0 || policy.refine < 0) throw ParseError("policy parameters must be non-negative");
  std::vector<DirichletCandidate> out;
  for (const auto& f : policy.factors()) {
    DirichletCandidate c;
    c.t = f * Rational(Q);
    NormedLattice lat = lambda_lattice(ctx, c.t);
    ReducedBasisReport r = reduced_basis(lat);
    // Rows in increasing |xi(row)|; the value is the last one.
    std::vector<std::pair<SpanValue, std::vector<Integer>>> rows;
    for (std::size_t i = 0; i < r.coeffs.rows(); ++i) {
      std::vector<Integer> row = r.coeffs.row(i);
      rows.emplace_back(abs(*ctx, SpanValue::of_integers(std::span<const Integer>(row))), std::move(row));
    }
    std::sort(rows.begin(), rows.end(), [&](const auto& a, const auto& b) { return compare(*ctx, a.first, b.first) < 0; });
    for (const auto& [v, row] : rows) c.A.push_row(std::span<const Integer>(row));
    c.det = det(c.A);
    c.norm = c.A.max_abs();
    c.admissible = abs(c.det) == 1 && c.norm < Q;
    c.value_exact = rows.back().first;
    c.value = interval(*ctx, c.value_exact, kValueBits);
    out.push_back(std::move(c));
  }
  return out;
}

DirichletCertificate dirichlet_basis(const ContextPtr& ctx, long Q, const DirichletPolicy& policy) {
  auto scan = dirichlet_scan(ctx, Q, policy);
  const DirichletCandidate* best = nullptr;
  const DirichletCandidate* near = nullptr;
  for (const auto& c : scan) {
    if (c.admissible) {
      if (!best || compare(*ctx, c.value_exact, best->value_exact) < 0) best = &c;
    } else if (abs(c.det) == 1 && (!near || c.norm < near->norm)) {
      near = &c;
    }
  }
  if (best) return certify(*ctx, Q, *best);
  std::string msg = "no scanned scale gives |A|_inf < " + std::to_string(Q);
  if (near) msg += "; nearest: t = " + to_string(near->t) + " with |A|_inf = " + to_string(near->norm);
  throw BoundExceeded(msg);
}

std::vector<CPoint> c_trajectory(const ContextPtr& ctx, const std::vector<long>& Q_grid,
                                 const DirichletPolicy& policy) {
  std::vector<CPoint> out;
  std::optional<Interval> run;
  for (long Q : Q_grid) {
    CPoint p;
    p.Q = Q;
    try {
      p.cert = dirichlet_basis(ctx, Q, policy);
      run = run ? max(*run, p.cert->c_achieved) : p.cert->c_achieved;
    } catch (const BoundExceeded& e) {
      p.failure = e.what();
    }
    p.running_max_c = run;
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace mchain
