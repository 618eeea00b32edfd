#include "mchain/lattice.hpp"

#include <algorithm>

#include "mchain/errors.hpp"
#include "mchain/hurwitz.hpp"
#include "mchain/oracle.hpp"

namespace mchain {

namespace {

template <class T>
Integer sup_abs(std::span<const T> c, std::size_t count) {
  Integer s = 0;
  for (std::size_t i = 0; i < count; ++i) {
    Integer x(c[i]);
    if (abs(x) > s) s = abs(x);
  }
  return s;
}

SpanValue larger(const FormContext& ctx, SpanValue a, SpanValue b) {
  return compare(ctx, a, b) >= 0 ? std::move(a) : std::move(b);
}

Integer factorial(unsigned k) {
  Integer f = 1;
  for (unsigned i = 2; i <= k; ++i) f *= i;
  return f;
}

// Enclosure of a product of norms, refined until the bound check is decided.
BoundCheck check_range(const NormedLattice& lat, const std::vector<LatticeVector>& vs, const Rational& lower,
                       const Rational& upper, bool has_lower, const char* what) {
  const long cap = max_precision_bits();
  for (long bits = 64;; bits *= 2) {
    const long b = std::min(bits, cap);
    Interval v = lat.unit_ball_volume(b);
    for (const auto& x : vs) v = v * lat.real_interval(x.norm, b);
    BoundCheck c{v, has_lower ? lower : Rational(0), upper};
    bool inside = (!has_lower || v.lo >= lower) && v.hi <= upper;
    if (inside) return c;
    if ((has_lower && v.hi < lower) || v.lo > upper) throw BoundViolated(std::string(what) + " outside its range");
    if (b >= cap) throw PrecisionExhausted(std::string(what) + ": bound check undecided at the precision cap");
  }
}

}  // namespace

NormedLattice::NormedLattice(ContextPtr ctx, NormKind kind, Rational t, long m, std::vector<Integer> beta_row)
    : ctx_(std::move(ctx)), kind_(kind), t_(std::move(t)), m_(m), beta_row_(std::move(beta_row)) {
  const std::size_t ell = ctx_->ell();
  if (kind_ == NormKind::sup) {
    if (t_ <= 0) throw ParseError("lattice scale t must be positive");
    tn_ = pow(t_, static_cast<unsigned>(ctx_->n()));
    rho_ = SpanValue::constant(ell, Rational(1));
  } else {
    if (m_ < 1) throw ParseError("order m must be positive");
    if (beta_row_.size() != ell) throw InconsistencyError("beta row does not match the target");
    SpanValue b = SpanValue::of_integers(std::span<const Integer>(beta_row_));
    int s = sign(*ctx_, b);
    if (s == 0) throw ZeroBetaEll("beta_ell vanishes");
    rho_ = s < 0 ? -b : b;
    t_ = 1;
    tn_ = 1;
  }
}

SpanValue NormedLattice::scaled_norm(std::span<const std::int64_t> c) const {
  std::vector<Integer> big(c.begin(), c.end());
  return scaled_norm(std::span<const Integer>(big));
}

SpanValue NormedLattice::scaled_norm(std::span<const Integer> c) const {
  const std::size_t ell = ctx_->ell(), n = ctx_->n();
  SpanValue xi = abs(*ctx_, SpanValue::of_integers(c));
  if (kind_ == NormKind::sup) {
    SpanValue q = SpanValue::constant(ell, Rational(sup_abs(c, n)) / t_);
    return larger(*ctx_, std::move(q), xi.scaled(tn_));
  }
  return larger(*ctx_, rho_.scaled(Rational(sup_abs(c, ell))), xi.scaled(Rational(m_)));
}

SpanValue NormedLattice::scaled_bound(const Rational& B) const {
  if (kind_ == NormKind::sup) return SpanValue::constant(ctx_->ell(), B);
  return rho_.scaled(B);
}

Interval NormedLattice::real_interval(const SpanValue& scaled, long bits) const {
  if (kind_ == NormKind::sup) return interval(*ctx_, scaled, bits);
  return interval(*ctx_, scaled, bits + 8) / interval(*ctx_, rho_, bits + 8);
}

RealScalar NormedLattice::real_value(const SpanValue& scaled) const {
  if (kind_ == NormKind::sup) return value(*ctx_, scaled);
  return value(*ctx_, scaled) / value(*ctx_, rho_);
}

std::vector<RealScalar> NormedLattice::point(std::span<const Integer> c) const {
  const std::size_t n = ctx_->n();
  std::vector<RealScalar> x;
  if (kind_ == NormKind::sup) {
    for (std::size_t i = 0; i < n; ++i) x.emplace_back(Rational(c[i]) / t_);
    x.push_back(RealScalar(tn_) * ctx_->value(c));
  } else {
    for (const auto& v : c) x.emplace_back(Rational(v));
  }
  return x;
}

std::vector<std::vector<RealScalar>> NormedLattice::generators() const {
  const std::size_t ell = ctx_->ell();
  std::vector<std::vector<RealScalar>> rows;
  for (std::size_t i = 0; i < ell; ++i) {
    std::vector<Integer> e(ell, Integer(0));
    e[i] = 1;
    rows.push_back(point(std::span<const Integer>(e)));
  }
  return rows;
}

Rational NormedLattice::determinant() const {
  if (kind_ == NormKind::gm) return 1;
  // Triangular generator matrix: diagonal (1/t, ..., 1/t, t^n).
  return pow(Rational(1) / t_, static_cast<unsigned>(ctx_->n())) * tn_;
}

Interval NormedLattice::unit_ball_volume(long bits) const {
  const std::size_t ell = ctx_->ell();
  if (kind_ == NormKind::sup) return Interval::point(pow(Rational(2), static_cast<unsigned>(ell)));
  // G_m(x) < 1 iff |x|_inf < 1 and |xi(x)| < rho / m.
  Interval h = Rational(1, m_) * interval(*ctx_, rho_, bits + 8);
  return cube_slab_volume(*ctx_, h, bits);
}

NormedLattice lambda_lattice(const ContextPtr& ctx, const Rational& t) {
  return NormedLattice(ctx, NormKind::sup, t, 0, {});
}

NormedLattice gm_norm(const ContextPtr& ctx, long m, std::vector<Integer> beta_row) {
  return NormedLattice(ctx, NormKind::gm, Rational(1), m, std::move(beta_row));
}

NormedLattice gm_norm(const ContextPtr& ctx, const GreedyMatrix& g) {
  return gm_norm(ctx, g.m, g.A.row(g.A.rows() - 1));
}

MinimaReport successive_minima(const NormedLattice& lat) {
  const std::size_t ell = lat.ell();
  if (ell > kMaxLatticeEll) throw DimensionTooLarge("lattice routines support ell <= " + std::to_string(kMaxLatticeEll));
  for (Rational B = 1;; B *= 2) {
    auto ball = enumerate_ball(lat, B);
    MinimaReport r;
    IntMatrix picked;
    for (const auto& v : ball) {
      IntMatrix trial = picked;
      trial.push_row(std::span<const Integer>(v.coeffs));
      if (rank(trial) == trial.rows()) {
        picked = std::move(trial);
        r.vectors.push_back(v);
        if (r.vectors.size() == ell) break;
      }
    }
    if (r.vectors.size() == ell) {
      r.radius = B;
      return r;
    }
  }
}

ReducedBasisReport reduced_basis(const NormedLattice& lat) {
  const std::size_t ell = lat.ell();
  if (ell > kMaxLatticeEll) throw DimensionTooLarge("lattice routines support ell <= " + std::to_string(kMaxLatticeEll));
  for (Rational B = 1;; B *= 2) {
    auto ball = enumerate_ball(lat, B);
    ReducedBasisReport r;
    for (const auto& v : ball) {
      IntMatrix trial = r.coeffs;
      trial.push_row(std::span<const Integer>(v.coeffs));
      if (is_extendable(trial)) {
        r.coeffs = std::move(trial);
        r.basis.push_back(v);
        if (r.basis.size() == ell) break;
      }
    }
    if (r.basis.size() == ell) {
      r.det = det(r.coeffs);
      r.radius = B;
      return r;
    }
  }
}

std::vector<Integer> reduced_basis_certificate(const ReducedBasisReport& r) {
  std::vector<Integer> out;
  const std::size_t ell = r.coeffs.cols();
  IntMatrix prev;
  for (std::size_t k = 0; k < r.coeffs.rows(); ++k) {
    IntMatrix U = k == 0 ? IntMatrix::identity(ell) : complete_to_unimodular(prev);
    IntMatrix v(1, ell);
    v.set_row(0, std::span<const Integer>(r.coeffs.row(k)));
    // Coordinates x with x U = v.
    IntMatrix x = v * inverse_unimodular(U);
    Integer g = 0;
    for (std::size_t j = k; j < ell; ++j) g = gcd(g, x(0, j));
    out.push_back(g);
    std::vector<Integer> row = r.coeffs.row(k);
    prev.push_row(std::span<const Integer>(row));
  }
  return out;
}

LatticeVector first_minimum(const NormedLattice& lat) {
  if (lat.ell() > kMaxLatticeEll)
    throw DimensionTooLarge("lattice routines support ell <= " + std::to_string(kMaxLatticeEll));
  for (Rational B = 1;; B *= 2) {
    auto ball = enumerate_ball(lat, B);
    if (!ball.empty()) return ball.front();
  }
}

BoundCheck first_finiteness_check(const NormedLattice& lat, const ReducedBasisReport& r) {
  const unsigned ell = static_cast<unsigned>(lat.ell());
  Rational two_l = pow(Rational(2), ell);
  Rational lower = two_l / Rational(factorial(ell));
  Rational upper = two_l * pow(Rational(3, 2), (ell - 1) * (ell - 2) / 2);
  return check_range(lat, r.basis, lower, upper, true, "vol * lambda_1 ... lambda_ell");
}

BoundCheck minkowski_second_check(const NormedLattice& lat, const MinimaReport& r) {
  Rational upper = pow(Rational(2), static_cast<unsigned>(lat.ell()));
  return check_range(lat, r.vectors, Rational(0), upper, false, "vol * mu_1 ... mu_ell");
}

namespace {

// Shortest vector of Lambda_t for n = 1: the minimiser is (0, 1), (1, -floor a),
// (1, -ceil a) or (q_k, -p_k) for a convergent p_k / q_k of a.
LatticeVector shortest_n1(const NormedLattice& lat, const RealScalar& alpha, std::vector<Integer>& quotients,
                          Integer& a0, bool& terminated) {
  const FormContext& ctx = lat.context();
  auto make = [&](Integer q, Integer p) {
    std::vector<Integer> c{std::move(q), std::move(p)};
    SpanValue nrm = lat.scaled_norm(std::span<const Integer>(c));
    return LatticeVector{std::move(c), std::move(nrm)};
  };
  Integer fl = floor_of(alpha);
  std::vector<LatticeVector> cands{make(0, 1), make(1, -fl), make(1, -(fl + 1))};
  auto best = [&]() {
    return *std::min_element(cands.begin(), cands.end(),
                             [&](const LatticeVector& a, const LatticeVector& b) { return precedes(lat, a, b); });
  };
  // Convergents h_k / k_k.
  Integer h2 = 0, h1 = 1, k2 = 1, k1 = 0;
  auto step = [&](const Integer& a) {
    Integer h = a * h1 + h2, k = a * k1 + k2;
    h2 = h1;
    h1 = h;
    k2 = k1;
    k1 = k;
    cands.push_back(make(k, -h));
  };
  step(a0);
  for (std::size_t j = 0;; ++j) {
    if (j == quotients.size()) {
      if (terminated) break;
      PartialQuotients pq = continued_fraction(alpha, std::max<std::size_t>(16, 2 * quotients.size()));
      a0 = pq.a0;
      quotients = pq.a;
      terminated = pq.terminated;
      if (j == quotients.size()) break;
    }
    // Later convergents have larger denominators, hence norm >= k / t.
    LatticeVector b = best();
    if (compare(ctx, SpanValue::constant(ctx.ell(), Rational(k1) / lat.t()), b.norm) > 0) break;
    step(quotients[j]);
  }
  return best();
}

}  // namespace

std::vector<TrajectoryPoint> lambda1_trajectory(const ContextPtr& ctx, const std::vector<Rational>& t_grid) {
  std::vector<TrajectoryPoint> out;
  std::vector<Integer> quotients;
  Integer a0;
  bool terminated = false;
  if (ctx->n() == 1) {
    PartialQuotients pq = continued_fraction(ctx->target().alphas[0], 16);
    a0 = pq.a0;
    quotients = pq.a;
    terminated = pq.terminated;
  }
  for (const auto& t : t_grid) {
    NormedLattice lat = lambda_lattice(ctx, t);
    TrajectoryPoint p;
    p.t = t;
    p.shortest = ctx->n() == 1 ? shortest_n1(lat, ctx->target().alphas[0], quotients, a0, terminated)
                               : first_minimum(lat);
    p.mu1 = lat.real_interval(p.shortest.norm, 64);
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace mchain
