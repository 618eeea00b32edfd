#include "mchain/form.hpp"

#include <cmath>
#include <limits>

#include "mchain/errors.hpp"
#include "mchain/kernels/dd.hpp"

namespace mchain {

namespace {

constexpr double kRelSlack = 0x1p-95;  // dd rounding, generous for ell <= 8

// A double >= x for x >= 0 (get_d truncates).
double round_up(const Rational& x) {
  return std::nextafter(x.get_d(), std::numeric_limits<double>::infinity());
}

// Splits an integer into a double-double; false if |c| >= 2^100.
bool split_integer(const Integer& c, double& hi, double& lo) {
  if (mpz_sizeinbase(c.get_mpz_t(), 2) >= 100) return false;
  hi = mpz_get_d(c.get_mpz_t());  // truncation, exact value
  Integer rest = c - Integer(hi);
  lo = mpz_get_d(rest.get_mpz_t());
  return true;
}

FieldPtr rational_field() {
  static const FieldPtr f = std::make_shared<NumberField>(
      std::vector<Integer>{1, 0}, Interval(Rational(-1), Rational(1)));
  return f;
}

std::size_t rank_over_q(std::vector<Poly> rows, std::size_t cols) {
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows.size(); ++col) {
    std::size_t piv = rank;
    while (piv < rows.size() && rows[piv][col] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[rank]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][col] == 0) continue;
      Rational f = rows[r][col] / rows[rank][col];
      for (std::size_t k = 0; k < cols; ++k) rows[r][k] -= f * rows[rank][k];
    }
    ++rank;
  }
  return rank;
}

}  // namespace

FormTarget make_target(std::vector<RealScalar> alphas, bool asserted) {
  if (alphas.empty()) throw Error("a target needs at least one coordinate");
  FormTarget t;
  t.alphas = std::move(alphas);
  t.independence_asserted = asserted;
  bool has_oracle = false;
  FieldPtr field;
  for (const auto& a : t.alphas) {
    switch (a.kind()) {
      case RealScalar::Kind::rational:
        throw DependentTarget("a rational coordinate makes {alpha, 1} dependent over Q");
      case RealScalar::Kind::oracle:
        has_oracle = true;
        break;
      case RealScalar::Kind::algebraic:
        if (!field) field = a.algebraic().field();
        break;
    }
  }
  if (has_oracle) {
    if (!asserted) throw DependentTarget("independence of oracle values must be asserted by the caller");
    return t;
  }
  std::size_t d = static_cast<std::size_t>(field->degree());
  std::vector<Poly> rows;
  for (const auto& a : t.alphas) {
    require_same_field(field, a.algebraic().field());
    rows.push_back(a.algebraic().coords());
  }
  Poly one(d, Rational(0));
  one[0] = 1;
  rows.push_back(one);
  if (rank_over_q(rows, d) < rows.size()) {
    throw DependentTarget("{alpha_1, ..., alpha_n, 1} is linearly dependent over Q");
  }
  t.independence_verified = true;
  return t;
}

FormTarget powers_target(const RealScalar& alpha, int n, bool asserted) {
  if (n < 1) throw Error("powers target needs n >= 1");
  std::vector<RealScalar> pw{alpha};
  for (int k = 2; k <= n; ++k) pw.push_back(pw.back() * alpha);
  return make_target(std::vector<RealScalar>(pw.rbegin(), pw.rend()), asserted);
}

FormContext::FormContext(FormTarget target) : target_(std::move(target)) {
  bool all_exact = true;
  for (const auto& a : target_.alphas) {
    if (a.kind() == RealScalar::Kind::oracle) all_exact = false;
    if (a.kind() == RealScalar::Kind::algebraic && !field_) field_ = a.algebraic().field();
  }
  if (!all_exact) {
    field_.reset();
  } else {
    if (!field_) field_ = rational_field();
    for (const auto& a : target_.alphas) {
      if (a.kind() == RealScalar::Kind::rational) {
        coords_.push_back(FieldElement::constant(field_, a.rational()).coords());
      } else {
        require_same_field(field_, a.algebraic().field());
        coords_.push_back(a.algebraic().coords());
      }
    }
  }
  for (const auto& a : target_.alphas) {
    Interval iv;
    bool ok = false;
    for (long bits = 256; bits >= 8 && !ok; bits /= 2) {
      try {
        iv = a.interval(bits);
        ok = true;
      } catch (const PrecisionExhausted&) {
      }
    }
    if (!ok) throw PrecisionExhausted("coordinate " + a.describe() + " is too imprecise");
    Rational mid = iv.mid();
    double h = mid.get_d();
    double l = Rational(mid - h).get_d();
    Rational approx = Rational(h) + Rational(l);
    Rational err = abs(approx - mid) + iv.width() / 2;
    hi_.push_back(h);
    lo_.push_back(l);
    err_.push_back(round_up(err));
    mag_.push_back(std::max(1.0, std::fabs(h) * (1 + 0x1p-50)));
  }
}

void FormContext::estimate(std::span<const std::int64_t> c, double& value, double& err) const {
  const std::size_t n = this->n();
  double sh = 0, sl = 0, e = 0, m = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double x = static_cast<double>(c[i]);
    dd::accumulate(x, hi_[i], lo_[i], sh, sl);
    double ax = std::fabs(x);
    e += ax * err_[i];
    m += ax * mag_[i];
  }
  double last = static_cast<double>(c[n]);
  double s, t;
  dd::two_sum(sh, last, s, t);
  t += sl;
  value = s + t;
  m += std::fabs(last);
  // int64 -> double conversion is exact below 2^53; otherwise widen the bound.
  double conv = 0;
  for (std::size_t i = 0; i <= n; ++i) {
    if (std::fabs(static_cast<double>(c[i])) >= 0x1p53) conv += 0x1p-52 * std::fabs(static_cast<double>(c[i])) * (i < n ? mag_[i] : 1.0);
  }
  err = (e + kRelSlack * m + conv + 0x1p-52 * std::fabs(value)) * (1 + 0x1p-40);
}

bool FormContext::estimate(std::span<const Integer> c, double& value, double& err) const {
  const std::size_t n = this->n();
  double sh = 0, sl = 0, e = 0, m = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double ch, cl;
    if (!split_integer(c[i], ch, cl)) return false;
    double ph, pl;
    dd::two_prod(ch, hi_[i], ph, pl);
    pl = std::fma(ch, lo_[i], pl);
    pl = std::fma(cl, hi_[i], pl);
    double s, t;
    dd::two_sum(sh, ph, s, t);
    t += sl + pl;
    dd::quick_two_sum(s, t, sh, sl);
    double ax = std::fabs(ch);
    e += ax * err_[i];
    m += ax * mag_[i];
  }
  double ch, cl;
  if (!split_integer(c[n], ch, cl)) return false;
  double s, t;
  dd::two_sum(sh, ch, s, t);
  t += sl + cl;
  value = s + t;
  m += std::fabs(ch);
  err = (e + kRelSlack * m + 0x1p-52 * std::fabs(value)) * (1 + 0x1p-30);
  return true;
}

int FormContext::exact_sign(std::span<const Integer> c) const {
  bool zero = true;
  for (const auto& x : c) zero = zero && x == 0;
  if (zero) return 0;
  if (field_) {
    Poly acc(static_cast<std::size_t>(field_->degree()), Rational(0));
    acc[0] = c[n()];
    for (std::size_t i = 0; i < n(); ++i) {
      if (c[i] == 0) continue;
      for (std::size_t k = 0; k < coords_[i].size(); ++k) acc[k] += c[i] * coords_[i][k];
    }
    return FieldElement(field_, acc).sign();
  }
  return refine_sign([&](long bits) { return interval(c, bits); }, "linear form value");
}

int FormContext::sign(std::span<const std::int64_t> c) const {
  double v, e;
  estimate(c, v, e);
  if (v > e) return 1;
  if (v < -e) return -1;
  std::vector<Integer> big;
  big.reserve(c.size());
  for (auto x : c) big.emplace_back(static_cast<long>(x));
  return exact_sign(big);
}

int FormContext::sign(std::span<const Integer> c) const {
  double v, e;
  if (estimate(c, v, e)) {
    if (v > e) return 1;
    if (v < -e) return -1;
  }
  return exact_sign(c);
}

Interval FormContext::interval(std::span<const Integer> c, long bits) const {
  Integer total(0);
  for (std::size_t i = 0; i < n(); ++i) total += abs(c[i]);
  long extra = static_cast<long>(mpz_sizeinbase(total.get_mpz_t(), 2)) + 2;
  Interval acc = Interval::point(Rational(c[n()]));
  for (std::size_t i = 0; i < n(); ++i) {
    if (c[i] == 0) continue;
    acc = acc + Rational(c[i]) * target_.alphas[i].interval(bits + extra);
  }
  return acc.round_out(bits + 2);
}

RealScalar FormContext::value(std::span<const Integer> c) const {
  if (field_) {
    Poly acc(static_cast<std::size_t>(field_->degree()), Rational(0));
    acc[0] = c[n()];
    for (std::size_t i = 0; i < n(); ++i) {
      for (std::size_t k = 0; k < coords_[i].size(); ++k) acc[k] += c[i] * coords_[i][k];
    }
    FieldElement fe(field_, acc);
    if (auto r = fe.as_rational(); r && field_->degree() == 1) return RealScalar(*r);
    return RealScalar(fe);
  }
  std::vector<Integer> coeffs(c.begin(), c.end());
  FormTarget t = target_;
  std::string label = "xi(";
  for (std::size_t i = 0; i < coeffs.size(); ++i) label += (i ? "," : "") + coeffs[i].get_str();
  label += ")";
  // The closure keeps its own copy of the target so the value outlives *this.
  auto ctx = std::make_shared<FormContext>(*this);
  auto fn = [ctx, coeffs](long bits) { return ctx->interval(coeffs, bits); };
  return RealScalar(std::make_shared<DerivedOracle>(fn, label, true));
}

RealScalar FormContext::value(std::span<const std::int64_t> c) const {
  std::vector<Integer> big;
  for (auto x : c) big.emplace_back(static_cast<long>(x));
  return value(big);
}

SpanValue SpanValue::zero(std::size_t ell) { return SpanValue{std::vector<Integer>(ell, Integer(0)), Integer(1)}; }

SpanValue SpanValue::constant(std::size_t ell, const Rational& c) {
  SpanValue v = zero(ell);
  v.num[ell - 1] = c.get_num();
  v.den = c.get_den();
  return v;
}

SpanValue SpanValue::of_integers(std::span<const Integer> c) {
  return SpanValue{std::vector<Integer>(c.begin(), c.end()), Integer(1)};
}

SpanValue SpanValue::of_integers(std::span<const std::int64_t> c) {
  SpanValue v;
  for (auto x : c) v.num.emplace_back(static_cast<long>(x));
  return v;
}

SpanValue SpanValue::operator-() const {
  SpanValue v = *this;
  for (auto& x : v.num) x = -x;
  return v;
}

SpanValue SpanValue::scaled(const Rational& s) const {
  SpanValue v = *this;
  for (auto& x : v.num) x *= s.get_num();
  v.den *= s.get_den();
  if (v.den < 0) {
    v.den = -v.den;
    for (auto& x : v.num) x = -x;
  }
  v.normalize();
  return v;
}

void SpanValue::normalize() {
  Integer g = den;
  for (const auto& x : num) g = gcd(g, x);
  if (g > 1) {
    for (auto& x : num) x /= g;
    den /= g;
  }
}

SpanValue operator+(const SpanValue& a, const SpanValue& b) {
  SpanValue v;
  v.num.resize(a.num.size());
  if (a.den == b.den) {
    for (std::size_t i = 0; i < a.num.size(); ++i) v.num[i] = a.num[i] + b.num[i];
    v.den = a.den;
  } else {
    for (std::size_t i = 0; i < a.num.size(); ++i) v.num[i] = a.num[i] * b.den + b.num[i] * a.den;
    v.den = a.den * b.den;
  }
  v.normalize();
  return v;
}

SpanValue operator-(const SpanValue& a, const SpanValue& b) { return a + (-b); }

bool operator==(const SpanValue& a, const SpanValue& b) {
  for (std::size_t i = 0; i < a.num.size(); ++i) {
    if (a.num[i] * b.den != b.num[i] * a.den) return false;
  }
  return true;
}

int sign(const FormContext& ctx, const SpanValue& v) { return ctx.sign(std::span<const Integer>(v.num)); }

int compare(const FormContext& ctx, const SpanValue& a, const SpanValue& b) {
  std::vector<Integer> d(a.num.size());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = a.num[i] * b.den - b.num[i] * a.den;
  return ctx.sign(std::span<const Integer>(d));
}

SpanValue abs(const FormContext& ctx, const SpanValue& v) { return sign(ctx, v) < 0 ? -v : v; }

Interval interval(const FormContext& ctx, const SpanValue& v, long bits) {
  Rational inv(1);
  inv /= v.den;
  return inv * ctx.interval(v.num, bits);
}

RealScalar value(const FormContext& ctx, const SpanValue& v) {
  return ctx.value(v.num) / RealScalar(Rational(v.den));
}

bool estimate(const FormContext& ctx, const SpanValue& v, double& value, double& err) {
  if (!ctx.estimate(v.num, value, err)) return false;
  if (v.den != 1) {
    if (mpz_sizeinbase(v.den.get_mpz_t(), 2) > 900) return false;
    double d = v.den.get_d();
    value /= d;
    err = err / d * (1 + 0x1p-40) + 0x1p-52 * std::fabs(value);
  }
  return true;
}

}  // namespace mchain
