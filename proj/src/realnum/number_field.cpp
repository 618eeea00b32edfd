#include "mchain/number_field.hpp"

#include <sstream>

#include "mchain/errors.hpp"

namespace mchain {
namespace poly {

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

int degree(const Poly& p) {
  for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i) {
    if (p[static_cast<std::size_t>(i)] != 0) return i;
  }
  return -1;
}

Rational eval(const Poly& p, const Rational& x) {
  Rational acc(0);
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Interval eval(const Poly& p, const Interval& x) {
  Interval acc = Interval::point(Rational(0));
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = *it + acc * x;
  return acc;
}

Poly derivative(const Poly& p) {
  Poly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<long>(i));
  trim(d);
  return d;
}

Poly sub(const Poly& a, const Poly& b) {
  Poly out(std::max(a.size(), b.size()), Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
  trim(out);
  return out;
}

Poly mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  trim(out);
  return out;
}

void divmod(const Poly& a, const Poly& b, Poly& quot, Poly& rest) {
  int db = degree(b);
  if (db < 0) throw ZeroDenominator("polynomial division by zero");
  rest = a;
  trim(rest);
  int da = degree(rest);
  quot.assign(da >= db ? static_cast<std::size_t>(da - db + 1) : 0, Rational(0));
  const Rational& lead = b[static_cast<std::size_t>(db)];
  while ((da = degree(rest)) >= db) {
    Rational c = rest[static_cast<std::size_t>(da)] / lead;
    std::size_t shift = static_cast<std::size_t>(da - db);
    quot[shift] = c;
    for (int j = 0; j <= db; ++j) rest[shift + static_cast<std::size_t>(j)] -= c * b[static_cast<std::size_t>(j)];
    trim(rest);
  }
  trim(quot);
}

Poly rem(const Poly& a, const Poly& b) {
  Poly q, r;
  divmod(a, b, q, r);
  return r;
}

Poly gcd(const Poly& a, const Poly& b) {
  Poly x = a, y = b;
  trim(x);
  trim(y);
  while (!y.empty()) {
    Poly r = rem(x, y);
    x = std::move(y);
    y = std::move(r);
  }
  if (!x.empty()) {
    Rational lead = x.back();
    for (auto& c : x) c /= lead;
  }
  return x;
}

namespace {

int variations(const std::vector<Poly>& seq, const Rational& x) {
  int count = 0;
  int last = 0;
  for (const auto& p : seq) {
    int s = sgn(eval(p, x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

}  // namespace

int count_roots(const Poly& p, const Rational& lo, const Rational& hi) {
  std::vector<Poly> seq{p, derivative(p)};
  while (degree(seq.back()) > 0) {
    Poly r = rem(seq[seq.size() - 2], seq.back());
    for (auto& c : r) c = -c;
    if (r.empty()) break;
    seq.push_back(std::move(r));
  }
  return variations(seq, lo) - variations(seq, hi);
}

Poly from_integers_high_first(const std::vector<Integer>& c) {
  Poly p;
  for (auto it = c.rbegin(); it != c.rend(); ++it) p.emplace_back(*it);
  trim(p);
  return p;
}

}  // namespace poly

NumberField::NumberField(std::vector<Integer> coeffs, Interval isolating)
    : coeffs_(std::move(coeffs)), isolating_(std::move(isolating)) {
  poly_ = poly::from_integers_high_first(coeffs_);
  degree_ = poly::degree(poly_);
  if (degree_ < 1) throw ParseError("minimal polynomial must have degree >= 1");
  if (poly::degree(poly::gcd(poly_, poly::derivative(poly_))) > 0) {
    throw ParseError("polynomial is not squarefree");
  }
  Rational flo = poly::eval(poly_, isolating_.lo);
  Rational fhi = poly::eval(poly_, isolating_.hi);
  if (sgn(flo) * sgn(fhi) >= 0) {
    throw ParseError("isolating interval endpoints must have opposite signs");
  }
  if (poly::count_roots(poly_, isolating_.lo, isolating_.hi) != 1) {
    throw ParseError("interval does not isolate exactly one root");
  }
  monic_ = poly_;
  Rational lead = monic_.back();
  for (auto& c : monic_) c /= lead;
}

Interval NumberField::root_interval(long bits) const {
  std::lock_guard<std::mutex> lock(mu_);
  Rational target = pow2(-bits);
  // Start from the tightest cached enclosure.
  Interval cur = isolating_;
  if (!cache_.empty()) cur = cache_.rbegin()->second;
  for (auto it = cache_.lower_bound(bits); it != cache_.end(); ++it) {
    if (it->second.width() <= target) return it->second;
  }
  int slo = sgn(poly::eval(poly_, cur.lo));
  while (cur.width() > target) {
    Rational m = cur.mid();
    int sm = sgn(poly::eval(poly_, m));
    if (sm == 0) {
      cur = Interval::point(m);
      break;
    }
    if (sm == slo) {
      cur.lo = m;
    } else {
      cur.hi = m;
    }
  }
  cache_[bits] = cur;
  return cur;
}

bool NumberField::same_as(const NumberField& other) const {
  if (this == &other) return true;
  if (degree_ != other.degree_ || monic_ != other.monic_) return false;
  Rational lo = std::max(isolating_.lo, other.isolating_.lo);
  Rational hi = std::min(isolating_.hi, other.isolating_.hi);
  if (lo > hi) return false;
  if (lo == hi) return poly::eval(poly_, lo) == 0;
  return poly::count_roots(poly_, lo, hi) == 1 || poly::eval(poly_, lo) == 0;
}

std::string NumberField::describe() const {
  std::ostringstream os;
  os << "root of ";
  bool first = true;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    int d = degree_ - static_cast<int>(i);
    if (!first) os << (coeffs_[i] > 0 ? " + " : " - ");
    else if (coeffs_[i] < 0) os << '-';
    Integer a = abs(coeffs_[i]);
    if (a != 1 || d == 0) os << a.get_str();
    if (d >= 1) os << 'x';
    if (d >= 2) os << '^' << d;
    first = false;
  }
  os << " in " << isolating_;
  return os.str();
}

void require_same_field(const FieldPtr& a, const FieldPtr& b) {
  if (a == b) return;
  if (!a || !b || !a->same_as(*b)) throw CrossFieldError("values from different number fields");
}

FieldElement::FieldElement(FieldPtr field, Poly coords) : field_(std::move(field)) {
  coords_ = poly::rem(coords, field_->modulus());
  coords_.resize(static_cast<std::size_t>(field_->degree()), Rational(0));
}

FieldElement FieldElement::constant(FieldPtr field, const Rational& c) {
  return FieldElement(std::move(field), Poly{c});
}

FieldElement FieldElement::generator(FieldPtr field) {
  return FieldElement(std::move(field), Poly{Rational(0), Rational(1)});
}

bool FieldElement::is_zero() const {
  for (const auto& c : coords_) {
    if (c != 0) return false;
  }
  return true;
}

std::optional<Rational> FieldElement::as_rational() const {
  for (std::size_t i = 1; i < coords_.size(); ++i) {
    if (coords_[i] != 0) return std::nullopt;
  }
  return coords_.empty() ? Rational(0) : coords_[0];
}

Interval FieldElement::interval(long bits) const {
  if (auto r = as_rational()) return Interval::point(*r);
  Rational target = pow2(-(bits + 1));
  long extra = 8;
  for (const auto& c : coords_) {
    if (c != 0) extra = std::max(extra, ilog2(c) + 8);
  }
  for (;;) {
    Interval th = field_->root_interval(bits + extra + 4 * field_->degree());
    Interval v = poly::eval(coords_, th);
    if (v.width() <= target) return v.round_out(bits + 2);
    extra += 32;
  }
}

int FieldElement::sign() const {
  if (auto r = as_rational()) return sgn(*r);
  for (long bits = 32;; bits *= 2) {
    int s = interval(bits).sign();
    if (s != 0) return s;
  }
}

FieldElement FieldElement::inverse() const {
  if (is_zero()) throw ZeroDenominator("inverse of zero field element");
  Poly r0 = field_->modulus();
  Poly r1 = coords_;
  poly::trim(r1);
  Poly s0, s1{Rational(1)};
  while (poly::degree(r1) > 0) {
    Poly q, r;
    poly::divmod(r0, r1, q, r);
    Poly s = poly::sub(s0, poly::mul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  if (r1.empty()) throw InconsistencyError("field modulus is reducible; element is a zero divisor");
  Rational c = r1[0];
  for (auto& x : s1) x /= c;
  return FieldElement(field_, s1);
}

FieldElement FieldElement::operator-() const {
  Poly c = coords_;
  for (auto& x : c) x = -x;
  return FieldElement(field_, c);
}

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
  require_same_field(a.field_, b.field_);
  Poly c = a.coords_;
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += b.coords_[i];
  return FieldElement(a.field_, c);
}

FieldElement operator-(const FieldElement& a, const FieldElement& b) { return a + (-b); }

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
  require_same_field(a.field_, b.field_);
  return FieldElement(a.field_, poly::mul(a.coords_, b.coords_));
}

FieldElement operator/(const FieldElement& a, const FieldElement& b) { return a * b.inverse(); }

FieldElement operator*(const Rational& s, const FieldElement& a) {
  Poly c = a.coords_;
  for (auto& x : c) x *= s;
  return FieldElement(a.field_, c);
}

bool operator==(const FieldElement& a, const FieldElement& b) {
  require_same_field(a.field_, b.field_);
  return a.coords_ == b.coords_;
}

}  // namespace mchain
