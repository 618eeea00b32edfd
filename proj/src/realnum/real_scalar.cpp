#include "mchain/real_scalar.hpp"

#include <sstream>
#include <vector>

#include "mchain/errors.hpp"

namespace mchain {

namespace {

bool is_exact(const RealScalar& x) { return x.kind() != RealScalar::Kind::oracle; }

// Lifts a rational or algebraic value into `field`.
FieldElement lift(const RealScalar& x, const FieldPtr& field) {
  if (x.kind() == RealScalar::Kind::rational) return FieldElement::constant(field, x.rational());
  return x.algebraic();
}

bool irrational_flag(const RealScalar& x) {
  switch (x.kind()) {
    case RealScalar::Kind::rational:
      return false;
    case RealScalar::Kind::algebraic:
      return !x.algebraic().as_rational().has_value();
    case RealScalar::Kind::oracle:
      return x.oracle()->asserted_irrational();
  }
  return false;
}

enum class Op { add, sub, mul, div };

RealScalar combine(const RealScalar& a, const RealScalar& b, Op op) {
  using K = RealScalar::Kind;
  if (a.kind() == K::rational && b.kind() == K::rational) {
    switch (op) {
      case Op::add: return RealScalar(Rational(a.rational() + b.rational()));
      case Op::sub: return RealScalar(Rational(a.rational() - b.rational()));
      case Op::mul: return RealScalar(Rational(a.rational() * b.rational()));
      case Op::div:
        if (b.rational() == 0) throw ZeroDenominator("division by zero");
        return RealScalar(Rational(a.rational() / b.rational()));
    }
  }
  if (is_exact(a) && is_exact(b)) {
    FieldPtr field = a.kind() == K::algebraic ? a.algebraic().field() : b.algebraic().field();
    FieldElement x = lift(a, field);
    FieldElement y = lift(b, field);
    switch (op) {
      case Op::add: return RealScalar(x + y);
      case Op::sub: return RealScalar(x - y);
      case Op::mul: return RealScalar(x * y);
      case Op::div: return RealScalar(x / y);
    }
  }
  if (op == Op::div && b.kind() == K::rational && b.rational() == 0) {
    throw ZeroDenominator("division by zero");
  }
  static const char* names[] = {"+", "-", "*", "/"};
  std::string label = "(" + a.describe() + " " + names[static_cast<int>(op)] + " " + b.describe() + ")";
  auto fn = [a, b, op](long bits) -> Interval {
    Interval x = a.interval(bits);
    Interval y = b.interval(bits);
    switch (op) {
      case Op::add: return x + y;
      case Op::sub: return x - y;
      case Op::mul: return x * y;
      case Op::div:
        if (y.contains_zero()) {
          Rational big = pow2(bits);
          return {-big, big};
        }
        return x / y;
    }
    return x;
  };
  bool irr = irrational_flag(a) || irrational_flag(b);
  return RealScalar(std::make_shared<DerivedOracle>(fn, label, irr));
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    std::size_t pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

FieldPtr golden_field() {
  static const FieldPtr f = std::make_shared<NumberField>(
      std::vector<Integer>{1, 1, -1}, Interval(Rational(0), Rational(1)));
  return f;
}

FieldPtr cos2pi7_field() {
  static const FieldPtr f = std::make_shared<NumberField>(
      std::vector<Integer>{1, 1, -2, -1}, Interval(Rational(6, 5), Rational(13, 10)));
  return f;
}

OraclePtr liouville_oracle() {
  static const OraclePtr o = std::make_shared<LiouvilleOracle>();
  return o;
}

}  // namespace

RealScalar::RealScalar(FieldElement e) : value_(std::move(e)) {}

RealScalar::Kind RealScalar::kind() const {
  switch (value_.index()) {
    case 0: return Kind::rational;
    case 1: return Kind::algebraic;
    default: return Kind::oracle;
  }
}

Interval RealScalar::interval(long bits) const {
  switch (kind()) {
    case Kind::rational: return Interval::point(rational());
    case Kind::algebraic: return algebraic().interval(bits);
    case Kind::oracle: return oracle()->interval(bits);
  }
  return {};
}

double RealScalar::approx() const {
  if (kind() == Kind::rational) return rational().get_d();
  return to_double(interval(64).mid());
}

std::string RealScalar::describe() const {
  switch (kind()) {
    case Kind::rational: return to_string(rational());
    case Kind::algebraic: {
      std::ostringstream os;
      os << '[';
      const auto& c = algebraic().coords();
      for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << to_string(c[i]);
      os << "] in " << algebraic().field()->describe();
      return os.str();
    }
    case Kind::oracle: return oracle()->describe();
  }
  return {};
}

RealScalar RealScalar::operator-() const { return combine(RealScalar(0L), *this, Op::sub); }
RealScalar operator+(const RealScalar& a, const RealScalar& b) { return combine(a, b, Op::add); }
RealScalar operator-(const RealScalar& a, const RealScalar& b) { return combine(a, b, Op::sub); }
RealScalar operator*(const RealScalar& a, const RealScalar& b) { return combine(a, b, Op::mul); }
RealScalar operator/(const RealScalar& a, const RealScalar& b) { return combine(a, b, Op::div); }

int refine_sign(const std::function<Interval(long)>& enclose, std::string_view what) {
  const long cap = max_precision_bits();
  for (long bits = 64;; bits *= 2) {
    long b = std::min(bits, cap);
    int s = enclose(b).sign();
    if (s != 0) return s;
    if (b >= cap) break;
  }
  throw PrecisionExhausted("sign of " + std::string(what) + " undecided at 2^-" + std::to_string(cap));
}

int sign_of(const RealScalar& x) {
  switch (x.kind()) {
    case RealScalar::Kind::rational: return sgn(x.rational());
    case RealScalar::Kind::algebraic: return x.algebraic().sign();
    case RealScalar::Kind::oracle:
      return refine_sign([&](long b) { return x.oracle()->interval(b); }, x.describe());
  }
  return 0;
}

Ordering compare_abs(const RealScalar& x, const RealScalar& y) {
  int s;
  if (is_exact(x) && is_exact(y)) {
    RealScalar ax = sign_of(x) < 0 ? -x : x;
    RealScalar ay = sign_of(y) < 0 ? -y : y;
    s = sign_of(ax - ay);
  } else if (x.kind() == RealScalar::Kind::oracle && y.kind() == RealScalar::Kind::oracle &&
             x.oracle() == y.oracle()) {
    s = 0;
  } else {
    s = refine_sign([&](long b) { return x.interval(b + 1).abs() - y.interval(b + 1).abs(); },
                    "|" + x.describe() + "| - |" + y.describe() + "|");
  }
  return s < 0 ? Ordering::LT : (s > 0 ? Ordering::GT : Ordering::EQ);
}

bool exactly_equal(const RealScalar& x, const RealScalar& y) {
  if (x.kind() == RealScalar::Kind::oracle && y.kind() == RealScalar::Kind::oracle &&
      x.oracle() == y.oracle()) {
    return true;
  }
  return sign_of(x - y) == 0;
}

Integer floor_of(const RealScalar& x) {
  if (x.kind() == RealScalar::Kind::rational) return floor(x.rational());
  for (long bits = 8;; bits *= 2) {
    Interval iv = x.interval(bits);
    if (iv.width() >= 1) continue;
    Integer k = floor(iv.hi);
    if (iv.lo >= k) return k;
    return sign_of(x - RealScalar(Rational(k))) >= 0 ? k : Integer(k - 1);
  }
}

RealScalar builtin(std::string_view name) {
  if (name == "golden") return RealScalar(FieldElement::generator(golden_field()));
  if (name == "cos2pi7") return RealScalar(FieldElement::generator(cos2pi7_field()));
  if (name == "liouville") return RealScalar(liouville_oracle());
  throw UnknownName("unknown builtin '" + std::string(name) + "'");
}

RealScalar RealScalar::parse(std::string_view spec) {
  auto colon = spec.find(':');
  if (colon == std::string_view::npos) throw ParseError("number spec needs a kind prefix: '" + std::string(spec) + "'");
  std::string_view kind = spec.substr(0, colon);
  std::string_view rest = spec.substr(colon + 1);
  if (kind == "rational") return RealScalar(parse_rational(rest));
  if (kind == "builtin") return builtin(rest);
  if (kind == "algebraic") {
    auto parts = split(rest, ':');
    if (parts.size() != 2) throw ParseError("algebraic spec is algebraic:<c_d>,...,<c_0>:<lo>,<hi>");
    std::vector<Integer> coeffs;
    for (auto c : split(parts[0], ',')) {
      Rational r = parse_rational(c);
      if (r.get_den() != 1) throw ParseError("polynomial coefficients must be integers");
      coeffs.push_back(r.get_num());
    }
    auto ends = split(parts[1], ',');
    if (ends.size() != 2) throw ParseError("isolating interval needs two endpoints");
    Rational lo = parse_rational(ends[0]);
    Rational hi = parse_rational(ends[1]);
    if (lo >= hi) throw ParseError("isolating interval needs lo < hi");
    auto field = std::make_shared<NumberField>(coeffs, Interval(lo, hi));
    return RealScalar(FieldElement::generator(field));
  }
  if (kind == "decimal") {
    auto parts = split(rest, ':');
    if (parts.size() != 2 || parts[1].substr(0, 5) != "tail=") {
      throw ParseError("decimal spec is decimal:<digits>:tail=<bound>");
    }
    Rational value = parse_rational(parts[0]);
    Rational tail = parse_rational(parts[1].substr(5));
    return RealScalar(std::make_shared<DecimalOracle>(value, tail));
  }
  throw ParseError("unknown number kind '" + std::string(kind) + "'");
}

}  // namespace mchain
