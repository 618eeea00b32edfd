#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "mchain/errors.hpp"
#include "mchain/form.hpp"
#include "mchain/real_scalar.hpp"

using namespace mchain;

namespace {

// Independent reference values from libm.
const long double kGolden = (std::sqrt(5.0L) - 1.0L) / 2.0L;
const long double kTheta = 2.0L * std::cos(2.0L * 3.14159265358979323846264338327950288L / 7.0L);

bool near(const Interval& iv, long double x, long double tol) {
  long double lo = static_cast<long double>(iv.lo.get_d());
  long double hi = static_cast<long double>(iv.hi.get_d());
  return lo - tol <= x && x <= hi + tol;
}

FormContext theta_pair() {
  RealScalar th = builtin("cos2pi7");
  return FormContext(make_target({th * th, th}));
}

struct PrecisionCap {
  long saved = max_precision_bits();
  explicit PrecisionCap(long bits) { set_max_precision_bits(bits); }
  ~PrecisionCap() { set_max_precision_bits(saved); }
};

}  // namespace

TEST(Numeric, ParseRationalForms) {
  EXPECT_EQ(parse_rational("3/4"), Rational(3, 4));
  EXPECT_EQ(parse_rational("-6/8"), Rational(-3, 4));
  EXPECT_EQ(parse_rational("1.25"), Rational(5, 4));
  EXPECT_EQ(parse_rational("12.5e-3"), Rational(1, 80));
  EXPECT_THROW(parse_rational("1/0"), ParseError);
  EXPECT_THROW(parse_rational("x"), ParseError);
}

TEST(Numeric, DecimalRoundingDirections) {
  Rational third(1, 3);
  EXPECT_EQ(to_decimal(third, 5, Rounding::down), "0.33333");
  EXPECT_EQ(to_decimal(third, 5, Rounding::up), "0.33334");
  EXPECT_EQ(to_decimal(Rational(-1, 3), 3, Rounding::down), "-0.334");
  EXPECT_EQ(to_decimal(Rational(1234), 2, Rounding::up), "1234");
  EXPECT_EQ(to_decimal(Rational(1, 1000), 2, Rounding::down), "0.001");
  EXPECT_EQ(ilog2(Rational(1, 3)), -2);
  EXPECT_EQ(ilog2(Rational(8)), 3);
}

TEST(NumberField, RejectsBadPresentations) {
  EXPECT_THROW(NumberField({1, 0, -1}, Interval(Rational(-2), Rational(2))), ParseError);  // two roots
  EXPECT_THROW(NumberField({1, -2, 1}, Interval(Rational(0), Rational(2))), ParseError);   // square
  EXPECT_THROW(NumberField({1, 1, -1}, Interval(Rational(1), Rational(2))), ParseError);   // no root
}

TEST(NumberField, InverseAndArithmetic) {
  RealScalar th = builtin("cos2pi7");
  const FieldElement& t = th.algebraic();
  FieldElement x = t * t - t + FieldElement::constant(t.field(), Rational(3, 7));
  FieldElement one = x * x.inverse();
  ASSERT_TRUE(one.as_rational().has_value());
  EXPECT_EQ(*one.as_rational(), 1);
  // theta^3 = -theta^2 + 2 theta + 1
  FieldElement cube = t * t * t;
  EXPECT_EQ(cube.coords(), (Poly{Rational(1), Rational(2), Rational(-1)}));
}

TEST(RealScalar, BuiltinsMatchReferenceValues) {
  EXPECT_TRUE(near(builtin("golden").interval(60), kGolden, 1e-15L));
  EXPECT_TRUE(near(builtin("cos2pi7").interval(60), kTheta, 1e-15L));
  EXPECT_THROW(builtin("pi"), UnknownName);
}

TEST(RealScalar, LiouvilleOracleDigits) {
  RealScalar l = builtin("liouville");
  // 2^-67 < 10^-20
  Interval iv = l.interval(67);
  Rational ref = parse_rational("0.110001000000000000000001");
  EXPECT_LE(iv.width(), pow2(-67));
  EXPECT_LT(abs(iv.lo - ref), pow2(-66));
  EXPECT_LT(abs(iv.hi - ref), pow2(-66));
  EXPECT_EQ(LiouvilleOracle::truncation_level(parse_rational("1e-20")), 3);
  EXPECT_EQ(LiouvilleOracle::truncation_level(parse_rational("1e-5")), 2);
  EXPECT_EQ(LiouvilleOracle::truncation_level(parse_rational("1e-600")), 5);
}

TEST(RealScalar, OracleRefinementsAreNested) {
  std::mt19937 rng(7);
  RealScalar l = builtin("liouville");
  RealScalar d = l * builtin("golden") + RealScalar(Rational(1, 3));
  for (const RealScalar& x : {l, d}) {
    std::vector<long> precs;
    for (int i = 0; i < 25; ++i) precs.push_back(8 + static_cast<long>(rng() % 900));
    std::vector<std::pair<long, Interval>> seen;
    for (long p : precs) {
      Interval iv = x.interval(p);
      EXPECT_LE(iv.width(), pow2(-p));
      seen.emplace_back(p, iv);
    }
    for (const auto& [p, a] : seen)
      for (const auto& [q, b] : seen)
        if (q > p) {
          EXPECT_TRUE(b.subset_of(a)) << p << " " << q;
        }
  }
}

TEST(RealScalar, SignAndCompareExamples) {
  RealScalar g = builtin("golden");
  RealScalar th = builtin("cos2pi7");
  EXPECT_EQ(sign_of(RealScalar(Rational(0))), 0);
  EXPECT_EQ(sign_of(g - RealScalar(1L)), -1);
  EXPECT_EQ(sign_of(th * th - th - RealScalar(1L)), -1);
  EXPECT_EQ(compare_abs(th - RealScalar(1L), th * th - th), Ordering::LT);
  EXPECT_EQ(compare_abs(g - RealScalar(1L), g), Ordering::LT);
  EXPECT_EQ(compare_abs(g, g), Ordering::EQ);
  RealScalar l = builtin("liouville");
  EXPECT_EQ(compare_abs(l, l), Ordering::EQ);
  EXPECT_EQ(compare_abs(l, g), Ordering::LT);
}

TEST(RealScalar, SymbolicSignAgreesWithIntervals) {
  std::mt19937 rng(11);
  RealScalar th = builtin("cos2pi7");
  FieldPtr f = th.algebraic().field();
  for (int trial = 0; trial < 200; ++trial) {
    Poly c;
    for (int k = 0; k < 3; ++k) c.emplace_back(static_cast<long>(rng() % 41) - 20, 1 + static_cast<long>(rng() % 5));
    FieldElement x(f, c);
    int s = x.sign();
    EXPECT_EQ(s == 0, x.is_zero());
    for (long bits : {16L, 40L, 90L}) {
      int si = x.interval(bits).sign();
      if (si != 0) {
        EXPECT_EQ(si, s);
      }
    }
  }
}

TEST(RealScalar, CompareAbsIsATotalOrder) {
  std::mt19937 rng(3);
  RealScalar th = builtin("cos2pi7");
  std::vector<RealScalar> xs;
  for (int i = 0; i < 12; ++i) {
    RealScalar v = RealScalar(Rational(static_cast<long>(rng() % 9) - 4)) +
                   RealScalar(Rational(static_cast<long>(rng() % 9) - 4)) * th +
                   RealScalar(Rational(static_cast<long>(rng() % 9) - 4)) * th * th;
    xs.push_back(v);
  }
  auto cmp = [](const RealScalar& a, const RealScalar& b) { return compare_abs(a, b); };
  for (auto& a : xs)
    for (auto& b : xs) {
      Ordering ab = cmp(a, b), ba = cmp(b, a);
      if (ab == Ordering::LT) {
        EXPECT_EQ(ba, Ordering::GT);
      }
      if (ab == Ordering::EQ) {
        EXPECT_EQ(ba, Ordering::EQ);
      }
      for (auto& c : xs) {
        if (ab == Ordering::LT && cmp(b, c) == Ordering::LT) {
          EXPECT_EQ(cmp(a, c), Ordering::LT);
        }
      }
    }
}

TEST(RealScalar, HiddenRelationExhaustsPrecision) {
  PrecisionCap cap(256);
  RealScalar l = builtin("liouville");
  RealScalar twice = l * RealScalar(2L);
  RealScalar sum = l + l;
  EXPECT_THROW(sign_of(twice - sum), PrecisionExhausted);
}

TEST(RealScalar, ParseGrammar) {
  EXPECT_EQ(RealScalar::parse("rational:3/9").rational(), Rational(1, 3));
  RealScalar a = RealScalar::parse("algebraic:1,1,-1:0,1");
  EXPECT_TRUE(near(a.interval(50), kGolden, 1e-14L));
  EXPECT_EQ(RealScalar::parse("builtin:golden").kind(), RealScalar::Kind::algebraic);
  RealScalar d = RealScalar::parse("decimal:0.41421356237309504880:tail=1e-20");
  EXPECT_NO_THROW(d.interval(60));
  EXPECT_THROW(d.interval(80), PrecisionExhausted);
  EXPECT_THROW(RealScalar::parse("real:1"), ParseError);
  EXPECT_THROW(RealScalar::parse("algebraic:1,0,-2:0"), ParseError);
  EXPECT_THROW(RealScalar::parse("builtin:e"), UnknownName);
}

TEST(FormTarget, IndependenceChecks) {
  RealScalar g = builtin("golden");
  RealScalar th = builtin("cos2pi7");
  EXPECT_TRUE(make_target({g}).independence_verified);
  EXPECT_TRUE(make_target({th * th, th}).independence_verified);
  EXPECT_THROW(make_target({g, g + RealScalar(1L)}), DependentTarget);
  EXPECT_THROW(make_target({RealScalar(Rational(1, 2))}), DependentTarget);
  EXPECT_THROW(make_target({builtin("liouville")}), DependentTarget);
  EXPECT_NO_THROW(make_target({builtin("liouville")}, true));
  EXPECT_THROW(make_target({g, th}), CrossFieldError);
}

TEST(FormContext, XiExamples) {
  FormContext golden(make_target({builtin("golden")}));
  std::vector<Integer> r{1, -1};
  EXPECT_EQ(golden.sign(std::span<const Integer>(r)), -1);
  EXPECT_TRUE(near(golden.interval(r, 60), kGolden - 1, 1e-15L));
  std::vector<Integer> unit{0, 1};
  EXPECT_EQ(golden.value(std::span<const Integer>(unit)).algebraic().as_rational(), Rational(1));

  FormContext th = theta_pair();
  std::vector<Integer> s{1, -1, -1};
  EXPECT_TRUE(near(th.interval(s, 60), kTheta * kTheta - kTheta - 1, 1e-14L));
  EXPECT_EQ(th.sign(std::span<const Integer>(s)), -1);
}

TEST(FormContext, FastPathAgreesWithFieldArithmetic) {
  std::mt19937_64 rng(5);
  FormContext ctx = theta_pair();
  const FieldElement t = builtin("cos2pi7").algebraic();
  for (int trial = 0; trial < 2000; ++trial) {
    long span = trial < 1000 ? 50 : 5'000'000;
    std::vector<std::int64_t> c(3);
    for (auto& x : c) x = static_cast<std::int64_t>(rng() % (2 * span + 1)) - span;
    FieldElement exact = Rational(c[0]) * (t * t) + Rational(c[1]) * t + FieldElement::constant(t.field(), Rational(c[2]));
    EXPECT_EQ(ctx.sign(std::span<const std::int64_t>(c)), exact.sign());
  }
}

TEST(FormContext, OracleTargetSigns) {
  FormContext ctx(make_target({builtin("liouville")}, true));
  // 110001 * 10^-6 is below lambda by about 1e-24.
  std::vector<Integer> c{Integer(1000000), Integer(-110001)};
  EXPECT_EQ(ctx.sign(std::span<const Integer>(c)), 1);
  std::vector<Integer> z{Integer(0), Integer(0)};
  EXPECT_EQ(ctx.sign(std::span<const Integer>(z)), 0);
}
