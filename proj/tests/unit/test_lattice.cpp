#include <gtest/gtest.h>

#include "mchain/errors.hpp"
#include "mchain/kernels/residual.hpp"
#include "mchain/lattice.hpp"
#include "support/lattice_brute.hpp"
#include "support/surds.hpp"

using namespace mchain;
using namespace mchain::testing;

namespace {

ContextPtr context(FormTarget t) { return std::make_shared<const FormContext>(std::move(t)); }

ContextPtr golden() { return context(make_target({builtin("golden")})); }

ContextPtr theta_pair() {
  RealScalar th = builtin("cos2pi7");
  return context(make_target({th * th, th}));
}

ContextPtr liouville() { return context(make_target({builtin("liouville")}, true)); }

std::vector<Integer> ints(std::initializer_list<long> xs) { return std::vector<Integer>(xs.begin(), xs.end()); }

Rational upper_rational(const NormedLattice& lat, const SpanValue& s) { return lat.real_interval(s, 40).hi; }

std::vector<NormedLattice> sample_lattices() {
  std::vector<NormedLattice> out;
  for (const auto& t : {Rational(1), Rational(3, 2), Rational(2), Rational(3), Rational(7, 2), Rational(10)})
    out.push_back(lambda_lattice(golden(), t));
  auto s2 = context(make_target({RealScalar::parse(quadratic_surds()[1].spec)}));
  for (const auto& t : {Rational(1), Rational(5, 2), Rational(6)}) out.push_back(lambda_lattice(s2, t));
  for (const auto& t : {Rational(1), Rational(2), Rational(5, 2)}) out.push_back(lambda_lattice(theta_pair(), t));
  for (const auto& t : {Rational(1), Rational(4)}) out.push_back(lambda_lattice(liouville(), t));
  auto lp = context(powers_target(builtin("liouville"), 2, true));
  out.push_back(lambda_lattice(lp, Rational(2)));
  for (long m = 1; m <= 6; ++m) {
    out.push_back(gm_norm(golden(), greedy_matrix(golden(), m)));
    out.push_back(gm_norm(theta_pair(), greedy_matrix(theta_pair(), m)));
  }
  return out;
}

}  // namespace

TEST(Lattice, Generators) {
  auto lat = lambda_lattice(golden(), Rational(2));
  auto g = lat.generators();
  ASSERT_EQ(g.size(), 2u);
  EXPECT_TRUE(exactly_equal(g[0][0], RealScalar(Rational(1, 2))));
  EXPECT_TRUE(exactly_equal(g[0][1], RealScalar(Rational(2)) * builtin("golden")));
  EXPECT_TRUE(exactly_equal(g[1][0], RealScalar(0L)));
  EXPECT_TRUE(exactly_equal(g[1][1], RealScalar(Rational(2))));
  EXPECT_EQ(lat.determinant(), 1);
  EXPECT_EQ(lambda_lattice(theta_pair(), Rational(1)).generators().size(), 3u);
  EXPECT_EQ(lambda_lattice(theta_pair(), Rational(7, 3)).determinant(), 1);
  EXPECT_THROW(lambda_lattice(golden(), Rational(0)), ParseError);
}

TEST(Lattice, GoldenMinima) {
  auto m1 = successive_minima(lambda_lattice(golden(), Rational(1)));
  auto l1 = lambda_lattice(golden(), Rational(1));
  EXPECT_EQ(m1.vectors[0].coeffs, ints({0, 1}));
  EXPECT_EQ(m1.vectors[1].coeffs, ints({1, 0}));
  EXPECT_TRUE(exactly_equal(l1.real_value(m1.vectors[0].norm), RealScalar(1L)));
  EXPECT_TRUE(exactly_equal(l1.real_value(m1.vectors[1].norm), RealScalar(1L)));

  auto l2 = lambda_lattice(golden(), Rational(2));
  auto m2 = successive_minima(l2);
  EXPECT_EQ(m2.vectors[0].coeffs, ints({1, -1}));
  EXPECT_EQ(m2.vectors[1].coeffs, ints({2, -1}));
  RealScalar want = RealScalar(Rational(2)) - RealScalar(Rational(2)) * builtin("golden");
  EXPECT_TRUE(exactly_equal(l2.real_value(m2.vectors[0].norm), want));
  EXPECT_TRUE(exactly_equal(l2.real_value(m2.vectors[1].norm), RealScalar(1L)));
  EXPECT_NEAR(want.approx(), 0.7639, 1e-4);

  auto r2 = reduced_basis(l2);
  EXPECT_EQ(r2.coeffs, (IntMatrix{{1, -1}, {2, -1}}));
  EXPECT_EQ(r2.det, 1);
  auto r1 = reduced_basis(l1);
  EXPECT_TRUE(exactly_equal(l1.real_value(r1.basis[1].norm), RealScalar(1L)));
}

TEST(Lattice, EnumerationMatchesBruteForce) {
  for (const auto& lat : sample_lattices()) {
    auto mins = successive_minima(lat);
    Rational R = upper_rational(lat, mins.vectors.back().norm) + 1;
    auto fast = enumerate_ball(lat, R);
    auto slow = brute_ball(lat, R);
    ASSERT_EQ(fast.size(), slow.size()) << lat.context().target().alphas.front().describe();
    for (std::size_t i = 0; i < fast.size(); ++i) EXPECT_EQ(fast[i].coeffs, slow[i].coeffs) << i;
  }
}

TEST(Lattice, ScalarAndVectorKernelsEnumerateAlike) {
  auto lat = lambda_lattice(theta_pair(), Rational(5, 2));
  kernels::force_isa(kernels::Isa::scalar);
  auto a = enumerate_ball(lat, Rational(3));
  kernels::force_isa(std::nullopt);
  auto b = enumerate_ball(lat, Rational(3));
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].coeffs, b[i].coeffs);
}

TEST(Lattice, MinimaAndReducedBasisMatchBruteForce) {
  for (const auto& lat : sample_lattices()) {
    const std::size_t ell = lat.ell();
    auto mins = successive_minima(lat);
    auto red = reduced_basis(lat);
    Rational R = std::max(upper_rational(lat, mins.vectors.back().norm), upper_rational(lat, red.basis.back().norm));
    auto ball = brute_ball(lat, R);
    auto bm = brute_pick(ball, ell, independent_rows);
    auto br = brute_pick(ball, ell, extendable_rows);
    ASSERT_EQ(bm.size(), ell);
    ASSERT_EQ(br.size(), ell);
    for (std::size_t k = 0; k < ell; ++k) {
      EXPECT_EQ(compare(lat.context(), mins.vectors[k].norm, bm[k].norm), 0);
      EXPECT_EQ(mins.vectors[k].coeffs, bm[k].coeffs);
      EXPECT_EQ(red.basis[k].coeffs, br[k].coeffs);
    }
    EXPECT_EQ(Integer(abs(red.det)), 1);
    for (const auto& g : reduced_basis_certificate(red)) EXPECT_EQ(g, 1);
    // Every member of R_k within norm lambda_k: none beats v_k.
    for (std::size_t k = 0; k < ell; ++k) {
      std::vector<LatticeVector> prefix(red.basis.begin(), red.basis.begin() + static_cast<long>(k));
      for (const auto& v : ball) {
        auto trial = prefix;
        trial.push_back(v);
        if (!extendable_rows(trial)) continue;
        EXPECT_GE(compare(lat.context(), v.norm, red.basis[k].norm), 0);
      }
    }
  }
}

TEST(Lattice, ReducedBasisBounds) {
  for (const auto& lat : sample_lattices()) {
    const std::size_t ell = lat.ell();
    auto mins = successive_minima(lat);
    auto red = reduced_basis(lat);
    const FormContext& ctx = lat.context();
    // lambda_1 = mu_1 and lambda_k <= (3/2)^(k-2) mu_k.
    EXPECT_EQ(compare(ctx, red.basis[0].norm, mins.vectors[0].norm), 0);
    for (std::size_t k = 2; k <= ell; ++k) {
      SpanValue cap = mins.vectors[k - 1].norm.scaled(pow(Rational(3, 2), static_cast<unsigned>(k - 2)));
      EXPECT_LE(compare(ctx, red.basis[k - 1].norm, cap), 0);
    }
    // lambda_k <= (3/2)^(k-1) nu_k for independent sets from the ball.
    Rational R = upper_rational(lat, red.basis.back().norm);
    auto ball = brute_ball(lat, R);
    const std::size_t top = std::min<std::size_t>(ball.size(), ell == 2 ? 30 : 12);
    std::vector<std::size_t> idx(ell);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t depth, std::size_t from) {
      if (depth == ell) {
        std::vector<LatticeVector> set;
        for (auto i : idx) set.push_back(ball[i]);
        if (!independent_rows(set)) return;
        for (std::size_t k = 1; k <= ell; ++k) {
          SpanValue cap = set[k - 1].norm.scaled(pow(Rational(3, 2), static_cast<unsigned>(k - 1)));
          EXPECT_LE(compare(ctx, red.basis[k - 1].norm, cap), 0);
        }
        return;
      }
      for (std::size_t i = from; i < top; ++i) {
        idx[depth] = i;
        rec(depth + 1, i + 1);
      }
    };
    rec(0, 0);
  }
}

TEST(Lattice, BoundChecks) {
  for (const auto& lat : sample_lattices()) {
    auto mins = successive_minima(lat);
    auto red = reduced_basis(lat);
    BoundCheck f = first_finiteness_check(lat, red);
    EXPECT_GE(f.value.lo, f.lower);
    EXPECT_LE(f.value.hi, f.upper);
    BoundCheck s = minkowski_second_check(lat, mins);
    EXPECT_LE(s.value.hi, s.upper);
  }
  auto l2 = lambda_lattice(golden(), Rational(2));
  BoundCheck f2 = first_finiteness_check(l2, reduced_basis(l2));
  EXPECT_EQ(f2.lower, 2);
  EXPECT_EQ(f2.upper, 4);
  EXPECT_NEAR(to_double(f2.value.mid()), 3.0557, 1e-4);
  auto l1 = lambda_lattice(golden(), Rational(1));
  BoundCheck f1 = first_finiteness_check(l1, reduced_basis(l1));
  EXPECT_EQ(f1.value.lo, 4);
  EXPECT_EQ(f1.value.hi, 4);
  auto l3 = lambda_lattice(theta_pair(), Rational(1));
  EXPECT_EQ(first_finiteness_check(l3, reduced_basis(l3)).upper, Rational(12));
}

TEST(Lattice, GmLastMinimumAtLeastM) {
  std::vector<ContextPtr> targets{golden(), theta_pair(), context(make_target({builtin("liouville")}, true)),
                                  context(powers_target(builtin("liouville"), 2, true))};
  for (const auto& ctx : targets) {
    for (long m = 1; m <= 6; ++m) {
      auto lat = gm_norm(ctx, greedy_matrix(ctx, m));
      auto mins = successive_minima(lat);
      EXPECT_GE(compare(*ctx, mins.vectors.back().norm, lat.scaled_bound(Rational(m))), 0) << m;
    }
  }
}

TEST(Lattice, GmNorm) {
  auto ctx = golden();
  GreedyMatrix g = greedy_matrix(ctx, 1);
  auto lat = gm_norm(ctx, g);
  // Last unit vector: max(1, m / |beta_ell|).
  RealScalar beta = g.beta.back();
  RealScalar e = lat.real_value(lat.scaled_norm(std::span<const Integer>(ints({0, 1}))));
  RealScalar want = RealScalar(1L) / (sign_of(beta) < 0 ? -beta : beta);
  EXPECT_TRUE(exactly_equal(e, compare_abs(want, RealScalar(1L)) == Ordering::GT ? want : RealScalar(1L)));
  for (long m = 1; m <= 4; ++m) {
    auto gl = gm_norm(ctx, greedy_matrix(ctx, m));
    for (auto c : {ints({1, -1}), ints({3, 2}), ints({-5, 8}), ints({0, 7})}) {
      std::vector<Integer> d;
      for (const auto& x : c) d.push_back(2 * x);
      SpanValue a = gl.scaled_norm(std::span<const Integer>(c)), b = gl.scaled_norm(std::span<const Integer>(d));
      EXPECT_TRUE(b == a.scaled(Rational(2)));
    }
  }
  EXPECT_THROW(gm_norm(ctx, 3, ints({0, 0})), ZeroBetaEll);
}

TEST(Lattice, UnitBallVolume) {
  auto ctx = golden();
  const double a = builtin("golden").approx();
  for (double h : {0.05, 0.3, 0.9, 1.4, 2.0}) {
    // Midpoint rule over x for the length of {y : |y| <= 1, |a x + y| < h}.
    const int N = 200000;
    double area = 0;
    for (int i = 0; i < N; ++i) {
      double x = -1 + (i + 0.5) * 2.0 / N;
      double lo = std::max(-1.0, -a * x - h), hi = std::min(1.0, -a * x + h);
      area += std::max(0.0, hi - lo) * 2.0 / N;
    }
    Rational hr(static_cast<long>(h * 100), 100);
    Interval v = cube_slab_volume(*ctx, Interval::point(hr), 64);
    EXPECT_NEAR(to_double(v.mid()), area, 1e-6) << h;
    EXPECT_LT(to_double(v.width()), 1e-12);
  }
  Interval whole = cube_slab_volume(*ctx, Interval::point(Rational(3)), 64);
  EXPECT_TRUE(whole.contains(Rational(4)));
  EXPECT_LT(to_double(whole.width()), 1e-12);
  auto th = theta_pair();
  Interval full = cube_slab_volume(*th, Interval::point(Rational(10)), 64);
  EXPECT_TRUE(full.contains(Rational(8)));
  EXPECT_EQ(lambda_lattice(th, Rational(2)).unit_ball_volume(64).mid(), 8);
}

TEST(Lattice, DimensionCap) {
  std::vector<RealScalar> xs;
  auto base = builtin("liouville");
  for (int i = 1; i <= 5; ++i) xs.push_back(base * RealScalar(Rational(i + 1, i + 2)) + RealScalar(Rational(i, 7)));
  auto ctx = context(make_target(xs, true));
  auto lat = lambda_lattice(ctx, Rational(1));
  EXPECT_THROW(successive_minima(lat), DimensionTooLarge);
  EXPECT_THROW(reduced_basis(lat), DimensionTooLarge);
}

TEST(Lattice, TrajectoryMatchesEnumeration) {
  std::vector<Rational> grid;
  for (long t = 1; t <= 12; ++t) grid.push_back(Rational(t));
  grid.push_back(Rational(7, 3));
  for (const auto& s : quadratic_surds()) {
    auto ctx = context(make_target({RealScalar::parse(s.spec)}));
    auto traj = lambda1_trajectory(ctx, grid);
    for (const auto& p : traj) {
      auto lat = lambda_lattice(ctx, p.t);
      LatticeVector f = first_minimum(lat);
      EXPECT_EQ(compare(*ctx, f.norm, p.shortest.norm), 0) << s.name << " t=" << p.t;
    }
  }
}

TEST(Lattice, GoldenTrajectoryBoundedBelow) {
  std::vector<Rational> grid;
  for (long t = 1; t <= 20; ++t) grid.push_back(Rational(t));
  auto traj = lambda1_trajectory(golden(), grid);
  Rational lo = traj.front().mu1.lo;
  for (const auto& p : traj) lo = std::min(lo, p.mu1.lo);
  EXPECT_GE(lo, Rational(3, 10));
  EXPECT_LE(traj.front().mu1.hi, 1);
}

TEST(Lattice, LiouvilleTrajectoryDips) {
  std::vector<Rational> grid;
  for (int k = 0; k <= 16; ++k) grid.push_back(pow(Rational(10), static_cast<unsigned>(k)));
  auto traj = lambda1_trajectory(liouville(), grid);
  Rational lo = traj.front().mu1.hi;
  for (const auto& p : traj) lo = std::min(lo, p.mu1.hi);
  EXPECT_LT(lo, Rational(1, 100));
}

TEST(Lattice, PairTrajectory) {
  auto traj = lambda1_trajectory(theta_pair(), {Rational(1), Rational(2), Rational(3)});
  ASSERT_EQ(traj.size(), 3u);
  for (const auto& p : traj) EXPECT_LE(p.mu1.hi, 1);
}
