#include <gtest/gtest.h>

#include <cstring>
#include <random>

#include "mchain/form.hpp"
#include "mchain/kernels/residual.hpp"

using namespace mchain;

namespace {

struct Batch {
  std::size_t n, count;
  std::vector<double> q;
};

Batch random_batch(std::mt19937_64& rng, std::size_t n, std::size_t count, long span) {
  Batch b{n, count, std::vector<double>(n * count)};
  for (auto& x : b.q) x = static_cast<double>(static_cast<long>(rng() % (2 * span + 1)) - span);
  return b;
}

}  // namespace

TEST(Kernels, Avx2MatchesScalarBitForBit) {
  if (!kernels::avx2_supported()) GTEST_SKIP() << "no AVX2/FMA on this CPU";
  std::mt19937_64 rng(1);
  RealScalar th = builtin("cos2pi7");
  FormContext ctx(make_target({th * th, th}));
  for (std::size_t n : {1u, 2u, 3u}) {
    for (std::size_t count : {1u, 3u, 4u, 7u, 64u, 1001u}) {
      for (long span : {10L, 100000L, 1L << 40}) {
        Batch b = random_batch(rng, n, count, span);
        std::vector<double> hi(n), lo(n);
        for (std::size_t i = 0; i < n; ++i) {
          hi[i] = ctx.alpha_hi()[i % 2];
          lo[i] = ctx.alpha_lo()[i % 2];
        }
        std::vector<double> p1(count), r1(count), p2(count), r2(count);
        kernels::nearest_residuals_scalar(b.q.data(), n, count, count, hi.data(), lo.data(), p1.data(), r1.data());
        kernels::nearest_residuals_avx2(b.q.data(), n, count, count, hi.data(), lo.data(), p2.data(), r2.data());
        EXPECT_EQ(0, std::memcmp(p1.data(), p2.data(), count * sizeof(double)));
        EXPECT_EQ(0, std::memcmp(r1.data(), r2.data(), count * sizeof(double)));
      }
    }
  }
}

TEST(Kernels, ResidualsWithinCertifiedBound) {
  std::mt19937_64 rng(2);
  RealScalar th = builtin("cos2pi7");
  FormContext ctx(make_target({th * th, th}));
  const std::size_t n = 2, count = 500;
  Batch b = random_batch(rng, n, count, 1'000'000);
  std::vector<double> p(count), r(count);
  kernels::nearest_residuals(b.q.data(), n, count, count, ctx.alpha_hi().data(), ctx.alpha_lo().data(), p.data(), r.data());
  for (std::size_t j = 0; j < count; ++j) {
    std::vector<Integer> c{Integer(static_cast<long>(b.q[j])), Integer(static_cast<long>(b.q[count + j])),
                           Integer(static_cast<long>(p[j]))};
    Interval exact = ctx.interval(c, 200);
    double se = 0, sm = 0;
    for (std::size_t i = 0; i < n; ++i) {
      double aq = std::fabs(b.q[i * count + j]);
      se += aq * ctx.alpha_err()[i];
      sm += aq * std::max(1.0, std::fabs(ctx.alpha_hi()[i]));
    }
    double bound = kernels::residual_error_bound(se, sm, r[j]);
    Rational diff = abs(exact.mid() - Rational(r[j]));
    EXPECT_LE(diff, Rational(bound)) << j;
    EXPECT_LE(std::fabs(r[j]), 0.5);
  }
}

TEST(Kernels, ForcedScalarDispatch) {
  kernels::force_isa(kernels::Isa::scalar);
  EXPECT_EQ(kernels::active_isa(), kernels::Isa::scalar);
  kernels::force_isa(std::nullopt);
  EXPECT_EQ(kernels::active_isa() == kernels::Isa::avx2, kernels::avx2_supported());
}
