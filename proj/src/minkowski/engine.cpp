#include <algorithm>
#include <cmath>
#include <limits>

#include "mchain/errors.hpp"
#include "mchain/kernels/residual.hpp"
#include "mchain/minkowski.hpp"

namespace mchain {

namespace {

constexpr std::size_t kBatch = 1024;
constexpr std::size_t kMaxEll = 8;
// Headroom for int64 sums of two box vectors.
constexpr long kMaxOrder = 1L << 50;

struct Cand {
  std::vector<std::int64_t> v;
  double est = 0, err = 0;
  int sign = 2;  // 2: not yet decided
};

// Fraction-free row echelon used for the independence test.
class Echelon {
 public:
  explicit Echelon(std::size_t ell) : ell_(ell) {}

  bool try_add(const std::vector<std::int64_t>& v) {
    std::vector<Integer> x(v.begin(), v.end());
    for (std::size_t b = 0; b < rows_.size(); ++b) {
      std::size_t c = pivots_[b];
      if (x[c] == 0) continue;
      Integer f = x[c], g = rows_[b][c];
      for (std::size_t j = 0; j < ell_; ++j) x[j] = g * x[j] - f * rows_[b][j];
      Integer h = 0;
      for (const auto& e : x) h = gcd(h, e);
      if (h > 1) {
        for (auto& e : x) e /= h;
      }
    }
    for (std::size_t c = 0; c < ell_; ++c) {
      if (x[c] != 0) {
        pivots_.push_back(c);
        rows_.push_back(std::move(x));
        return true;
      }
    }
    return false;
  }

 private:
  std::size_t ell_;
  std::vector<std::vector<Integer>> rows_;
  std::vector<std::size_t> pivots_;
};

}  // namespace

struct ChainEngine::Impl {
  ContextPtr ctx;
  std::size_t n, ell;
  long m = 0;
  std::vector<Cand> pool;
  double thr_hi = std::numeric_limits<double>::infinity();
  std::vector<std::vector<std::int64_t>> rows;

  std::size_t jmax = 0;
  double sum_err = 0, sum_mag = 0;
  std::vector<double> qbuf, pbuf, rbuf;
  std::size_t fill = 0;
  std::vector<Cand> fresh;

  explicit Impl(ContextPtr c) : ctx(std::move(c)), n(ctx->n()), ell(ctx->ell()) {
    if (ell > kMaxEll) throw DimensionTooLarge("chain engine supports ell <= " + std::to_string(kMaxEll));
    const auto& hi = ctx->alpha_hi();
    for (std::size_t i = 0; i < n; ++i) {
      sum_err += ctx->alpha_err()[i];
      sum_mag += std::max(1.0, std::fabs(hi[i]));
      if (std::fabs(hi[i]) > std::fabs(hi[jmax])) jmax = i;
    }
    qbuf.resize(n * kBatch);
    pbuf.resize(kBatch);
    rbuf.resize(kBatch);
  }

  void evaluate(Cand& c) const { ctx->estimate(std::span<const std::int64_t>(c.v), c.est, c.err); }

  int sign(Cand& c) const {
    if (c.sign == 2) {
      if (c.est > c.err) {
        c.sign = 1;
      } else if (c.est < -c.err) {
        c.sign = -1;
      } else {
        c.sign = ctx->sign(std::span<const std::int64_t>(c.v));
      }
    }
    return c.sign;
  }

  // Exact comparison of |xi(a)| and |xi(b)|.
  int compare_abs(Cand& a, Cand& b) const {
    double da = std::fabs(a.est), db = std::fabs(b.est);
    if (da + a.err < db - b.err) return -1;
    if (da - a.err > db + b.err) return 1;
    int sa = sign(a), sb = sign(b);
    std::vector<std::int64_t> combo(ell);
    for (std::size_t i = 0; i < ell; ++i) combo[i] = sa * a.v[i] - sb * b.v[i];
    int s = ctx->sign(std::span<const std::int64_t>(combo));
    if (s == 0 && a.v != b.v) {
      throw InconsistencyError("two box vectors have equal |xi|; the target is not independent");
    }
    return s;
  }

  void consider(std::vector<std::int64_t> v) {
    Cand c{std::move(v)};
    evaluate(c);
    if (std::fabs(c.est) - c.err <= thr_hi) fresh.push_back(std::move(c));
  }

  // Shell part: ||q|| = m1, p from the kernel's nearest integer.
  void flush(long m1) {
    if (fill == 0) return;
    kernels::nearest_residuals(qbuf.data(), n, fill, kBatch, ctx->alpha_hi().data(), ctx->alpha_lo().data(),
                               pbuf.data(), rbuf.data());
    const double mq = static_cast<double>(m1);
    const double e = kernels::residual_error_bound(mq * sum_err, mq * sum_mag, 0.5);
    const bool all = std::isinf(thr_hi);
    const double reach = thr_hi + e + 0x1p-40 * (1 + thr_hi);
    for (std::size_t j = 0; j < fill; ++j) {
      double r = rbuf[j];
      long lo, hi;
      if (all) {
        lo = -m1;
        hi = m1;
      } else {
        if (std::fabs(r) > reach) continue;
        long p0 = static_cast<long>(pbuf[j]);
        lo = std::max<long>(-m1, p0 + static_cast<long>(std::ceil(-r - reach)));
        hi = std::min<long>(m1, p0 + static_cast<long>(std::floor(-r + reach)));
      }
      for (long p = lo; p <= hi; ++p) {
        std::vector<std::int64_t> v(ell);
        for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<std::int64_t>(qbuf[i * kBatch + j]);
        v[n] = p;
        consider(std::move(v));
      }
    }
    fill = 0;
  }

  void push_q(const std::vector<std::int64_t>& q, long m1) {
    for (std::size_t i = 0; i < n; ++i) qbuf[i * kBatch + fill] = static_cast<double>(q[i]);
    if (++fill == kBatch) flush(m1);
  }

  // Every q with max |q_i| = m1 whose first nonzero entry is positive.
  void scan_shell(long m1) {
    const long m0 = m1 - 1;
    std::vector<std::int64_t> q(n);
    for (std::size_t d = 0; d < n; ++d) {
      // q_0..q_{d-1} in [-m0, m0], q_d = +-m1, the rest in [-m1, m1].
      for (std::size_t i = 0; i < d; ++i) q[i] = -m0;
      while (true) {
        std::size_t first = 0;
        while (first < d && q[first] == 0) ++first;
        bool prefix_ok = first == d || q[first] > 0;
        if (prefix_ok) {
          for (int sd : {1, -1}) {
            if (sd < 0 && first == d) continue;
            q[d] = sd * m1;
            for (std::size_t i = d + 1; i < n; ++i) q[i] = -m1;
            while (true) {
              push_q(q, m1);
              std::size_t i = n;
              while (i > d + 1 && q[i - 1] == m1) {
                q[i - 1] = -m1;
                --i;
              }
              if (i == d + 1) break;
              ++q[i - 1];
            }
          }
        }
        std::size_t i = d;
        while (i > 0 && q[i - 1] == m0) {
          q[i - 1] = -m0;
          --i;
        }
        if (i == 0) break;
        ++q[i - 1];
      }
    }
    flush(m1);
  }

  // Vectors (q, +-m1) with ||q|| <= m0, normalised.
  void scan_cap(long m1) {
    const long m0 = m1 - 1;
    const bool all = std::isinf(thr_hi);
    const auto& hi = ctx->alpha_hi();
    const double aj = hi[jmax];
    const double slack = 0x1p-40 * (1 + static_cast<double>(m1) * sum_mag);
    std::vector<std::size_t> others;
    for (std::size_t i = 0; i < n; ++i)
      if (i != jmax) others.push_back(i);
    std::vector<std::int64_t> q(n, -m0);
    q[jmax] = 0;
    while (true) {
      long qlo = -m0, qhi = m0;
      if (!all) {
        double s = 0;
        for (std::size_t i = 0; i < n; ++i)
          if (i != jmax) s += hi[i] * static_cast<double>(q[i]);
        double a = (-static_cast<double>(m1) - s - thr_hi - slack) / aj;
        double b = (-static_cast<double>(m1) - s + thr_hi + slack) / aj;
        if (a > b) std::swap(a, b);
        if (b >= -static_cast<double>(m0) - 1 && a <= static_cast<double>(m0) + 1) {
          qlo = std::max<long>(-m0, static_cast<long>(std::floor(a)) - 1);
          qhi = std::min<long>(m0, static_cast<long>(std::ceil(b)) + 1);
        } else {
          qlo = 1;
          qhi = 0;
        }
      }
      for (long t = qlo; t <= qhi; ++t) {
        std::vector<std::int64_t> v(ell);
        for (std::size_t i = 0; i < n; ++i) v[i] = q[i];
        v[jmax] = t;
        v[n] = m1;
        std::size_t f = 0;
        while (f < n && v[f] == 0) ++f;
        if (f < n && v[f] < 0) {
          for (auto& x : v) x = -x;
        }
        consider(std::move(v));
      }
      std::size_t k = others.size();
      while (k > 0 && q[others[k - 1]] == m0) {
        q[others[k - 1]] = -m0;
        --k;
      }
      if (k == 0) break;
      ++q[others[k - 1]];
    }
  }

  bool step() {
    if (m >= kMaxOrder) throw DimensionTooLarge("order exceeds the int64 enumeration range");
    const long m1 = m + 1;
    fresh.clear();
    scan_shell(m1);
    scan_cap(m1);
    m = m1;
    if (fresh.empty()) return false;
    for (auto& c : fresh) pool.push_back(std::move(c));
    fresh.clear();
    std::sort(pool.begin(), pool.end(), [&](Cand& a, Cand& b) { return compare_abs(a, b) < 0; });
    Echelon ech(ell);
    std::vector<std::vector<std::int64_t>> picked;
    std::size_t last = 0;
    for (std::size_t i = 0; i < pool.size() && picked.size() < ell; ++i) {
      if (ech.try_add(pool[i].v)) {
        picked.push_back(pool[i].v);
        last = i;
      }
    }
    if (picked.size() < ell) throw InconsistencyError("candidate pool does not span the lattice");
    pool.resize(last + 1);
    thr_hi = (std::fabs(pool[last].est) + pool[last].err) * (1 + 0x1p-50);
    bool changed = picked != rows;
    rows = std::move(picked);
    return changed;
  }
};

ChainEngine::ChainEngine(ContextPtr ctx) : impl_(std::make_unique<Impl>(std::move(ctx))) {}
ChainEngine::~ChainEngine() = default;
ChainEngine::ChainEngine(ChainEngine&&) noexcept = default;
ChainEngine& ChainEngine::operator=(ChainEngine&&) noexcept = default;

bool ChainEngine::step() { return impl_->step(); }
long ChainEngine::order() const { return impl_->m; }
const std::vector<std::vector<std::int64_t>>& ChainEngine::rows() const { return impl_->rows; }
IntMatrix ChainEngine::matrix() const { return IntMatrix::from_rows(impl_->rows); }
std::size_t ChainEngine::pool_size() const { return impl_->pool.size(); }
const FormContext& ChainEngine::context() const { return *impl_->ctx; }

}  // namespace mchain
