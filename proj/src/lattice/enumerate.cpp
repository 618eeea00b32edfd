#include <algorithm>
#include <cmath>
#include <limits>

#include "mchain/errors.hpp"
#include "mchain/kernels/residual.hpp"
#include "mchain/lattice.hpp"

namespace mchain {

namespace {

constexpr std::size_t kBatch = 1024;
constexpr double kMaxBoxPoints = 2e8;
constexpr long kMaxCoord = 1L << 50;

Integer l1(const std::vector<Integer>& c) {
  Integer s = 0;
  for (const auto& x : c) s += abs(x);
  return s;
}

double upper_double(const Rational& x) { return to_double(x) * (1 + 0x1p-50) + 0x1p-1000; }

class BallScan {
 public:
  BallScan(const NormedLattice& lat, const Rational& B)
      : lat_(lat), ctx_(lat.context()), n_(ctx_.n()), ell_(ctx_.ell()), bound_(lat.scaled_bound(B)) {
    if (lat.kind() == NormKind::sup) {
      qmax_ = floor(lat.t() * B);
      xi_max_ = upper_double(B / pow(lat.t(), static_cast<unsigned>(n_)));
    } else {
      qmax_ = floor(B);
      double rho_hi = to_double(interval(ctx_, lat.rho(), 64).hi) * (1 + 0x1p-50);
      xi_max_ = upper_double(B) * rho_hi / static_cast<double>(lat.m()) * (1 + 0x1p-50);
      pmax_ = qmax_;
    }
    if (qmax_ >= kMaxCoord) throw DimensionTooLarge("enumeration box exceeds the int64 range");
    if (std::pow(2.0 * qmax_.get_d() + 1, static_cast<double>(n_)) > kMaxBoxPoints)
      throw DimensionTooLarge("enumeration box too large");
    const auto& hi = ctx_.alpha_hi();
    for (std::size_t i = 0; i < n_; ++i) {
      sum_err_ += ctx_.alpha_err()[i];
      sum_mag_ += std::max(1.0, std::fabs(hi[i]));
    }
    if (lat.kind() == NormKind::sup) {
      inv_t_ = to_double(Rational(1) / lat.t());
      tn_exact_ = pow(lat.t(), static_cast<unsigned>(n_));
      tn_ = to_double(tn_exact_);
    } else {
      Interval r = interval(ctx_, lat.rho(), 80);
      rho_ = to_double(r.mid());
      rho_err_ = to_double(r.width()) + std::fabs(rho_) * 0x1p-50;
      m_ = static_cast<double>(lat.m());
    }
    bound_real_ = B;
    Interval bi = interval(ctx_, bound_, 80);
    bound_lo_ = to_double(bi.lo) * (1 - 0x1p-50);
    bound_hi_ = to_double(bi.hi) * (1 + 0x1p-50);
    qbuf_.resize(n_ * kBatch);
    pbuf_.resize(kBatch);
    rbuf_.resize(kBatch);
  }

  std::vector<LatticeVector> run() {
    const long Q = qmax_.get_si();
    // q = 0: the vectors (0, ..., 0, p) with p > 0.
    const long ptop = static_cast<long>(std::floor(xi_max_)) + 1;
    for (long p = 1; p <= ptop; ++p) {
      std::vector<std::int64_t> v(ell_, 0);
      v[n_] = p;
      consider(std::move(v));
    }
    if (Q >= 1) {
      std::vector<std::int64_t> q(n_, -Q);
      while (true) {
        std::size_t f = 0;
        while (f < n_ && q[f] == 0) ++f;
        if (f < n_ && q[f] > 0) push_q(q);
        std::size_t i = n_;
        while (i > 0 && q[i - 1] == Q) {
          q[i - 1] = -Q;
          --i;
        }
        if (i == 0) break;
        ++q[i - 1];
      }
      flush();
    }
    return sorted();
  }

 private:
  void consider(std::vector<std::int64_t> v) {
    double est, err;
    ctx_.estimate(std::span<const std::int64_t>(v), est, err);
    if (std::fabs(est) - err > xi_max_) return;
    LatticeVector lv;
    approximate(v, est, err, lv);
    if (lv.approx - lv.approx_err > bound_hi_) return;
    lv.norm = exact_norm(v, est, err);
    // Box part certified to attain the maximum: the norm is c / t (sup) or rho c (gm).
    const std::int64_t box_c = box_decided_ ? box_c_ : -1;
    if (lv.approx + lv.approx_err >= bound_lo_) {
      if (box_c >= 0) {
        Rational c(static_cast<long>(box_c));
        if ((lat_.kind() == NormKind::sup ? c / lat_.t() : c) > bound_real_) return;
      } else if (compare(ctx_, lv.norm, bound_) > 0) {
        return;
      }
    }
    lv.coeffs.assign(v.begin(), v.end());
    std::int64_t l1 = 0;
    for (auto x : v) l1 += x < 0 ? -x : x;
    out_.push_back(std::move(lv));
    raw_.push_back(std::move(v));
    l1_.push_back(l1);
    box_.push_back(box_c);
  }

  // Orders by the double estimates, then sorts each run of overlapping
  // estimates exactly (ties by l1 norm, then lexicographically).
  std::vector<LatticeVector> sorted() {
    const std::size_t N = out_.size();
    std::vector<std::size_t> idx(N);
    for (std::size_t i = 0; i < N; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return out_[a].approx < out_[b].approx; });
    std::vector<double> suffix_lo(N + 1, std::numeric_limits<double>::infinity());
    for (std::size_t i = N; i-- > 0;) {
      const auto& x = out_[idx[i]];
      suffix_lo[i] = std::min(suffix_lo[i + 1], x.approx - x.approx_err);
    }
    auto exact_less = [&](std::size_t a, std::size_t b) {
      const auto &x = out_[a], &y = out_[b];
      if (x.approx + x.approx_err < y.approx - y.approx_err) return true;
      if (y.approx + y.approx_err < x.approx - x.approx_err) return false;
      if (box_[a] >= 0 && box_[b] >= 0) {
        if (box_[a] != box_[b]) return box_[a] < box_[b];
      } else if (!(x.norm == y.norm)) {
        int c = compare(ctx_, x.norm, y.norm);
        if (c != 0) return c < 0;
      }
      if (l1_[a] != l1_[b]) return l1_[a] < l1_[b];
      return raw_[a] < raw_[b];
    };
    std::size_t start = 0;
    double hi = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < N; ++i) {
      const auto& x = out_[idx[i]];
      hi = std::max(hi, x.approx + x.approx_err);
      if (hi < suffix_lo[i + 1]) {
        if (i > start) std::sort(idx.begin() + static_cast<long>(start), idx.begin() + static_cast<long>(i) + 1, exact_less);
        start = i + 1;
        hi = -std::numeric_limits<double>::infinity();
      }
    }
    std::vector<LatticeVector> result;
    result.reserve(N);
    for (auto i : idx) result.push_back(std::move(out_[i]));
    return result;
  }

  // Exact scaled norm; skips the exact comparisons when the estimates
  // already decide the sign of xi and which part attains the maximum.
  SpanValue exact_norm(const std::vector<std::int64_t>& v, double est, double err) {
    box_decided_ = false;
    if (!(std::fabs(est) > err) || !(std::fabs(part_box_ - part_xi_) > part_box_err_ + part_xi_err_))
      return lat_.scaled_norm(std::span<const std::int64_t>(v));
    const std::size_t box = lat_.kind() == NormKind::sup ? n_ : ell_;
    std::int64_t c = 0;
    for (std::size_t i = 0; i < box; ++i) c = std::max<std::int64_t>(c, v[i] < 0 ? -v[i] : v[i]);
    if (part_box_ > part_xi_) {
      box_decided_ = true;
      box_c_ = c;
      if (lat_.kind() == NormKind::sup) return SpanValue::constant(ell_, Rational(static_cast<long>(c)) / lat_.t());
      return lat_.rho().scaled(Rational(static_cast<long>(c)));
    }
    SpanValue xi = SpanValue::of_integers(std::span<const std::int64_t>(v));
    if (est < 0) xi = -xi;
    return xi.scaled(lat_.kind() == NormKind::sup ? tn_exact_ : Rational(lat_.m()));
  }

  // Scaled norm in doubles: max(box part, xi part), each with its error.
  void approximate(const std::vector<std::int64_t>& v, double est, double err, LatticeVector& lv) {
    const std::size_t box = lat_.kind() == NormKind::sup ? n_ : ell_;
    double c = 0;
    for (std::size_t i = 0; i < box; ++i) c = std::max(c, std::fabs(static_cast<double>(v[i])));
    double a, ae, b, be;
    if (lat_.kind() == NormKind::sup) {
      a = c * inv_t_;
      ae = a * 0x1p-50;
      b = std::fabs(est) * tn_;
      be = err * tn_ * (1 + 0x1p-50) + b * 0x1p-50;
    } else {
      a = c * rho_;
      ae = c * rho_err_ + a * 0x1p-50;
      b = std::fabs(est) * m_;
      be = err * m_ * (1 + 0x1p-50) + b * 0x1p-50;
    }
    part_box_ = a;
    part_box_err_ = ae;
    part_xi_ = b;
    part_xi_err_ = be;
    lv.approx = std::max(a, b);
    lv.approx_err = std::max(ae, be) * (1 + 0x1p-40) + 0x1p-1000;
  }

  void push_q(const std::vector<std::int64_t>& q) {
    for (std::size_t i = 0; i < n_; ++i) qbuf_[i * kBatch + fill_] = static_cast<double>(q[i]);
    if (++fill_ == kBatch) flush();
  }

  void flush() {
    if (fill_ == 0) return;
    kernels::nearest_residuals(qbuf_.data(), n_, fill_, kBatch, ctx_.alpha_hi().data(), ctx_.alpha_lo().data(),
                               pbuf_.data(), rbuf_.data());
    const double mq = qmax_.get_d();
    const double e = kernels::residual_error_bound(mq * sum_err_, mq * sum_mag_, 0.5);
    const double reach = xi_max_ + e + 0x1p-40 * (1 + xi_max_);
    for (std::size_t j = 0; j < fill_; ++j) {
      const double r = rbuf_[j];
      const long p0 = static_cast<long>(pbuf_[j]);
      long lo = p0 + static_cast<long>(std::ceil(-r - reach));
      long hi = p0 + static_cast<long>(std::floor(-r + reach));
      if (pmax_) {
        lo = std::max(lo, -pmax_->get_si());
        hi = std::min(hi, pmax_->get_si());
      }
      for (long p = lo; p <= hi; ++p) {
        std::vector<std::int64_t> v(ell_);
        for (std::size_t i = 0; i < n_; ++i) v[i] = static_cast<std::int64_t>(qbuf_[i * kBatch + j]);
        v[n_] = p;
        consider(std::move(v));
      }
    }
    fill_ = 0;
  }

  const NormedLattice& lat_;
  const FormContext& ctx_;
  std::size_t n_, ell_;
  SpanValue bound_;
  Integer qmax_;
  std::optional<Integer> pmax_;
  double xi_max_ = 0;
  double sum_err_ = 0, sum_mag_ = 0;
  double bound_lo_ = 0, bound_hi_ = 0;
  double part_box_ = 0, part_box_err_ = 0, part_xi_ = 0, part_xi_err_ = 0;
  Rational tn_exact_;
  double inv_t_ = 0, tn_ = 0, rho_ = 0, rho_err_ = 0, m_ = 0;
  std::vector<double> qbuf_, pbuf_, rbuf_;
  std::size_t fill_ = 0;
  std::vector<LatticeVector> out_;
  std::vector<std::vector<std::int64_t>> raw_;
  std::vector<std::int64_t> l1_;
  std::vector<std::int64_t> box_;
  bool box_decided_ = false;
  std::int64_t box_c_ = 0;
  Rational bound_real_;
};

}  // namespace

bool precedes(const NormedLattice& lat, const LatticeVector& a, const LatticeVector& b) {
  if (a.approx + a.approx_err < b.approx - b.approx_err) return true;
  if (b.approx + b.approx_err < a.approx - a.approx_err) return false;
  int c = compare(lat.context(), a.norm, b.norm);
  if (c != 0) return c < 0;
  int d = cmp(l1(a.coeffs), l1(b.coeffs));
  if (d != 0) return d < 0;
  return a.coeffs < b.coeffs;
}

std::vector<LatticeVector> enumerate_ball(const NormedLattice& lat, const Rational& B) {
  if (B < 0) return {};
  return BallScan(lat, B).run();
}

}  // namespace mchain
