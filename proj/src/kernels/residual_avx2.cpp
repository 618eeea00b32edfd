// Built with -mavx2 -mfma; only reached after a runtime CPU check.
#include <immintrin.h>

#include "mchain/kernels/residual.hpp"

namespace mchain::kernels {

void nearest_residuals_avx2(const double* q, std::size_t n, std::size_t count, std::size_t stride,
                            const double* a_hi, const double* a_lo, double* p_out, double* r_out) {
  const __m256d half = _mm256_set1_pd(0.5);
  const __m256d neg_half = _mm256_set1_pd(-0.5);
  const __m256d one = _mm256_set1_pd(1.0);
  std::size_t j = 0;
  for (; j + 4 <= count; j += 4) {
    __m256d sh = _mm256_setzero_pd();
    __m256d sl = _mm256_setzero_pd();
    for (std::size_t i = 0; i < n; ++i) {
      __m256d x = _mm256_loadu_pd(q + i * stride + j);
      __m256d ah = _mm256_set1_pd(a_hi[i]);
      __m256d al = _mm256_set1_pd(a_lo[i]);
      __m256d ph = _mm256_mul_pd(x, ah);
      __m256d pl = _mm256_fmsub_pd(x, ah, ph);
      pl = _mm256_fmadd_pd(x, al, pl);
      __m256d s = _mm256_add_pd(sh, ph);
      __m256d bb = _mm256_sub_pd(s, sh);
      __m256d e = _mm256_add_pd(_mm256_sub_pd(sh, _mm256_sub_pd(s, bb)), _mm256_sub_pd(ph, bb));
      e = _mm256_add_pd(e, _mm256_add_pd(sl, pl));
      sh = _mm256_add_pd(s, e);
      sl = _mm256_sub_pd(e, _mm256_sub_pd(sh, s));
    }
    __m256d rh = _mm256_round_pd(sh, _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    __m256d r = _mm256_add_pd(_mm256_sub_pd(sh, rh), sl);
    __m256d up = _mm256_and_pd(_mm256_cmp_pd(r, half, _CMP_GT_OQ), one);
    rh = _mm256_add_pd(rh, up);
    r = _mm256_sub_pd(r, up);
    __m256d down = _mm256_and_pd(_mm256_cmp_pd(r, neg_half, _CMP_LT_OQ), one);
    rh = _mm256_sub_pd(rh, down);
    r = _mm256_add_pd(r, down);
    _mm256_storeu_pd(p_out + j, _mm256_sub_pd(_mm256_setzero_pd(), rh));
    _mm256_storeu_pd(r_out + j, r);
  }
  // The scalar path performs the same operation sequence on the tail.
  if (j < count) nearest_residuals_scalar(q + j, n, count - j, stride, a_hi, a_lo, p_out + j, r_out + j);
}

}  // namespace mchain::kernels
