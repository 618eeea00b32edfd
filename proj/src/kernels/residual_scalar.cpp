#include <cmath>

#include "mchain/kernels/dd.hpp"
#include "mchain/kernels/residual.hpp"

namespace mchain::kernels {

void nearest_residuals_scalar(const double* q, std::size_t n, std::size_t count, std::size_t stride,
                              const double* a_hi, const double* a_lo, double* p_out, double* r_out) {
  for (std::size_t j = 0; j < count; ++j) {
    double sh = 0.0, sl = 0.0;
    for (std::size_t i = 0; i < n; ++i) dd::accumulate(q[i * stride + j], a_hi[i], a_lo[i], sh, sl);
    double rh = std::nearbyint(sh);
    double r = (sh - rh) + sl;
    double up = r > 0.5 ? 1.0 : 0.0;
    rh = rh + up;
    r = r - up;
    double down = r < -0.5 ? 1.0 : 0.0;
    rh = rh - down;
    r = r + down;
    p_out[j] = 0.0 - rh;
    r_out[j] = r;
  }
}

}  // namespace mchain::kernels
