#pragma once

#include <cstddef>
#include <optional>
#include <string_view>

namespace mchain::kernels {

enum class Isa { scalar, avx2 };

/// Nearest-integer residuals of a linear form over a batch of integer vectors.
///
/// Vector j has coordinates q[i * stride + j] for i < n (integer-valued
/// doubles, |q| < 2^52). With s_j = sum_i q_ij * (a_hi[i] + a_lo[i]) evaluated
/// in double-double, writes p_out[j] = -round(s_j) and r_out[j] = s_j + p_out[j]
/// with |r_out[j]| <= 1/2. The result is bit-identical across ISAs.
///
/// The absolute error of r_out[j] against the exact value with the exact
/// coefficients alpha_i is at most residual_error_bound(...).
void nearest_residuals(const double* q, std::size_t n, std::size_t count, std::size_t stride,
                       const double* a_hi, const double* a_lo, double* p_out, double* r_out);

void nearest_residuals_scalar(const double* q, std::size_t n, std::size_t count, std::size_t stride,
                              const double* a_hi, const double* a_lo, double* p_out, double* r_out);
#if defined(__x86_64__) || defined(_M_X64)
void nearest_residuals_avx2(const double* q, std::size_t n, std::size_t count, std::size_t stride,
                            const double* a_hi, const double* a_lo, double* p_out, double* r_out);
#endif

/// Error bound for one residual: sum_abs_q_err = sum |q_i| err_i,
/// sum_abs_q_mag = sum |q_i| max(1, |alpha_i|).
inline double residual_error_bound(double sum_abs_q_err, double sum_abs_q_mag, double r) {
  double ar = r < 0 ? -r : r;
  return (sum_abs_q_err + 0x1p-95 * sum_abs_q_mag + 0x1p-52 * ar) * (1 + 0x1p-40);
}

bool avx2_supported();
Isa active_isa();
/// Overrides runtime dispatch; std::nullopt restores auto-detection.
void force_isa(std::optional<Isa> isa);
std::string_view isa_name(Isa isa);

}  // namespace mchain::kernels
