#include <atomic>
#include <cstdlib>

#include "mchain/kernels/residual.hpp"

namespace mchain::kernels {

namespace {

// -1: auto, otherwise static_cast<int>(Isa).
std::atomic<int> g_forced{-1};

bool env_forces_scalar() {
  const char* v = std::getenv("MCHAIN_FORCE_SCALAR");
  return v != nullptr && v[0] != '\0' && v[0] != '0';
}

}  // namespace

bool avx2_supported() {
#if defined(__x86_64__) || defined(_M_X64)
  static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return ok;
#else
  return false;
#endif
}

Isa active_isa() {
  int f = g_forced.load(std::memory_order_relaxed);
  if (f >= 0) return static_cast<Isa>(f);
  static const bool scalar_only = env_forces_scalar();
  return (!scalar_only && avx2_supported()) ? Isa::avx2 : Isa::scalar;
}

void force_isa(std::optional<Isa> isa) {
  if (isa && *isa == Isa::avx2 && !avx2_supported()) isa = Isa::scalar;
  g_forced.store(isa ? static_cast<int>(*isa) : -1, std::memory_order_relaxed);
}

std::string_view isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

void nearest_residuals(const double* q, std::size_t n, std::size_t count, std::size_t stride,
                       const double* a_hi, const double* a_lo, double* p_out, double* r_out) {
#if defined(__x86_64__) || defined(_M_X64)
  if (active_isa() == Isa::avx2) {
    nearest_residuals_avx2(q, n, count, stride, a_hi, a_lo, p_out, r_out);
    return;
  }
#endif
  nearest_residuals_scalar(q, n, count, stride, a_hi, a_lo, p_out, r_out);
}

}  // namespace mchain::kernels
