#include "sbm/kernels.hpp"

#ifdef SBM_HAVE_NEON
#include <arm_neon.h>

namespace sbm::kernels {
namespace {

double dot_neon(const double* x, const double* y, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 = vfmaq_f64(acc0, vld1q_f64(x + i), vld1q_f64(y + i));
    acc1 = vfmaq_f64(acc1, vld1q_f64(x + i + 2), vld1q_f64(y + i + 2));
  }
  double tail = 0.0;
  for (; i < n; ++i) tail += x[i] * y[i];
  return vaddvq_f64(vaddq_f64(acc0, acc1)) + tail;
}

double sum_neon(const double* x, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 = vaddq_f64(acc0, vld1q_f64(x + i));
    acc1 = vaddq_f64(acc1, vld1q_f64(x + i + 2));
  }
  double tail = 0.0;
  for (; i < n; ++i) tail += x[i];
  return vaddvq_f64(vaddq_f64(acc0, acc1)) + tail;
}

void axpy_neon(double a, const double* x, double* y, std::size_t n) {
  float64x2_t va = vdupq_n_f64(a);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    vst1q_f64(y + i, vfmaq_f64(vld1q_f64(y + i), va, vld1q_f64(x + i)));
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

std::uint64_t and_popcount_neon(const std::uint64_t* a, const std::uint64_t* b,
                                std::size_t nwords) {
  std::uint64_t total = 0;
  std::size_t i = 0;
  for (; i + 2 <= nwords; i += 2) {
    uint8x16_t v = vreinterpretq_u8_u64(
        vandq_u64(vld1q_u64(a + i), vld1q_u64(b + i)));
    total += vaddvq_u8(vcntq_u8(v));
  }
  for (; i < nwords; ++i) total += __builtin_popcountll(a[i] & b[i]);
  return total;
}

}  // namespace

const Ops& neon_ops() {
  static const Ops ops{dot_neon, sum_neon, axpy_neon, and_popcount_neon, "neon"};
  return ops;
}

}  // namespace sbm::kernels
#endif  // SBM_HAVE_NEON
