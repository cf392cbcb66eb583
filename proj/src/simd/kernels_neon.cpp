#include "mtgb/simd/kernels.hpp"

#if defined(__aarch64__)
#include <arm_neon.h>

namespace mtgb::simd::neon {

double sum(std::span<const float> values) {
  const float* p = values.data();
  const std::size_t n = values.size();
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const float32x4_t v = vld1q_f32(p + i);
    acc0 = vaddq_f64(acc0, vcvt_f64_f32(vget_low_f32(v)));
    acc1 = vaddq_f64(acc1, vcvt_high_f64_f32(v));
  }
  double acc = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; i < n; ++i) acc += static_cast<double>(p[i]);
  return acc;
}

void row_sums(std::span<const float> matrix, std::size_t cols, std::span<double> out) {
  for (std::size_t r = 0; r < out.size(); ++r) out[r] = sum(matrix.subspan(r * cols, cols));
}

double gather_sum(std::span<const float> row, std::span<const std::size_t> idx) {
  // No gather instruction; pairwise accumulation keeps two independent chains.
  double a = 0.0;
  double b = 0.0;
  std::size_t k = 0;
  for (; k + 2 <= idx.size(); k += 2) {
    a += static_cast<double>(row[idx[k]]);
    b += static_cast<double>(row[idx[k + 1]]);
  }
  if (k < idx.size()) a += static_cast<double>(row[idx[k]]);
  return a + b;
}

double dot(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size();
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 = vfmaq_f64(acc0, vld1q_f64(a.data() + i), vld1q_f64(b.data() + i));
    acc1 = vfmaq_f64(acc1, vld1q_f64(a.data() + i + 2), vld1q_f64(b.data() + i + 2));
  }
  double acc = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

}  // namespace mtgb::simd::neon

#else

#include <stdexcept>

namespace mtgb::simd::neon {
double sum(std::span<const float>) { throw std::logic_error("NEON kernels not built for this target"); }
void row_sums(std::span<const float>, std::size_t, std::span<double>) {
  throw std::logic_error("NEON kernels not built for this target");
}
double gather_sum(std::span<const float>, std::span<const std::size_t>) {
  throw std::logic_error("NEON kernels not built for this target");
}
double dot(std::span<const double>, std::span<const double>) {
  throw std::logic_error("NEON kernels not built for this target");
}
}  // namespace mtgb::simd::neon

#endif
