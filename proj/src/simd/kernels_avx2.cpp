#include "mtgb/simd/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>
#define MTGB_AVX2_TARGET __attribute__((target("avx2,fma")))

namespace mtgb::simd::avx2 {

namespace {

MTGB_AVX2_TARGET inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

}  // namespace

MTGB_AVX2_TARGET double sum(std::span<const float> values) {
  const float* p = values.data();
  const std::size_t n = values.size();
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256 v = _mm256_loadu_ps(p + i);
    acc0 = _mm256_add_pd(acc0, _mm256_cvtps_pd(_mm256_castps256_ps128(v)));
    acc1 = _mm256_add_pd(acc1, _mm256_cvtps_pd(_mm256_extractf128_ps(v, 1)));
  }
  double acc = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) acc += static_cast<double>(p[i]);
  return acc;
}

MTGB_AVX2_TARGET void row_sums(std::span<const float> matrix, std::size_t cols, std::span<double> out) {
  for (std::size_t r = 0; r < out.size(); ++r) out[r] = sum(matrix.subspan(r * cols, cols));
}

MTGB_AVX2_TARGET double gather_sum(std::span<const float> row, std::span<const std::size_t> idx) {
  const float* base = row.data();
  const std::size_t n = idx.size();
  __m256d acc = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256i offs = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(idx.data() + k));
    const __m128 g = _mm256_i64gather_ps(base, offs, 4);
    acc = _mm256_add_pd(acc, _mm256_cvtps_pd(g));
  }
  double total = hsum(acc);
  for (; k < n; ++k) total += static_cast<double>(base[idx[k]]);
  return total;
}

MTGB_AVX2_TARGET double dot(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size();
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a.data() + i), _mm256_loadu_pd(b.data() + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a.data() + i + 4), _mm256_loadu_pd(b.data() + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a.data() + i), _mm256_loadu_pd(b.data() + i), acc0);
  }
  double acc = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

}  // namespace mtgb::simd::avx2

#else

#include <stdexcept>

namespace mtgb::simd::avx2 {
double sum(std::span<const float>) { throw std::logic_error("AVX2 kernels not built for this target"); }
void row_sums(std::span<const float>, std::size_t, std::span<double>) {
  throw std::logic_error("AVX2 kernels not built for this target");
}
double gather_sum(std::span<const float>, std::span<const std::size_t>) {
  throw std::logic_error("AVX2 kernels not built for this target");
}
double dot(std::span<const double>, std::span<const double>) {
  throw std::logic_error("AVX2 kernels not built for this target");
}
}  // namespace mtgb::simd::avx2

#endif
