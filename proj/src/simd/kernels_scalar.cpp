#include "mtgb/simd/kernels.hpp"

namespace mtgb::simd::scalar {

double sum(std::span<const float> values) {
  double acc = 0.0;
  for (float v : values) acc += static_cast<double>(v);
  return acc;
}

void row_sums(std::span<const float> matrix, std::size_t cols, std::span<double> out) {
  for (std::size_t r = 0; r < out.size(); ++r) out[r] = sum(matrix.subspan(r * cols, cols));
}

double gather_sum(std::span<const float> row, std::span<const std::size_t> idx) {
  double acc = 0.0;
  for (auto i : idx) acc += static_cast<double>(row[i]);
  return acc;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

}  // namespace mtgb::simd::scalar
