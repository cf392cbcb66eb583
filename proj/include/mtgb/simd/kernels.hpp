#pragma once

// Reduction kernels behind the attention and alignment inner loops.
//
// Every kernel exists as a scalar reference in mtgb::simd::scalar and as
// vectorized variants (AVX2 on x86-64, NEON on aarch64). The unqualified
// entry points dispatch once, at first use, to the best variant the CPU
// supports. All variants accumulate in double; results agree with the
// scalar reference up to summation order.

#include <cstddef>
#include <span>

namespace mtgb::simd {

enum class Isa { Scalar, Avx2, Neon };

const char* isa_name(Isa isa);

/// Best instruction set supported by this CPU and build.
Isa detected_isa();

/// Instruction set the dispatching entry points currently use.
Isa active_isa();

/// Forces a variant (tests, benchmarking). Returns false and leaves the
/// selection unchanged when the CPU cannot run it.
bool set_active_isa(Isa isa);

bool isa_supported(Isa isa);

double sum(std::span<const float> values);

/// out[r] = sum of row r of a row-major rows x cols matrix.
void row_sums(std::span<const float> matrix, std::size_t cols, std::span<double> out);

/// Sum of row[idx[k]] over k. Indices must be in range.
double gather_sum(std::span<const float> row, std::span<const std::size_t> idx);

double dot(std::span<const double> a, std::span<const double> b);

namespace scalar {
double sum(std::span<const float> values);
void row_sums(std::span<const float> matrix, std::size_t cols, std::span<double> out);
double gather_sum(std::span<const float> row, std::span<const std::size_t> idx);
double dot(std::span<const double> a, std::span<const double> b);
}  // namespace scalar

namespace avx2 {
double sum(std::span<const float> values);
void row_sums(std::span<const float> matrix, std::size_t cols, std::span<double> out);
double gather_sum(std::span<const float> row, std::span<const std::size_t> idx);
double dot(std::span<const double> a, std::span<const double> b);
}  // namespace avx2

namespace neon {
double sum(std::span<const float> values);
void row_sums(std::span<const float> matrix, std::size_t cols, std::span<double> out);
double gather_sum(std::span<const float> row, std::span<const std::size_t> idx);
double dot(std::span<const double> a, std::span<const double> b);
}  // namespace neon

}  // namespace mtgb::simd
