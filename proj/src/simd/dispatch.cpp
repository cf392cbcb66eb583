#include <atomic>
#include <cstdlib>
#include <cstring>

#include "mtgb/simd/kernels.hpp"

namespace mtgb::simd {

namespace {

Isa probe() {
#if defined(__x86_64__) || defined(_M_X64)
  __builtin_cpu_init();
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) return Isa::Avx2;
  return Isa::Scalar;
#elif defined(__aarch64__)
  return Isa::Neon;
#else
  return Isa::Scalar;
#endif
}

Isa initial() {
  // MTGB_ISA=scalar pins the reference kernels for a whole process.
  if (const char* env = std::getenv("MTGB_ISA"); env != nullptr && std::strcmp(env, "scalar") == 0) {
    return Isa::Scalar;
  }
  return detected_isa();
}

std::atomic<Isa>& active() {
  static std::atomic<Isa> isa{initial()};
  return isa;
}

}  // namespace

const char* isa_name(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
    case Isa::Neon: return "neon";
  }
  return "?";
}

Isa detected_isa() {
  static const Isa isa = probe();
  return isa;
}

bool isa_supported(Isa isa) {
  return isa == Isa::Scalar || isa == detected_isa();
}

Isa active_isa() { return active().load(std::memory_order_relaxed); }

bool set_active_isa(Isa isa) {
  if (!isa_supported(isa)) return false;
  active().store(isa, std::memory_order_relaxed);
  return true;
}

double sum(std::span<const float> values) {
  switch (active_isa()) {
    case Isa::Avx2: return avx2::sum(values);
    case Isa::Neon: return neon::sum(values);
    case Isa::Scalar: break;
  }
  return scalar::sum(values);
}

void row_sums(std::span<const float> matrix, std::size_t cols, std::span<double> out) {
  switch (active_isa()) {
    case Isa::Avx2: return avx2::row_sums(matrix, cols, out);
    case Isa::Neon: return neon::row_sums(matrix, cols, out);
    case Isa::Scalar: break;
  }
  scalar::row_sums(matrix, cols, out);
}

double gather_sum(std::span<const float> row, std::span<const std::size_t> idx) {
  switch (active_isa()) {
    case Isa::Avx2: return avx2::gather_sum(row, idx);
    case Isa::Neon: return neon::gather_sum(row, idx);
    case Isa::Scalar: break;
  }
  return scalar::gather_sum(row, idx);
}

double dot(std::span<const double> a, std::span<const double> b) {
  switch (active_isa()) {
    case Isa::Avx2: return avx2::dot(a, b);
    case Isa::Neon: return neon::dot(a, b);
    case Isa::Scalar: break;
  }
  return scalar::dot(a, b);
}

}  // namespace mtgb::simd
