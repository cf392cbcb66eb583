#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "mtgb/simd/kernels.hpp"

using namespace mtgb;

namespace {

struct IsaGuard {
  simd::Isa saved = simd::active_isa();
  ~IsaGuard() { simd::set_active_isa(saved); }
};

std::vector<float> random_floats(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<float> u(0.0f, 1.0f);
  std::vector<float> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

}  // namespace

TEST_SUITE("simd") {

TEST_CASE("scalar is always available") {
  IsaGuard g;
  CHECK(simd::isa_supported(simd::Isa::Scalar));
  CHECK(simd::set_active_isa(simd::Isa::Scalar));
  CHECK(simd::active_isa() == simd::Isa::Scalar);
  CHECK(simd::isa_supported(simd::detected_isa()));
}

TEST_CASE("vector kernels agree with the scalar reference") {
  IsaGuard g;
  std::mt19937_64 rng(31);
  for (auto isa : {simd::Isa::Avx2, simd::Isa::Neon}) {
    if (!simd::set_active_isa(isa)) continue;
    CAPTURE(simd::isa_name(isa));
    for (std::size_t n : {0u, 1u, 3u, 7u, 8u, 9u, 15u, 16u, 17u, 31u, 64u, 1000u, 4099u}) {
      const auto v = random_floats(rng, n);
      CHECK(simd::sum(v) == doctest::Approx(simd::scalar::sum(v)).epsilon(1e-12));

      std::vector<double> a(n);
      std::vector<double> b(n);
      for (std::size_t k = 0; k < n; ++k) {
        a[k] = v[k] - 0.5;
        b[k] = 1.0 / (1.0 + k);
      }
      CHECK(simd::dot(a, b) == doctest::Approx(simd::scalar::dot(a, b)).epsilon(1e-12));

      std::vector<std::size_t> idx;
      for (std::size_t k = 0; k < n; k += 3) idx.push_back(n - 1 - k);
      CHECK(simd::gather_sum(v, idx) == doctest::Approx(simd::scalar::gather_sum(v, idx)).epsilon(1e-12));
    }
    for (std::size_t cols : {1u, 5u, 8u, 13u, 33u}) {
      const std::size_t rows = 7;
      const auto mtx = random_floats(rng, rows * cols);
      std::vector<double> got(rows);
      std::vector<double> want(rows);
      simd::row_sums(mtx, cols, got);
      simd::scalar::row_sums(mtx, cols, want);
      for (std::size_t r = 0; r < rows; ++r) CHECK(got[r] == doctest::Approx(want[r]).epsilon(1e-12));
    }
  }
}

TEST_CASE("dispatching entry points follow the active selection") {
  IsaGuard g;
  std::vector<float> v(100, 0.01f);
  REQUIRE(simd::set_active_isa(simd::Isa::Scalar));
  const double s = simd::sum(v);
  simd::set_active_isa(simd::detected_isa());
  CHECK(simd::sum(v) == doctest::Approx(s).epsilon(1e-12));
  CHECK(std::abs(s - 1.0) < 1e-6);
}

}
