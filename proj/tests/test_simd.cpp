#include "doctest.h"

#include "sheetlab/simd/kernels.hpp"

#include <cmath>
#include <random>
#include <vector>

using namespace sheetlab::simd;

namespace {

std::vector<double> random_vec(std::size_t n, unsigned seed, double lo, double hi) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> d(lo, hi);
  std::vector<double> v(n);
  for (auto& x : v) x = d(rng);
  return v;
}

}  // namespace

TEST_CASE("dispatcher reports an isa") {
  Isa isa = active_isa();
  CHECK((isa == Isa::Scalar || isa == Isa::Avx2));
  force_isa(Isa::Scalar);
  CHECK(active_isa() == Isa::Scalar);
  reset_isa();
  MESSAGE("active isa: " << isa_name(active_isa()));
}

TEST_CASE("avx2 kernels match the scalar reference") {
  if (!avx2_available()) {
    MESSAGE("avx2 not available; equivalence test skipped");
    return;
  }
  for (std::size_t n : {0u, 1u, 3u, 4u, 7u, 8u, 9u, 31u, 100u, 1001u}) {
    auto x = random_vec(n, 1 + n, -1, 1);
    auto y = random_vec(n, 2 + n, -1, 1);
    double ds = scalar::dot(x.data(), y.data(), n);
    double dv = avx2::dot(x.data(), y.data(), n);
    CHECK(std::fabs(ds - dv) <= 1e-14 * (1.0 + std::fabs(ds)) * std::sqrt(double(n) + 1));

    auto ys = y, yv = y;
    scalar::axpy(0.37, x.data(), ys.data(), n);
    avx2::axpy(0.37, x.data(), yv.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(std::fabs(ys[i] - yv[i]) <= 1e-15);
  }
  const std::size_t rows = 13, cols = 37;
  auto a = random_vec(rows * cols, 5, -1, 1);
  auto x = random_vec(cols, 6, -1, 1);
  std::vector<double> ys(rows), yv(rows);
  scalar::gemv(a.data(), cols, x.data(), ys.data(), rows, cols);
  avx2::gemv(a.data(), cols, x.data(), yv.data(), rows, cols);
  for (std::size_t i = 0; i < rows; ++i) CHECK(std::fabs(ys[i] - yv[i]) <= 1e-13);
}

TEST_CASE("vector log is accurate across the exponent range") {
  if (!avx2_available()) return;
  std::vector<double> x = random_vec(4000, 9, 0.0, 1.0);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::ldexp(x[i] + 0.5, int(i % 600) - 300);
  x.push_back(1.0);
  x.push_back(std::sqrt(2.0));
  x.push_back(1e-310);  // subnormal lane goes through libm
  x.push_back(0.0);
  std::vector<double> ref(x.size()), got(x.size());
  scalar::log_batch(x.data(), ref.data(), x.size());
  avx2::log_batch(x.data(), got.data(), x.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (std::isinf(ref[i])) {
      CHECK(got[i] == ref[i]);
      continue;
    }
    double err = std::fabs(got[i] - ref[i]) / std::max(1e-300, std::fabs(ref[i]));
    if (ref[i] == 0.0) err = std::fabs(got[i]);
    worst = std::max(worst, err);
  }
  CHECK(worst < 4e-16);
}
