#include "sheetlab/simd/kernels.hpp"

#include <cmath>

namespace sheetlab::simd::scalar {

double dot(const double* x, const double* y, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
  return s;
}

void axpy(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void gemv(const double* a, std::size_t ld, const double* x, double* y, std::size_t n_rows,
          std::size_t n_cols) {
  for (std::size_t r = 0; r < n_rows; ++r) y[r] = dot(a + r * ld, x, n_cols);
}

void log_batch(const double* x, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = std::log(x[i]);
}

}  // namespace sheetlab::simd::scalar
