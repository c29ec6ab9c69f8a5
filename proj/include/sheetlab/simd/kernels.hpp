#pragma once
// Double-precision data-parallel kernels used by the discretized potential
// solvers. Each entry point dispatches at runtime to an AVX2/FMA variant when
// the CPU supports it and to the scalar reference otherwise. Both variants are
// compiled unconditionally so tests can compare them on the same machine.

#include <cstddef>

namespace sheetlab::simd {

enum class Isa { Scalar, Avx2 };

/// Isa chosen by the dispatcher on this machine (honours force_isa).
Isa active_isa();
bool avx2_available();
/// Override dispatch; Avx2 is ignored when the CPU lacks it. Not thread-safe.
void force_isa(Isa isa);
void reset_isa();
const char* isa_name(Isa isa);

double dot(const double* x, const double* y, std::size_t n);
/// y += a * x
void axpy(double a, const double* x, double* y, std::size_t n);
/// y = A x with A row-major n_rows x n_cols, row stride ld.
void gemv(const double* a, std::size_t ld, const double* x, double* y, std::size_t n_rows,
          std::size_t n_cols);
/// out[i] = log(x[i]) for finite positive x; relative error below 4e-16.
void log_batch(const double* x, double* out, std::size_t n);

namespace scalar {
double dot(const double* x, const double* y, std::size_t n);
void axpy(double a, const double* x, double* y, std::size_t n);
void gemv(const double* a, std::size_t ld, const double* x, double* y, std::size_t n_rows,
          std::size_t n_cols);
void log_batch(const double* x, double* out, std::size_t n);
}  // namespace scalar

namespace avx2 {
double dot(const double* x, const double* y, std::size_t n);
void axpy(double a, const double* x, double* y, std::size_t n);
void gemv(const double* a, std::size_t ld, const double* x, double* y, std::size_t n_rows,
          std::size_t n_cols);
void log_batch(const double* x, double* out, std::size_t n);
}  // namespace avx2

}  // namespace sheetlab::simd
