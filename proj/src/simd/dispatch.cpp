#include "sheetlab/simd/kernels.hpp"

namespace sheetlab::simd {

namespace {

bool detect_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa& current() {
  static Isa isa = detect_avx2() ? Isa::Avx2 : Isa::Scalar;
  return isa;
}

}  // namespace

bool avx2_available() {
  static const bool ok = detect_avx2();
  return ok;
}

Isa active_isa() { return current(); }

void force_isa(Isa isa) { current() = (isa == Isa::Avx2 && !avx2_available()) ? Isa::Scalar : isa; }

void reset_isa() { current() = avx2_available() ? Isa::Avx2 : Isa::Scalar; }

const char* isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

double dot(const double* x, const double* y, std::size_t n) {
  return current() == Isa::Avx2 ? avx2::dot(x, y, n) : scalar::dot(x, y, n);
}

void axpy(double a, const double* x, double* y, std::size_t n) {
  if (current() == Isa::Avx2)
    avx2::axpy(a, x, y, n);
  else
    scalar::axpy(a, x, y, n);
}

void gemv(const double* a, std::size_t ld, const double* x, double* y, std::size_t n_rows,
          std::size_t n_cols) {
  if (current() == Isa::Avx2)
    avx2::gemv(a, ld, x, y, n_rows, n_cols);
  else
    scalar::gemv(a, ld, x, y, n_rows, n_cols);
}

void log_batch(const double* x, double* out, std::size_t n) {
  if (current() == Isa::Avx2)
    avx2::log_batch(x, out, n);
  else
    scalar::log_batch(x, out, n);
}

}  // namespace sheetlab::simd
