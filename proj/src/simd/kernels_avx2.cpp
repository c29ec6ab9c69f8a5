// Compiled with -mavx2 -mfma; only reached through the dispatcher after a CPUID check.
#include "sheetlab/simd/kernels.hpp"

#include <immintrin.h>

#include <cmath>
#include <cstdint>

namespace sheetlab::simd::avx2 {

namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d sh = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

// log(x) = e*ln2 + 2*atanh(s), s = (m-1)/(m+1), m in [sqrt(1/2), sqrt(2)).
// |s| < 0.1716 so the odd series to s^23 is below half an ulp.
inline __m256d log4(__m256d x) {
  const __m256i bits = _mm256_castpd_si256(x);
  const __m256i exp_mask = _mm256_set1_epi64x(0x7ff0000000000000LL);
  const __m256i mant_mask = _mm256_set1_epi64x(0x000fffffffffffffLL);
  const __m256i one_bits = _mm256_set1_epi64x(0x3ff0000000000000LL);

  __m256i e_raw = _mm256_srli_epi64(_mm256_and_si256(bits, exp_mask), 52);
  __m256d m = _mm256_castsi256_pd(_mm256_or_si256(_mm256_and_si256(bits, mant_mask), one_bits));

  // Fold m into [sqrt(1/2), sqrt(2)).
  const __m256d sqrt2 = _mm256_set1_pd(1.4142135623730951);
  __m256d big = _mm256_cmp_pd(m, sqrt2, _CMP_GE_OQ);
  m = _mm256_blendv_pd(m, _mm256_mul_pd(m, _mm256_set1_pd(0.5)), big);
  __m256i bump = _mm256_and_si256(_mm256_castpd_si256(big), _mm256_set1_epi64x(1));
  e_raw = _mm256_add_epi64(e_raw, bump);

  // int64 -> double for small values: add magic then subtract.
  const __m256d magic = _mm256_set1_pd(4503599627370496.0);  // 2^52
  __m256d e = _mm256_sub_pd(
      _mm256_castsi256_pd(_mm256_or_si256(e_raw, _mm256_castpd_si256(magic))), magic);
  e = _mm256_sub_pd(e, _mm256_set1_pd(1023.0));

  const __m256d one = _mm256_set1_pd(1.0);
  __m256d s = _mm256_div_pd(_mm256_sub_pd(m, one), _mm256_add_pd(m, one));
  __m256d s2 = _mm256_mul_pd(s, s);

  static constexpr double c[] = {1.0 / 23, 1.0 / 21, 1.0 / 19, 1.0 / 17, 1.0 / 15, 1.0 / 13,
                                 1.0 / 11, 1.0 / 9,  1.0 / 7,  1.0 / 5,  1.0 / 3,  1.0};
  __m256d p = _mm256_set1_pd(c[0]);
  for (int i = 1; i < 12; ++i) p = _mm256_fmadd_pd(p, s2, _mm256_set1_pd(c[i]));
  __m256d lm = _mm256_mul_pd(_mm256_mul_pd(_mm256_set1_pd(2.0), s), p);

  const __m256d ln2_hi = _mm256_set1_pd(6.93147180369123816490e-01);
  const __m256d ln2_lo = _mm256_set1_pd(1.90821492927058770002e-10);
  __m256d r = _mm256_fmadd_pd(e, ln2_lo, lm);
  return _mm256_fmadd_pd(e, ln2_hi, r);
}

}  // namespace

double dot(const double* x, const double* y, std::size_t n) {
  __m256d a0 = _mm256_setzero_pd();
  __m256d a1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    a0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), a0);
    a1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4), a1);
  }
  for (; i + 4 <= n; i += 4)
    a0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), a0);
  double s = hsum(_mm256_add_pd(a0, a1));
  for (; i < n; ++i) s += x[i] * y[i];
  return s;
}

void axpy(double a, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  for (; i < n; ++i) y[i] += a * x[i];
}

void gemv(const double* a, std::size_t ld, const double* x, double* y, std::size_t n_rows,
          std::size_t n_cols) {
  for (std::size_t r = 0; r < n_rows; ++r) y[r] = dot(a + r * ld, x, n_cols);
}

void log_batch(const double* x, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d v = _mm256_loadu_pd(x + i);
    // Subnormal, zero, negative and non-finite lanes go through libm.
    __m256d ok = _mm256_and_pd(_mm256_cmp_pd(v, _mm256_set1_pd(2.2250738585072014e-308), _CMP_GE_OQ),
                               _mm256_cmp_pd(v, _mm256_set1_pd(1.7976931348623157e308), _CMP_LE_OQ));
    _mm256_storeu_pd(out + i, log4(v));
    if (_mm256_movemask_pd(ok) != 0xF) {
      for (std::size_t j = i; j < i + 4; ++j)
        if (!(x[j] >= 2.2250738585072014e-308 && x[j] <= 1.7976931348623157e308))
          out[j] = std::log(x[j]);
    }
  }
  for (; i < n; ++i) out[i] = std::log(x[i]);
}

}  // namespace sheetlab::simd::avx2
