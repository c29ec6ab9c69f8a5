#pragma once
// Truncated Laurent series at infinity: sum_{k=0}^{N} c_k z^{-k}.

#include "sheetlab/ap.hpp"
#include "sheetlab/funcspec.hpp"

#include <array>
#include <optional>
#include <vector>

namespace sheetlab {

struct LaurentGerm {
  std::vector<Complex> coeffs;
  int precision_bits = 256;

  int order() const { return static_cast<int>(coeffs.size()) - 1; }
  /// max |Im c_k| relative to max |c_k|.
  double imag_ratio() const;
};

/// precision_bits = max(256, ceil(10 * N * log2(10))).
int default_precision_bits(int N);

/// Germ of 1/phi_I(z) to O(z^{-N-1}); interval defaults to [-1,1].
LaurentGerm inv_zhukovskii_germ(int N, const Interval& interval, int precision_bits);
LaurentGerm inv_zhukovskii_germ(int N, int precision_bits);

/// a^e * b (b defaults to the unit germ). Half-integer e requires a nonzero constant term;
/// the square root branch takes the principal root of a's constant term.
LaurentGerm series_pow_mul(const LaurentGerm& a, const LaurentGerm* b, Rational e);
LaurentGerm series_mul(const LaurentGerm& a, const LaurentGerm& b);

struct GermFamily {
  LaurentGerm f, f2, f3;
};

GermFamily germ_of_family(const FunctionSpec& spec, int N, int precision_bits);

/// Independent oracle: trapezoid rule for the Laurent coefficients on |z| = R using the
/// closed form of f evaluated at every node.
LaurentGerm oracle_coeffs(const FunctionSpec& spec, int N, double R, int M, int precision_bits);

/// Closed-form f at an arbitrary-precision point, same branch as the germ.
/// log2 of the largest coefficient-wise relative difference. Coefficients that
/// vanish exactly are measured against 2^(-bits/2) times the largest coefficient
/// up to their index. Returns -infinity for identical germs.
double log2_max_relative_difference(const LaurentGerm& computed, const LaurentGerm& reference);

Complex evaluate_ap(const FunctionSpec& spec, const Complex& z);

Real exact_to_real(const ExactReal& x);

}  // namespace sheetlab
