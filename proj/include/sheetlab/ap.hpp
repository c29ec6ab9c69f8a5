#pragma once

// Arbitrary-precision scalars. Real is MPFR-backed with a per-thread default
// precision; every computation that creates new values runs under a
// PrecisionScope so that the result precision is explicit.

#include <boost/multiprecision/mpfr.hpp>

#include <complex>
#include <string>
#include <vector>

namespace sheetlab {

using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                           boost::multiprecision::et_off>;

inline constexpr int kMinPrecisionBits = 64;

/// Decimal digits that give at least `bits` binary digits in the MPFR backend.
unsigned digits10_for_bits(int bits);

/// Sets the default Real precision for the lifetime of the scope.
class PrecisionScope {
 public:
  explicit PrecisionScope(int bits);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned saved_;
};

int precision_bits_of(const Real& x);

// Arithmetic results carry the larger operand precision and assignment copies the
// source precision, so inputs are raised to the working precision at module entry.
void set_precision(Real& x, int bits);

struct Complex {
  Real re;
  Real im;

  Complex() : re(0), im(0) {}
  Complex(Real r) : re(std::move(r)), im(0) {}  // NOLINT(google-explicit-constructor)
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
  Complex(int r) : re(r), im(0) {}  // NOLINT(google-explicit-constructor)

  Complex& operator+=(const Complex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Complex& operator-=(const Complex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  Complex& operator*=(const Complex& o) {
    Real r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(r);
    return *this;
  }
  Complex& operator/=(const Complex& o);
};

inline Complex operator+(Complex a, const Complex& b) { return a += b; }
inline Complex operator-(Complex a, const Complex& b) { return a -= b; }
inline Complex operator*(Complex a, const Complex& b) { return a *= b; }
inline Complex operator/(Complex a, const Complex& b) { return a /= b; }
inline Complex operator-(const Complex& a) { return {-a.re, -a.im}; }
inline Complex operator*(const Complex& a, const Real& s) { return {a.re * s, a.im * s}; }
inline Complex operator/(const Complex& a, const Real& s) { return {a.re / s, a.im / s}; }

inline void set_precision(Complex& a, int bits) {
  set_precision(a.re, bits);
  set_precision(a.im, bits);
}
template <class Range>
void set_precision_all(Range& r, int bits) {
  for (auto& x : r) set_precision(x, bits);
}

inline Complex conj(const Complex& a) { return {a.re, -a.im}; }
inline Real norm(const Complex& a) { return a.re * a.re + a.im * a.im; }
Real abs(const Complex& a);
/// Principal square root (branch cut on the negative real axis, arg in (-pi/2, pi/2]).
Complex sqrt(const Complex& a);
Complex exp_i(const Real& theta);
Complex reciprocal(const Complex& a);

std::complex<double> to_cd(const Complex& a);
Complex from_cd(std::complex<double> z);

/// Decimal string with `digits` significant digits (scientific notation).
std::string to_decimal(const Real& x, int digits);

}  // namespace sheetlab
