#include "sheetlab/ap.hpp"

#include <cmath>
#include <sstream>

namespace sheetlab {

unsigned digits10_for_bits(int bits) {
  if (bits < kMinPrecisionBits) bits = kMinPrecisionBits;
  return static_cast<unsigned>(std::ceil(bits * 0.30102999566398120)) + 2;
}

PrecisionScope::PrecisionScope(int bits) : saved_(Real::default_precision()) {
  Real::default_precision(digits10_for_bits(bits));
}

PrecisionScope::~PrecisionScope() { Real::default_precision(saved_); }

int precision_bits_of(const Real& x) {
  return static_cast<int>(mpfr_get_prec(x.backend().data()));
}

void set_precision(Real& x, int bits) {
  const unsigned d = digits10_for_bits(bits);
  if (x.precision() != d) x.precision(d);
}

Complex& Complex::operator/=(const Complex& o) {
  // Smith's algorithm is unnecessary at these precisions; exponent range is huge.
  Real d = o.re * o.re + o.im * o.im;
  Real r = (re * o.re + im * o.im) / d;
  im = (im * o.re - re * o.im) / d;
  re = std::move(r);
  return *this;
}

Real abs(const Complex& a) { return boost::multiprecision::sqrt(norm(a)); }

Complex sqrt(const Complex& a) {
  using boost::multiprecision::sqrt;
  if (a.im == 0) {
    if (a.re >= 0) return {sqrt(a.re), Real(0)};
    return {Real(0), sqrt(-a.re)};
  }
  Real m = abs(a);
  if (a.re >= 0) {
    Real t = sqrt((m + a.re) / 2);
    return {t, a.im / (2 * t)};
  }
  Real t = sqrt((m - a.re) / 2);
  Real r = boost::multiprecision::abs(a.im) / (2 * t);
  return {r, a.im < 0 ? Real(-t) : t};
}

Complex exp_i(const Real& theta) {
  return {boost::multiprecision::cos(theta), boost::multiprecision::sin(theta)};
}

Complex reciprocal(const Complex& a) {
  Real d = norm(a);
  return {a.re / d, -a.im / d};
}

std::complex<double> to_cd(const Complex& a) {
  return {a.re.convert_to<double>(), a.im.convert_to<double>()};
}

Complex from_cd(std::complex<double> z) { return {Real(z.real()), Real(z.imag())}; }

std::string to_decimal(const Real& x, int digits) {
  std::ostringstream os;
  os.precision(digits);
  os << std::scientific << x;
  return os.str();
}

}  // namespace sheetlab
