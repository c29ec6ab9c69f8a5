#include "sheetlab/series.hpp"

#include "sheetlab/error.hpp"

#include <boost/math/constants/constants.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace sheetlab {

namespace {

constexpr const char* kModule = "series";

LaurentGerm zeros(std::size_t len, int bits) {
  LaurentGerm g;
  g.precision_bits = bits;
  g.coeffs.assign(len, Complex());
  return g;
}

// Truncated product of the first `len` coefficients.
std::vector<Complex> mul_trunc(const std::vector<Complex>& a, const std::vector<Complex>& b,
                               std::size_t len) {
  std::vector<Complex> c(len);
  for (std::size_t i = 0; i < len && i < a.size(); ++i) {
    if (a[i].re == 0 && a[i].im == 0) continue;
    for (std::size_t j = 0; i + j < len && j < b.size(); ++j) c[i + j] += a[i] * b[j];
  }
  return c;
}

// 1/a by Newton iteration g <- g (2 - a g), doubling the valid length each step.
std::vector<Complex> inverse(const std::vector<Complex>& a, std::size_t len) {
  std::vector<Complex> g{reciprocal(a[0])};
  std::size_t have = 1;
  while (have < len) {
    have = std::min(len, 2 * have);
    g.resize(have);
    std::vector<Complex> ag = mul_trunc(a, g, have);
    for (auto& x : ag) x = -x;
    ag[0] += Complex(2);
    g = mul_trunc(g, ag, have);
  }
  return g;
}

// a^{-1/2} by Newton iteration g <- g (3 - a g^2) / 2, seeded by the principal root.
std::vector<Complex> inv_sqrt(const std::vector<Complex>& a, std::size_t len) {
  std::vector<Complex> g{reciprocal(sqrt(a[0]))};
  std::size_t have = 1;
  while (have < len) {
    have = std::min(len, 2 * have);
    g.resize(have);
    std::vector<Complex> t = mul_trunc(a, mul_trunc(g, g, have), have);
    for (auto& x : t) x = -x;
    t[0] += Complex(3);
    g = mul_trunc(g, t, have);
    for (auto& x : g) x = x / Real(2);
  }
  return g;
}

std::vector<Complex> int_pow(const std::vector<Complex>& a, int e, std::size_t len) {
  std::vector<Complex> result(len);
  result[0] = Complex(1);
  if (e == 0) return result;
  std::vector<Complex> base = e > 0 ? a : inverse(a, len);
  base.resize(len);
  unsigned k = static_cast<unsigned>(e > 0 ? e : -e);
  while (k) {
    if (k & 1u) result = mul_trunc(result, base, len);
    k >>= 1u;
    if (k) base = mul_trunc(base, base, len);
  }
  return result;
}

Complex to_complex(const ExactComplex& c) { return {exact_to_real(c.re), exact_to_real(c.im)}; }

// (A - s)^e as a germ, s = 1/phi_I.
LaurentGerm factor_germ(const Complex& A, const LaurentGerm& s, Rational e) {
  LaurentGerm base = s;
  for (auto& c : base.coeffs) c = -c;
  base.coeffs[0] += A;
  return series_pow_mul(base, nullptr, e);
}

}  // namespace

Real exact_to_real(const ExactReal& x) {
  Real n(boost::multiprecision::numerator(x).str());
  Real d(boost::multiprecision::denominator(x).str());
  return n / d;
}

double LaurentGerm::imag_ratio() const {
  double mx = 0.0, mi = 0.0;
  for (const auto& c : coeffs) {
    mx = std::max(mx, abs(c).convert_to<double>());
    mi = std::max(mi, std::fabs(c.im.convert_to<double>()));
  }
  return mx == 0.0 ? 0.0 : mi / mx;
}

int default_precision_bits(int N) {
  return std::max(256, static_cast<int>(std::ceil(10.0 * N * std::log2(10.0))));
}

LaurentGerm inv_zhukovskii_germ(int N, const Interval& interval, int precision_bits) {
  if (N < 1) throw Error(ErrorCode::BadInput, kModule, "N must be >= 1");
  if (interval.lo == interval.hi) throw Error(ErrorCode::DegenerateInterval, kModule, "e_low == e_high");
  if (interval.lo > interval.hi) throw Error(ErrorCode::BadIntervalOrder, kModule, "e_low > e_high");
  PrecisionScope scope(precision_bits);
  // 1/phi_I(z) = (z - c - z S(w)) / r with S(w) = sqrt((1 - e1 w)(1 - e2 w)), w = 1/z.
  const std::size_t len = static_cast<std::size_t>(N) + 2;
  Real e1 = exact_to_real(interval.lo), e2 = exact_to_real(interval.hi);
  Real c = (e1 + e2) / 2, r = (e2 - e1) / 2;
  std::vector<Complex> q(len);
  q[0] = Complex(1);
  q[1] = Complex(Real(-(e1 + e2)));
  if (len > 2) q[2] = Complex(Real(e1 * e2));
  std::vector<Complex> g = inv_sqrt(q, len);
  std::vector<Complex> S = mul_trunc(q, g, len);
  LaurentGerm out = zeros(static_cast<std::size_t>(N) + 1, precision_bits);
  // The constant term -(S_1 + c)/r vanishes identically since S_1 = -c.
  for (int j = 1; j <= N; ++j) out.coeffs[j] = -S[j + 1] / r;
  return out;
}

LaurentGerm inv_zhukovskii_germ(int N, int precision_bits) {
  return inv_zhukovskii_germ(N, Interval{-1, 1}, precision_bits);
}

LaurentGerm series_mul(const LaurentGerm& a, const LaurentGerm& b) {
  int bits = std::max(a.precision_bits, b.precision_bits);
  PrecisionScope scope(bits);
  std::size_t len = std::min(a.coeffs.size(), b.coeffs.size());
  LaurentGerm out;
  out.precision_bits = bits;
  std::vector<Complex> ac(a.coeffs.begin(), a.coeffs.begin() + len);
  std::vector<Complex> bc(b.coeffs.begin(), b.coeffs.begin() + len);
  set_precision_all(ac, bits);
  set_precision_all(bc, bits);
  out.coeffs = mul_trunc(ac, bc, len);
  return out;
}

LaurentGerm series_pow_mul(const LaurentGerm& a, const LaurentGerm* b, Rational e) {
  if (a.coeffs.empty()) throw Error(ErrorCode::BadInput, kModule, "empty germ");
  if (e.denominator() != 1 && e.denominator() != 2)
    throw Error(ErrorCode::BadInput, kModule, "exponent must be an integer or half-integer");
  int bits = std::max(a.precision_bits, b ? b->precision_bits : 0);
  PrecisionScope scope(bits);
  std::size_t len = a.coeffs.size();
  if (b) len = std::min(len, b->coeffs.size());
  const bool zero_c0 = a.coeffs[0].re == 0 && a.coeffs[0].im == 0;
  if (zero_c0 && (e.denominator() == 2 || e.numerator() < 0))
    throw Error(ErrorCode::ZeroConstantTerm, kModule,
                e.denominator() == 2 ? "fractional power" : "negative power");

  std::vector<Complex> ac(a.coeffs.begin(), a.coeffs.begin() + len);
  set_precision_all(ac, bits);
  std::vector<Complex> res;
  if (e.denominator() == 1) {
    res = int_pow(ac, e.numerator(), len);
  } else {
    std::vector<Complex> g = inv_sqrt(ac, len);  // a^{-1/2}
    // a^{m/2} = a^{(m+1)/2} * a^{-1/2}, m odd.
    int whole = (e.numerator() + 1) / 2;
    res = mul_trunc(int_pow(ac, whole, len), g, len);
  }
  if (b) {
    std::vector<Complex> bc(b->coeffs.begin(), b->coeffs.begin() + len);
    set_precision_all(bc, bits);
    res = mul_trunc(res, bc, len);
  }
  LaurentGerm out;
  out.precision_bits = bits;
  out.coeffs = std::move(res);
  return out;
}

GermFamily germ_of_family(const FunctionSpec& spec, int N, int precision_bits) {
  if (N < 1) throw Error(ErrorCode::BadInput, kModule, "N must be >= 1");
  PrecisionScope scope(precision_bits);
  LaurentGerm s1 = inv_zhukovskii_germ(N, spec.delta1, precision_bits);
  LaurentGerm f = zeros(static_cast<std::size_t>(N) + 1, precision_bits);
  f.coeffs[0] = Complex(1);
  for (std::size_t j = 0; j < spec.A.size(); ++j) {
    LaurentGerm fac = factor_germ(to_complex(spec.A[j]), s1, spec.alpha[j]);
    f = series_mul(f, fac);
  }
  if (!spec.B.empty()) {
    LaurentGerm s2 = inv_zhukovskii_germ(N, spec.delta2, precision_bits);
    for (std::size_t k = 0; k < spec.B.size(); ++k) {
      LaurentGerm fac = factor_germ(to_complex(spec.B[k]), s2, spec.beta[k]);
      f = series_mul(f, fac);
    }
  }
  GermFamily fam;
  fam.f2 = series_pow_mul(f, nullptr, Rational(2));
  fam.f3 = series_mul(fam.f2, f);
  fam.f = std::move(f);
  return fam;
}

Complex evaluate_ap(const FunctionSpec& spec, const Complex& z) {
  auto inv_phi = [&](const Interval& I) {
    Real e1 = exact_to_real(I.lo), e2 = exact_to_real(I.hi);
    Real c = (e1 + e2) / 2, r = (e2 - e1) / 2;
    Complex root = sqrt(z - Complex(e1)) * sqrt(z - Complex(e2));
    Complex s = (z - Complex(c) - root) / r;
    if (norm(s) >= 1)
      throw Error(ErrorCode::BranchInconsistency, kModule, "|phi(z)| <= 1 at a contour node");
    return s;
  };
  auto factor = [](const Complex& A, Rational e, const Complex& s) {
    Complex v = sqrt(A) * sqrt(Complex(1) - s / A);
    return e > 0 ? v : reciprocal(v);
  };
  Complex f(1);
  Complex s1 = inv_phi(spec.delta1);
  for (std::size_t j = 0; j < spec.A.size(); ++j) f *= factor(to_complex(spec.A[j]), spec.alpha[j], s1);
  if (!spec.B.empty()) {
    Complex s2 = inv_phi(spec.delta2);
    for (std::size_t k = 0; k < spec.B.size(); ++k) f *= factor(to_complex(spec.B[k]), spec.beta[k], s2);
  }
  return f;
}

double log2_max_relative_difference(const LaurentGerm& computed, const LaurentGerm& reference) {
  const int bits = std::min(computed.precision_bits, reference.precision_bits);
  PrecisionScope scope(bits);
  const std::size_t n = std::min(computed.coeffs.size(), reference.coeffs.size());
  const Real floor_factor = boost::multiprecision::pow(Real(2), -bits / 2);
  Real running(0), worst(0);
  for (std::size_t k = 0; k < n; ++k) {
    const Real m = abs(reference.coeffs[k]);
    running = std::max(running, m);
    const Real scale = std::max(m, floor_factor * running);
    const Real d = abs(computed.coeffs[k] - reference.coeffs[k]);
    const Real e = scale > 0 ? Real(d / scale) : d;
    if (e > worst) worst = e;
  }
  if (worst == 0) return -std::numeric_limits<double>::infinity();
  return Real(log2(worst)).convert_to<double>();
}

LaurentGerm oracle_coeffs(const FunctionSpec& spec, int N, double R, int M, int precision_bits) {
  if (N < 0) throw Error(ErrorCode::BadInput, kModule, "N must be >= 0");
  if (M <= 2 * N) throw Error(ErrorCode::BadInput, kModule, "need M > 2N quadrature nodes");
  BranchData bd = derived_points(spec);
  double rho = 0.0;
  for (auto b : bd.z_branch_points) rho = std::max(rho, std::abs(b));
  if (!(R > rho))
    throw Error(ErrorCode::RadiusTooSmall, kModule,
                "R must exceed max |branch point| = " + std::to_string(rho));
  PrecisionScope scope(precision_bits);
  Real Rr(R);
  const Real two_pi = boost::math::constants::two_pi<Real>();
  LaurentGerm out = zeros(static_cast<std::size_t>(N) + 1, precision_bits);
  for (int m = 0; m < M; ++m) {
    Complex u = exp_i(two_pi * m / M);  // node direction
    Complex fz = evaluate_ap(spec, u * Rr);
    // c_k = mean of f(z) z^k
    Complex zk(1);
    Complex z = u * Rr;
    for (int k = 0; k <= N; ++k) {
      out.coeffs[k] += fz * zk;
      zk *= z;
    }
  }
  for (auto& c : out.coeffs) c = c / Real(M);
  return out;
}

}  // namespace sheetlab
