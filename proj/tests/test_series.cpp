#include "doctest.h"

#include "sheetlab/error.hpp"
#include "sheetlab/series.hpp"

#include <boost/math/constants/constants.hpp>

#include <complex>

using namespace sheetlab;

namespace {

FunctionSpec eq1_spec() {
  RawSpec r;
  r.class_tag = "Z";
  r.A = {{"2", "0"}, {"3", "0"}};
  r.alpha = {"-1/2", "-1/2"};
  return validate_spec(r);
}

LaurentGerm from_ints(std::vector<int> v, int bits = 256) {
  LaurentGerm g;
  g.precision_bits = bits;
  for (int x : v) g.coeffs.emplace_back(x);
  return g;
}

// binom(e, m) as an exact rational.
ExactReal binom(ExactReal e, int m) {
  ExactReal r = 1;
  for (int i = 0; i < m; ++i) r = r * (e - i) / (i + 1);
  return r;
}

double rel(const Complex& a, const Complex& b) {
  PrecisionScope s(512);
  Real d = abs(a - b), m = abs(b);
  return (m == 0 ? d : d / m).convert_to<double>();
}

}  // namespace

TEST_CASE("inverse Zhukovskii germ matches the binomial expansion") {
  LaurentGerm g = inv_zhukovskii_germ(5, 256);
  std::vector<double> expect{0, 0.5, 0, 0.125, 0, 0.0625};
  for (int k = 0; k <= 5; ++k) CHECK(g.coeffs[k].re.convert_to<double>() == doctest::Approx(expect[k]).epsilon(1e-15));
  // z - z(1 - z^-2)^{1/2}: coefficient of z^{1-2m} is -binom(1/2, m)(-1)^m.
  LaurentGerm h = inv_zhukovskii_germ(41, 256);
  for (int m = 1; 2 * m - 1 <= 41; ++m) {
    ExactReal c = -binom(ExactReal(1, 2), m) * (m % 2 ? -1 : 1);
    PrecisionScope s(256);
    CHECK(rel(h.coeffs[2 * m - 1], Complex(exact_to_real(c))) < 1e-70);
  }
  LaurentGerm one = inv_zhukovskii_germ(1, 256);
  CHECK(one.coeffs.size() == 2);
  CHECK(one.coeffs[1].re == Real(0.5));
}

TEST_CASE("rescaled interval germ agrees with contour quadrature") {
  LaurentGerm g = inv_zhukovskii_germ(3, Interval{-2, 2}, 256);
  CHECK(g.coeffs[1].re.convert_to<double>() == doctest::Approx(1.0));
  CHECK(g.coeffs[3].re.convert_to<double>() == doctest::Approx(1.0));
  // Off-centre interval against a double-precision trapezoid oracle.
  Interval I{2, 3};
  LaurentGerm h = inv_zhukovskii_germ(8, I, 256);
  const int M = 256;
  const double R = 8.0;
  for (int k = 0; k <= 8; ++k) {
    std::complex<double> acc = 0;
    for (int m = 0; m < M; ++m) {
      std::complex<double> z = std::polar(R, 2 * boost::math::constants::pi<double>() * m / M);
      acc += (1.0 / inv_zhukovskii(z, I)) * std::pow(z, k);
    }
    acc /= M;
    CHECK(std::abs(acc - to_cd(h.coeffs[k])) < 1e-14 * std::pow(R, k));
  }
  CHECK_THROWS_AS(inv_zhukovskii_germ(3, Interval{1, 1}, 256), Error);
}

TEST_CASE("powers and products") {
  LaurentGerm a = from_ints({1, 1, 0, 0, 0});
  LaurentGerm sq = series_pow_mul(a, nullptr, Rational(2));
  CHECK(sq.coeffs[0].re == 1);
  CHECK(sq.coeffs[1].re == 2);
  CHECK(sq.coeffs[2].re == 1);
  CHECK(sq.coeffs[3].re == 0);

  LaurentGerm r = series_pow_mul(a, nullptr, Rational(1, 2));
  for (int m = 0; m < 5; ++m) {
    PrecisionScope s(256);
    CHECK(rel(r.coeffs[m], Complex(exact_to_real(binom(ExactReal(1, 2), m)))) < 1e-70);
  }
  LaurentGerm id = series_pow_mul(from_ints({1, 0, 0, 0}), nullptr, Rational(-1, 2));
  CHECK(id.coeffs[0].re == 1);
  CHECK(id.coeffs[2].re == 0);
  CHECK_THROWS_AS(series_pow_mul(from_ints({0, 1, 0}), nullptr, Rational(1, 2)), Error);
}

TEST_CASE("germ of the inverse square root: constant and first coefficient") {
  GermFamily fam = germ_of_family(eq1_spec(), 16, 256);
  PrecisionScope s(256);
  Real c0 = 1 / boost::multiprecision::sqrt(Real(6));
  Real c1 = Real(5) / (24 * boost::multiprecision::sqrt(Real(6)));
  CHECK(rel(fam.f.coeffs[0], Complex(c0)) < 1e-70);
  CHECK(rel(fam.f.coeffs[1], Complex(c1)) < 1e-70);
  CHECK(fam.f.imag_ratio() == 0.0);
}

TEST_CASE("germ and contour oracle agree") {
  FunctionSpec spec = eq1_spec();
  GermFamily fam = germ_of_family(spec, 16, 256);
  LaurentGerm orc = oracle_coeffs(spec, 16, 10.0, 256, 256);
  for (int k = 0; k <= 16; ++k) CHECK(rel(orc.coeffs[k], fam.f.coeffs[k]) < std::pow(2.0, -128));
  LaurentGerm mean = oracle_coeffs(spec, 0, 10.0, 64, 256);
  CHECK(rel(mean.coeffs[0], fam.f.coeffs[0]) < 1e-40);
  CHECK_THROWS_AS(oracle_coeffs(spec, 16, 1.5, 256, 256), Error);
}

TEST_CASE("germ algebra identities") {
  RawSpec r;
  r.class_tag = "Z";
  r.A = {{"1.5", "2"}, {"1.5", "-2"}, {"-3", "0"}, {"4", "0"}};
  r.alpha = {"1/2", "1/2", "-1/2", "1/2"};
  FunctionSpec spec = validate_spec(r);
  GermFamily fam = germ_of_family(spec, 24, 256);
  LaurentGerm inv = series_pow_mul(fam.f, nullptr, Rational(-1));
  LaurentGerm id = series_mul(fam.f, inv);
  CHECK(rel(id.coeffs[0], Complex(1)) < 1e-70);
  for (int k = 1; k <= 24; ++k) CHECK(abs(id.coeffs[k]).convert_to<double>() < 1e-70);
  LaurentGerm self = series_mul(fam.f, fam.f);
  for (int k = 0; k <= 24; ++k) CHECK(abs(self.coeffs[k] - fam.f2.coeffs[k]).convert_to<double>() == 0.0);
  LaurentGerm orc = oracle_coeffs(spec, 24, 12.0, 512, 256);
  for (int k = 0; k <= 24; ++k) CHECK(rel(orc.coeffs[k], fam.f.coeffs[k]) < std::pow(2.0, -128));
}

TEST_CASE("default precision heuristic") {
  CHECK(default_precision_bits(1) == 256);
  CHECK(default_precision_bits(64) == 2127);
}
