#pragma once
// Function classes Z (one interval E = [-1,1]) and Z2 (two intervals).
//
//   f(z) = prod_j (A_j - 1/phi_1(z))^{alpha_j} * prod_k (B_k - 1/phi_2(z))^{beta_k}
//
// where phi_I is the inverse Zhukovskii map of interval I with |phi_I| > 1 off I.
// For class Z only the A factor is present and phi_1 = phi.

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

#include <array>
#include <complex>
#include <string>
#include <vector>

namespace sheetlab {

using Rational = boost::rational<int>;
using ExactReal = boost::multiprecision::cpp_rational;

enum class SpecClass { SingleInterval, TwoInterval };

struct ExactComplex {
  ExactReal re;
  ExactReal im;
  bool operator==(const ExactComplex& o) const { return re == o.re && im == o.im; }
  ExactComplex conj() const { return {re, -im}; }
  std::complex<double> to_cd() const;
};

/// Parses "3", "-0.75", "1.5e-3", "1/3" exactly. Throws Error(BadInput).
ExactReal parse_exact(const std::string& text);
/// Exponent literal; must be exactly +1/2 or -1/2.
Rational parse_exponent(const std::string& text);
std::string exact_to_string(const ExactReal& x);

struct Interval {
  ExactReal lo;
  ExactReal hi;
};

/// Unvalidated input bundle (decimal strings as they appear in the spec document).
struct RawSpec {
  std::string class_tag;  // "Z" or "Z2"
  std::vector<std::array<std::string, 2>> A;
  std::vector<std::string> alpha;
  std::vector<std::array<std::string, 2>> B;
  std::vector<std::string> beta;
  std::vector<std::array<std::string, 2>> intervals;
};

struct FunctionSpec {
  SpecClass cls = SpecClass::SingleInterval;
  std::vector<ExactComplex> A;
  std::vector<Rational> alpha;
  std::vector<ExactComplex> B;
  std::vector<Rational> beta;
  Interval delta1{-1, 1};
  Interval delta2{-1, 1};

  int p() const { return static_cast<int>(A.size()) / 2; }
  bool all_real() const;
};

/// Validates every class invariant and reorders so conjugate pairs are adjacent
/// (upper half-plane member first; real values keep their relative order).
FunctionSpec validate_spec(const RawSpec& raw);

struct BranchData {
  std::vector<std::complex<double>> z_branch_points;
  std::vector<std::complex<double>> a;            // images of A_j
  std::vector<std::complex<double>> b;            // images of B_k (two-interval)
  std::vector<std::complex<double>> zeta_images;  // 1/A_j
};

BranchData derived_points(const FunctionSpec& spec);

/// Zhukovskii map of interval I: z = c + r*(A + 1/A)/2 with c, r its centre and half-length.
std::complex<double> zhukovskii(std::complex<double> A, const Interval& I);
/// Inverse Zhukovskii map with |phi| > 1 off I.
std::complex<double> inv_zhukovskii(std::complex<double> z, const Interval& I);

/// Closed-form value of f at z (double precision) with the germ's branch convention.
std::complex<double> evaluate(const FunctionSpec& spec, std::complex<double> z);

}  // namespace sheetlab
