#include "doctest.h"

#include "sheetlab/error.hpp"
#include "sheetlab/funcspec.hpp"

using namespace sheetlab;

namespace {

RawSpec single(std::vector<std::array<std::string, 2>> A, std::vector<std::string> alpha) {
  RawSpec r;
  r.class_tag = "Z";
  r.A = std::move(A);
  r.alpha = std::move(alpha);
  return r;
}

ErrorCode code_of(const RawSpec& r) {
  try {
    validate_spec(r);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::BadInput;
}

}  // namespace

TEST_CASE("exact decimal parsing") {
  CHECK(parse_exact("0.75") == ExactReal(3, 4));
  CHECK(parse_exact("-1.5e-1") == ExactReal(-3, 20));
  CHECK(parse_exact("1/3") == ExactReal(1, 3));
  CHECK(parse_exact(" 2 ") == ExactReal(2));
  CHECK_THROWS_AS(parse_exact("abc"), Error);
  CHECK(parse_exponent("-0.5") == Rational(-1, 2));
  CHECK_THROWS_AS(parse_exponent("1"), Error);
}

TEST_CASE("valid single-interval specs") {
  FunctionSpec s = validate_spec(single({{"2", "0"}, {"3", "0"}}, {"-1/2", "-1/2"}));
  CHECK(s.p() == 1);
  CHECK(s.all_real());
  CHECK_NOTHROW(validate_spec(single({{"2", "0"}, {"3", "0"}}, {"1/2", "-1/2"})));
}

TEST_CASE("invariant violations are named") {
  CHECK(code_of(single({{"2", "1"}, {"3", "0"}}, {"1/2", "-1/2"})) == ErrorCode::NotConjugateSymmetric);
  CHECK(code_of(single({{"0.5", "0"}, {"3", "0"}}, {"1/2", "-1/2"})) == ErrorCode::ModulusTooSmall);
  CHECK(code_of(single({{"1", "0"}, {"3", "0"}}, {"1/2", "-1/2"})) == ErrorCode::ModulusTooSmall);
  CHECK(code_of(single({{"2", "0"}, {"2", "0"}}, {"1/2", "-1/2"})) == ErrorCode::DuplicateBranchParameter);
  CHECK(code_of(single({{"2", "0"}, {"3", "0"}, {"4", "0"}}, {"1/2", "1/2", "1/2"})) == ErrorCode::BadCount);
  CHECK(code_of(single({{"2", "0"}, {"3", "0"}}, {"1/2", "1/2", "1/2"})) == ErrorCode::BadCount);
  CHECK(code_of(single({{"2", "0"}, {"3", "0"}}, {"1", "-1/2"})) == ErrorCode::BadInput);
}

TEST_CASE("half-integer exponent sum is rejected") {
  RawSpec r = single({{"2", "0"}, {"3", "0"}, {"4", "0"}, {"5", "0"}}, {"1/2", "1/2", "1/2", "-1/2"});
  // Four values, sum 1: valid.
  CHECK_NOTHROW(validate_spec(r));
  RawSpec t;
  t.class_tag = "Z2";
  t.A = {{"0", "3"}, {"0", "-3"}};
  t.alpha = {"1/2", "1/2"};
  t.B = {{"0", "3"}, {"0", "-3"}};
  t.beta = {"-1/2", "-1/2"};
  t.intervals = {{"-3", "-2"}, {"2", "3"}};
  CHECK_NOTHROW(validate_spec(t));
  t.intervals = {{"2", "3"}, {"-3", "-2"}};
  CHECK(code_of(t) == ErrorCode::BadIntervalOrder);
  t.intervals = {{"-3", "-2"}, {"2", "3"}};
  t.A = {{"2", "0"}, {"3", "0"}};
  CHECK(code_of(t) == ErrorCode::NonRealRequired);
}

TEST_CASE("conjugate pairs are placed adjacent") {
  RawSpec r = single({{"0", "-2"}, {"3", "0"}, {"0", "2"}, {"4", "0"}}, {"1/2", "1/2", "1/2", "1/2"});
  FunctionSpec s = validate_spec(r);
  REQUIRE(s.A.size() == 4);
  CHECK(s.A[0] == ExactComplex{0, 2});
  CHECK(s.A[1] == ExactComplex{0, -2});
  CHECK(s.A[2] == ExactComplex{3, 0});
  CHECK(s.A[3] == ExactComplex{4, 0});
}

TEST_CASE("derived points") {
  BranchData b = derived_points(validate_spec(single({{"2", "0"}, {"3", "0"}}, {"-1/2", "-1/2"})));
  CHECK(b.a[0].real() == doctest::Approx(1.25));
  CHECK(b.a[1].real() == doctest::Approx(5.0 / 3.0));
  CHECK(b.zeta_images[0].real() == doctest::Approx(0.5));
  CHECK(b.zeta_images[1].real() == doctest::Approx(1.0 / 3.0));

  BranchData c = derived_points(validate_spec(single({{"0", "2"}, {"0", "-2"}}, {"1/2", "1/2"})));
  CHECK(std::abs(c.a[0] - std::complex<double>(0, 0.75)) < 1e-15);
  CHECK(std::abs(c.a[1] - std::complex<double>(0, -0.75)) < 1e-15);
}

TEST_CASE("derived points commute with conjugation") {
  FunctionSpec s = validate_spec(single({{"1.5", "2"}, {"1.5", "-2"}}, {"1/2", "1/2"}));
  BranchData b = derived_points(s);
  CHECK(std::abs(b.a[0] - std::conj(b.a[1])) < 1e-15);
  CHECK(std::abs(b.zeta_images[0] - std::conj(b.zeta_images[1])) < 1e-15);
  CHECK(std::abs(zhukovskii(inv_zhukovskii({0.3, 1.7}, Interval{-1, 1}), Interval{-1, 1}) -
                 std::complex<double>(0.3, 1.7)) < 1e-14);
}
