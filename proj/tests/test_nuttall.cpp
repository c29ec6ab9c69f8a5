#include "doctest.h"

#include "sheetlab/error.hpp"
#include "sheetlab/nuttall.hpp"

#include <cmath>

using namespace sheetlab;

namespace {

cd phi(cd z) {
  cd w = z + std::sqrt(z - 1.0) * std::sqrt(z + 1.0);
  return std::abs(w) >= 1.0 ? w : 1.0 / w;
}

double segment_green(cd zeta, double a, double b) {
  const cd x = (2.0 * zeta - (a + b)) / (b - a);
  return std::log(std::abs(x + std::sqrt(x - 1.0) * std::sqrt(x + 1.0)));
}

// Sheet values for the compact [1/3, 1/2] built from the closed-form Green functions.
std::array<double, 4> oracle_u(cd z) {
  const double g1 = std::log(std::abs(phi(z)));
  const double gF1 = segment_green(phi(z), 1.0 / 3.0, 0.5);
  const double gF2 = segment_green(1.0 / phi(z), 1.0 / 3.0, 0.5);
  return {-2 * gF1 - g1, -2 * gF2 + g1, 2 * gF2 + g1, 2 * gF1 - g1};
}

ExtremalGreen real_case() {
  const std::vector<cd> A{0.5, 1.0 / 3.0};
  QuadraticDifferential qd = chebotarev_solve(A);
  CompactSet K = trace_trajectories(qd);
  return ExtremalGreen(qd, K);
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::BadInput;
}

}  // namespace

TEST_CASE("sheet values against closed-form Green functions") {
  const ExtremalGreen G = real_case();
  for (cd z : {cd(0, 2), cd(0.3, 0.1), cd(-2.5, -0.7), cd(1.4, 0.05), cd(3.0, 0.0), cd(-1.2, 0.0)}) {
    const SheetValues s = u_values(z, G);
    const auto o = oracle_u(z);
    for (int k = 0; k < 4; ++k) CHECK(s.u[k] == doctest::Approx(o[k]).epsilon(1e-9));
    CHECK(std::fabs(s.u[0] + s.u[1] + s.u[2] + s.u[3]) <= 1e-10);
    CHECK(v1_direct(s) == doctest::Approx(s.u[1] - s.u[0]).epsilon(1e-12));
  }
}

TEST_CASE("ordering at z = 2i") {
  const SheetValues s = u_values(cd(0, 2), real_case());
  CHECK(s.v1 > 0);
  CHECK(s.v2 > 0);
  CHECK(s.v3 > 0);
  CHECK(s.u[0] < s.u[1]);
  CHECK(s.u[2] < s.u[3]);
}

TEST_CASE("points on E or on the projected compact are rejected") {
  const ExtremalGreen G = real_case();
  CHECK(code_of([&] { u_values(0.25, G); }) == ErrorCode::OnCut);
  CHECK(code_of([&] { u_values(1.0, G); }) == ErrorCode::OnCut);
  CHECK(code_of([&] { u_values(1.5, G); }) == ErrorCode::OnCut);
  GridSpec g;
  g.nx = 5;
  g.ny = 4;
  g.half_width = 1.5;
  g.cluster = false;
  // x midpoints include 0 while the unclustered y midpoints avoid the real axis.
  CHECK_NOTHROW(nuttall_report(G, g));
}

TEST_CASE("v1 vanishes toward E") {
  const ExtremalGreen G = real_case();
  double prev = u_values(cd(0.3, 1e-1), G).v1;
  for (double d : {1e-2, 1e-3, 1e-4}) {
    const double v = u_values(cd(0.3, d), G).v1;
    CHECK(v < prev);
    prev = v;
  }
  CHECK(prev < 1e-3);
}

TEST_CASE("report on a coarse grid") {
  GridSpec g;
  g.nx = 20;
  g.ny = 20;
  const NuttallReport r = nuttall_report(real_case(), g);
  CHECK(r.grid_points == 400);
  CHECK(r.gaps_positive());
  CHECK(r.max_sum_abs <= 1e-10);
  CHECK(r.max_v1_path_diff <= 1e-12);
  CHECK(r.slope_u1 == doctest::Approx(-3.0).epsilon(1e-4));
  CHECK(r.v1_tends_to_zero);
  CHECK(r.min_v4_on_F > 0);
  CHECK(r.max_fit_deviation < 1e-4);
  const std::string js = to_json(r);
  CHECK(js.find("\"slope_u1\"") != std::string::npos);
}

TEST_CASE("grid points are symmetric and clustered") {
  GridSpec g;
  const auto pts = g.points();
  REQUIRE(pts.size() == 10000);
  double min_abs_im = 1.0, max_abs = 0.0;
  for (cd z : pts) {
    min_abs_im = std::min(min_abs_im, std::fabs(z.imag()));
    max_abs = std::max(max_abs, std::max(std::fabs(z.real()), std::fabs(z.imag())));
  }
  CHECK(min_abs_im > 0.0);
  CHECK(min_abs_im < 1e-3);
  CHECK(max_abs < 3.5);
}
