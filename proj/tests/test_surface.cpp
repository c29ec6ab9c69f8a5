#include "doctest.h"

#include "sheetlab/error.hpp"
#include "sheetlab/surface.hpp"

#include <cmath>

using namespace sheetlab;

TEST_CASE("lift and project") {
  SurfacePoint p1 = lift(5.0 / 3.0, 1);
  CHECK(std::abs(p1.zeta - 3.0) < 1e-15);
  CHECK(p1.sheet() == Sheet::First);
  SurfacePoint p2 = lift(5.0 / 3.0, 2);
  CHECK(std::abs(p2.zeta - 1.0 / 3.0) < 1e-15);
  CHECK(p2.sheet() == Sheet::Second);

  SurfacePoint q{cd(0, 0.5)};
  CHECK(std::abs(project(q) - cd(0, -0.75)) < 1e-15);
  CHECK(q.sheet() == Sheet::Second);

  for (cd z : {cd(0.3, 0.2), cd(-4, 1e-3), cd(2, -7), cd(-0.5, -1e-9)}) {
    for (int s : {1, 2}) {
      SurfacePoint p = lift(z, s);
      CHECK(std::abs(project(p) - z) < 1e-13 * (1 + std::abs(z)));
      CHECK(std::abs(p.w() * p.w() - (z * z - 1.0)) < 1e-12 * (1 + std::norm(z)));
      CHECK(std::abs(p.z() + p.w() - p.zeta) < 1e-12 * (1 + std::abs(p.zeta)));
      // Conjugation equivariance.
      CHECK(std::abs(lift(std::conj(z), s).zeta - std::conj(p.zeta)) < 1e-13 * std::abs(p.zeta));
    }
    CHECK(std::abs(lift(z, 1).zeta * lift(z, 2).zeta - 1.0) < 1e-14);
  }
}

TEST_CASE("points on the cut are flagged") {
  LiftResult r = lift_checked(0.5, 1);
  CHECK(r.on_cut);
  CHECK(std::abs(std::abs(r.point.zeta) - 1.0) < 1e-15);
  CHECK_THROWS_AS(lift(0.5, 2), Error);
  CHECK_THROWS_AS(lift(1.0, 1), Error);
}

TEST_CASE("surface functions") {
  SurfaceValues v = surface_functions(SurfacePoint{3.0});
  CHECK(std::abs(v.Phi - 3.0) < 1e-15);
  CHECK(v.g_bipolar == doctest::Approx(std::log(3.0)));
  CHECK(v.eta2 == doctest::Approx(-1.0986122886681098));

  const double g2 = std::log(2.0 + std::sqrt(3.0));
  SurfaceValues a = surface_functions(lift(2.0, 1));
  SurfaceValues b = surface_functions(lift(2.0, 2));
  CHECK(a.g_bipolar == doctest::Approx(1.316958).epsilon(1e-6));
  CHECK(a.g_bipolar == doctest::Approx(g2).epsilon(1e-15));
  CHECK(b.eta2 == doctest::Approx(g2).epsilon(1e-15));
  CHECK(a.eta2 < b.eta2);
  CHECK(a.g_bipolar == doctest::Approx(-b.g_bipolar).epsilon(1e-15));

  for (double t = 0; t < 6.28; t += 0.5)
    CHECK(std::fabs(surface_functions(SurfacePoint{std::polar(1.0, t)}).g_bipolar) < 1e-15);
  CHECK_THROWS_AS(surface_functions(SurfacePoint{0.0}), Error);
}
