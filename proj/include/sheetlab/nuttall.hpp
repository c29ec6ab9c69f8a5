#pragma once
// Sheet values of u on the four-sheeted surface assembled from the bipolar Green
// function log|phi| and the Green function g_F of the extremal compact.

#include "sheetlab/green.hpp"

#include <array>
#include <string>
#include <vector>

namespace sheetlab {

struct SheetValues {
  cd z;
  std::array<double, 4> u{};  // sheets 1..4
  double v1 = 0.0;            // u2 - u1
  double v2 = 0.0;            // u3 - u2
  double v3 = 0.0;            // u4 - u3
  double gF1 = 0.0;           // g_F at the first-sheet lift
  double gF2 = 0.0;           // g_F at the second-sheet lift
  double g1 = 0.0;            // log|phi(z)|
};

/// Throws OnCut for z in E = [-1, 1] or on the projection of F (distance <= tol).
SheetValues u_values(cd z, const ExtremalGreen& ctx, double tol = 1e-10);

/// v1 assembled directly from the Green functions, independent of the u table.
double v1_direct(const SheetValues& s);
/// 2 g_F(z^(1)) - 2 g(z^(1)).
double v4_value(const SheetValues& s);

struct GridSpec {
  double half_width = 3.5;
  int nx = 100;
  int ny = 100;
  /// Imaginary parts clustered toward the real axis, where E and the projection of F lie.
  bool cluster = true;
  std::vector<cd> points() const;
};

struct NuttallReport {
  std::size_t grid_points = 0;
  double min_v1 = 0.0, min_v2 = 0.0, min_v3 = 0.0;
  cd argmin_v1, argmin_v2, argmin_v3;
  double max_sum_abs = 0.0;        // max |u1 + u2 + u3 + u4|
  double max_v1_path_diff = 0.0;   // max |v1 direct - (u2 - u1)|
  double slope_u1 = 0.0;           // fitted slope of u1 against log|z|
  std::array<double, 4> C{};       // fitted constants of u1 + 3 log|z| and u_s - log|z|
  double max_fit_deviation = 0.0;  // max deviation of those quantities from C over rays and radii
  std::vector<std::pair<double, double>> v1_near_E;  // (distance to E, v1)
  bool v1_tends_to_zero = false;
  double min_v4_on_F = 0.0;
  bool gaps_positive() const { return min_v1 > 0 && min_v2 > 0 && min_v3 > 0; }
};

NuttallReport nuttall_report(const ExtremalGreen& ctx, const GridSpec& grid = {}, double tol = 1e-10);

std::string to_json(const NuttallReport& r);

}  // namespace sheetlab
