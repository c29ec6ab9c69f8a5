#include "sheetlab/nuttall.hpp"

#include "sheetlab/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace sheetlab {

namespace {

constexpr const char* kModule = "nuttall";
constexpr double kPi = 3.14159265358979323846;

double distance_to_projection(const CompactSet& K, cd z) {
  double d = std::numeric_limits<double>::infinity();
  for (const Arc& a : K.arcs) {
    for (std::size_t i = 0; i + 1 < a.points.size(); ++i) {
      const cd p = SurfacePoint{a.points[i]}.z();
      const cd q = SurfacePoint{a.points[i + 1]}.z();
      const cd ab = q - p;
      const double L2 = std::norm(ab);
      double s = L2 > 0 ? std::real((z - p) * std::conj(ab)) / L2 : 0.0;
      s = std::clamp(s, 0.0, 1.0);
      d = std::min(d, std::abs(z - (p + s * ab)));
    }
  }
  return d;
}

double distance_to_E(cd z) {
  const double x = std::clamp(z.real(), -1.0, 1.0);
  return std::abs(z - cd(x, 0.0));
}

}  // namespace

SheetValues u_values(cd z, const ExtremalGreen& ctx, double tol) {
  if (distance_to_E(z) <= tol) throw Error(ErrorCode::OnCut, kModule, "z lies on E = [-1, 1]");
  if (distance_to_projection(ctx.compact(), z) <= tol)
    throw Error(ErrorCode::OnCut, kModule, "z lies on the projection of F");
  const cd zeta = phi(z);
  SheetValues s;
  s.z = z;
  s.g1 = std::log(std::abs(zeta));
  s.gF1 = ctx.value(zeta);
  s.gF2 = ctx.value(1.0 / zeta);
  s.u = {-2 * s.gF1 - s.g1, -2 * s.gF2 + s.g1, 2 * s.gF2 + s.g1, 2 * s.gF1 - s.g1};
  s.v1 = s.u[1] - s.u[0];
  s.v2 = s.u[2] - s.u[1];
  s.v3 = s.u[3] - s.u[2];
  return s;
}

double v1_direct(const SheetValues& s) { return 2 * s.gF1 - 2 * s.gF2 + 2 * s.g1; }

double v4_value(const SheetValues& s) { return 2 * s.gF1 - 2 * s.g1; }

std::vector<cd> GridSpec::points() const {
  std::vector<double> xs(nx), ys;
  for (int i = 0; i < nx; ++i) xs[i] = -half_width + 2 * half_width * (i + 0.5) / nx;
  if (cluster) {
    const int h = ny / 2;
    for (int j = 0; j < h; ++j) {
      const double y = half_width * (1.0 - std::cos(0.5 * kPi * (j + 0.5) / h));
      ys.push_back(-y);
      ys.push_back(y);
    }
    if (ny % 2 == 1) ys.push_back(half_width);
  } else {
    for (int j = 0; j < ny; ++j) ys.push_back(-half_width + 2 * half_width * (j + 0.5) / ny);
  }
  std::vector<cd> out;
  out.reserve(xs.size() * ys.size());
  for (double x : xs)
    for (double y : ys) out.emplace_back(x, y);
  return out;
}

NuttallReport nuttall_report(const ExtremalGreen& ctx, const GridSpec& grid, double tol) {
  NuttallReport r;
  const std::vector<cd> pts = grid.points();
  for (cd z : pts) {
    if (distance_to_E(z) <= tol || distance_to_projection(ctx.compact(), z) <= tol)
      throw Error(ErrorCode::GridTouchesCut, kModule, "grid point on E or on the projection of F");
  }
  r.min_v1 = r.min_v2 = r.min_v3 = std::numeric_limits<double>::infinity();
  for (cd z : pts) {
    const SheetValues s = u_values(z, ctx, tol);
    if (s.v1 < r.min_v1) {
      r.min_v1 = s.v1;
      r.argmin_v1 = z;
    }
    if (s.v2 < r.min_v2) {
      r.min_v2 = s.v2;
      r.argmin_v2 = z;
    }
    if (s.v3 < r.min_v3) {
      r.min_v3 = s.v3;
      r.argmin_v3 = z;
    }
    const double sum = s.u[0] + s.u[1] + s.u[2] + s.u[3];
    r.max_sum_abs = std::max(r.max_sum_abs, std::fabs(sum));
    r.max_v1_path_diff = std::max(r.max_v1_path_diff, std::fabs(v1_direct(s) - s.v1));
  }
  r.grid_points = pts.size();

  // Asymptotics along 8 rays for |z| in [1e6, 1e7].
  const int nrad = 6;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int cnt = 0;
  std::vector<std::array<double, 4>> q;
  for (int k = 0; k < 8; ++k) {
    const double th = k * kPi / 4 + 0.1;
    for (int i = 0; i < nrad; ++i) {
      const double R = std::pow(10.0, 6.0 + static_cast<double>(i) / (nrad - 1));
      const SheetValues s = u_values(std::polar(R, th), ctx, tol);
      const double L = std::log(R);
      sx += L;
      sy += s.u[0];
      sxx += L * L;
      sxy += L * s.u[0];
      ++cnt;
      q.push_back({s.u[0] + 3 * L, s.u[1] - L, s.u[2] - L, s.u[3] - L});
    }
  }
  r.slope_u1 = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
  for (int c = 0; c < 4; ++c) {
    double m = 0;
    for (const auto& row : q) m += row[c];
    r.C[c] = m / q.size();
  }
  for (const auto& row : q)
    for (int c = 0; c < 4; ++c) r.max_fit_deviation = std::max(r.max_fit_deviation, std::fabs(row[c] - r.C[c]));

  // v1 approaching E from above at an interior point and at an endpoint.
  r.v1_tends_to_zero = true;
  for (cd base : {cd(0.3, 0.0), cd(1.0, 0.0)}) {
    double prev = std::numeric_limits<double>::infinity();
    for (double d : {1e-1, 1e-2, 1e-3, 1e-4}) {
      const cd z = base.real() == 1.0 ? base + d : base + cd(0, d);
      const double v = u_values(z, ctx, tol).v1;
      r.v1_near_E.emplace_back(d, v);
      r.v1_tends_to_zero = r.v1_tends_to_zero && v < prev && v > 0;
      prev = v;
    }
    r.v1_tends_to_zero = r.v1_tends_to_zero && prev < 0.05 * r.v1_near_E[r.v1_near_E.size() - 4].second;
  }

  // v4 on interior points of the projected compact.
  r.min_v4_on_F = std::numeric_limits<double>::infinity();
  for (const Arc& a : ctx.compact().arcs) {
    const std::size_t m = a.points.size();
    for (std::size_t i = m / 10; i + m / 10 < m; i += std::max<std::size_t>(1, m / 20)) {
      const cd z = SurfacePoint{a.points[i]}.z();
      const cd zeta = phi(z);
      const double v4 = 2 * ctx.value(zeta) - 2 * std::log(std::abs(zeta));
      r.min_v4_on_F = std::min(r.min_v4_on_F, v4);
    }
  }
  return r;
}

std::string to_json(const NuttallReport& r) {
  auto c2 = [](cd z) { return nlohmann::json::array({z.real(), z.imag()}); };
  nlohmann::json j;
  j["grid_points"] = r.grid_points;
  j["min_v1"] = r.min_v1;
  j["min_v2"] = r.min_v2;
  j["min_v3"] = r.min_v3;
  j["argmin_v1"] = c2(r.argmin_v1);
  j["argmin_v2"] = c2(r.argmin_v2);
  j["argmin_v3"] = c2(r.argmin_v3);
  j["gaps_positive"] = r.gaps_positive();
  j["max_sum_abs"] = r.max_sum_abs;
  j["max_v1_path_diff"] = r.max_v1_path_diff;
  j["slope_u1"] = r.slope_u1;
  j["C"] = r.C;
  j["max_fit_deviation"] = r.max_fit_deviation;
  nlohmann::json near = nlohmann::json::array();
  for (const auto& [d, v] : r.v1_near_E) near.push_back({d, v});
  j["v1_near_E"] = near;
  j["v1_tends_to_zero"] = r.v1_tends_to_zero;
  j["min_v4_on_F"] = r.min_v4_on_F;
  return j.dump(2);
}

}  // namespace sheetlab
