#include "sheetlab/surface.hpp"

#include "sheetlab/error.hpp"

#include <cmath>

namespace sheetlab {

namespace {
constexpr const char* kModule = "surface";
}

Sheet SurfacePoint::sheet() const {
  const double r = std::abs(zeta);
  if (r > 1.0) return Sheet::First;
  if (r < 1.0) return Sheet::Second;
  return Sheet::Boundary;
}

cd phi(cd z) {
  cd s = z + std::sqrt(z - 1.0) * std::sqrt(z + 1.0);
  return std::abs(s) < 1.0 ? 1.0 / s : s;
}

LiftResult lift_checked(cd z, int sheet) {
  if (sheet != 1 && sheet != 2) throw Error(ErrorCode::BadInput, kModule, "sheet must be 1 or 2");
  LiftResult r;
  if (z.imag() == 0.0 && std::fabs(z.real()) <= 1.0) {
    r.on_cut = true;
    const double x = z.real();
    cd zeta(x, std::sqrt(1.0 - x * x));
    r.point.zeta = sheet == 1 ? zeta : std::conj(zeta);
    return r;
  }
  const cd s = phi(z);
  r.point.zeta = sheet == 1 ? s : 1.0 / s;
  return r;
}

SurfacePoint lift(cd z, int sheet) {
  LiftResult r = lift_checked(z, sheet);
  if (r.on_cut) throw Error(ErrorCode::OnCut, kModule, "z lies on [-1, 1]");
  return r.point;
}

cd project(const SurfacePoint& p) { return p.z(); }

SurfaceValues surface_functions(const SurfacePoint& p) {
  if (p.zeta == 0.0 || !std::isfinite(std::abs(p.zeta)))
    throw Error(ErrorCode::PoleAtInfinity, kModule, "zeta = 0 or infinity");
  SurfaceValues v;
  v.Phi = p.zeta;
  v.g_bipolar = std::log(std::abs(p.zeta));
  v.G = std::log(p.zeta);
  v.eta2 = -v.g_bipolar;
  return v;
}

}  // namespace sheetlab
