#pragma once
// Two-sheeted surface w^2 = z^2 - 1 uniformized by zeta: z = (zeta + 1/zeta)/2,
// w = (zeta - 1/zeta)/2. Sheet 1 is |zeta| > 1 (w/z -> 1 at infinity).

#include <complex>

namespace sheetlab {

using cd = std::complex<double>;

enum class Sheet { Boundary = 0, First = 1, Second = 2 };

struct SurfacePoint {
  cd zeta;

  cd z() const { return 0.5 * (zeta + 1.0 / zeta); }
  cd w() const { return 0.5 * (zeta - 1.0 / zeta); }
  Sheet sheet() const;
};

struct LiftResult {
  SurfacePoint point;
  bool on_cut = false;  // z in [-1, 1]: the boundary point |zeta| = 1 is returned
};

/// Lift with explicit cut flag.
LiftResult lift_checked(cd z, int sheet);
/// Throws Error(OnCut) for z in [-1, 1].
SurfacePoint lift(cd z, int sheet);
cd project(const SurfacePoint& p);

struct SurfaceValues {
  cd Phi;            // z + w = zeta
  double g_bipolar;  // log|zeta|
  cd G;              // principal log zeta
  double eta2;       // -log|zeta|
};

SurfaceValues surface_functions(const SurfacePoint& p);

/// phi(z) = z + (z^2 - 1)^{1/2} with |phi| >= 1; the first-sheet uniformizing coordinate.
cd phi(cd z);

}  // namespace sheetlab
