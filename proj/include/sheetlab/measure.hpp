#pragma once

#include <array>
#include <complex>
#include <vector>

namespace sheetlab {

enum class Plane { Z, Zeta };

/// Weighted point cloud. Points are z-values (Plane::Z) or uniformizing
/// coordinates on the second sheet (Plane::Zeta, |zeta| < 1).
struct DiscreteMeasure {
  Plane plane = Plane::Z;
  std::vector<std::complex<double>> points;
  std::vector<double> weights;
  /// Optional chord endpoints per point for measures with piecewise-constant density.
  std::vector<std::array<std::complex<double>, 2>> panels;

  double total_mass() const;
  /// Push-forward to the z-plane; a Zeta measure maps through z = (zeta + 1/zeta)/2.
  DiscreteMeasure projected() const;
};

}  // namespace sheetlab
