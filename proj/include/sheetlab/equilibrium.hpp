#pragma once
// Potential, energy and equilibrium measure for the kernel
//   k(z, t) = log( |1 - 1/(Phi(z) Phi(t))| / |z - t|^2 )
// with external field V = -log|Phi| on the second sheet. In the uniformizing
// coordinate, k = log 4 - 2 log|zeta - tau| - log|zeta tau - 1| + log|zeta tau|.

#include "sheetlab/measure.hpp"
#include "sheetlab/scurve.hpp"

#include <optional>
#include <vector>

namespace sheetlab {

double nonstandard_kernel(cd zeta_z, cd zeta_t);
/// -log|zeta|.
double external_field(cd zeta);

struct PotentialEnergy {
  std::optional<double> P_value;
  double J = 0.0;
};

/// Measures carrying panels use panel-averaged kernels, including the exact
/// self-interaction of each chord; point measures omit the diagonal.
PotentialEnergy potential_energy(const DiscreteMeasure& mu, std::optional<SurfacePoint> eval_at = std::nullopt,
                                 double tol = 1e-12);

struct EnergyReport {
  double J_value = 0.0;
  double w_K = 0.0;
  double residual_sup = 0.0;
  bool within_tol = false;
  int iterations = 0;  // projected-gradient steps before the active-set polish
};

struct EquilibriumSolution {
  DiscreteMeasure measure;  // Plane::Zeta, chord midpoints with their panels
  EnergyReport report;
};

/// N panels per arc, graded toward the arc endpoints.
EquilibriumSolution solve_equilibrium(const CompactSet& K, const std::vector<cd>& branch_points, int N, double tol);

/// Kolmogorov-Smirnov distance of the z-plane projections along a reference
/// polyline, plus each measure's off-arc mass weighted by min(1, distance / length).
double measure_distance(const DiscreteMeasure& mu1, const DiscreteMeasure& mu2, const std::vector<cd>& reference);
/// Reference taken from the panels of either measure, else the chord between the
/// two most distant support points.
double measure_distance(const DiscreteMeasure& mu1, const DiscreteMeasure& mu2);

}  // namespace sheetlab
