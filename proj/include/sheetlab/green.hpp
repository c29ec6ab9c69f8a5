#pragma once
// Green function of the complement of a compact in the zeta-plane with pole at
// zeta = infinity; the Robin constant is taken in the coordinate xi = 1/zeta.

#include "sheetlab/scurve.hpp"

#include <array>
#include <functional>
#include <vector>

namespace sheetlab {

struct GreenEvaluation {
  cd zeta;
  double g_value = 0.0;
  std::array<double, 2> grad{0.0, 0.0};  // (d/d Re zeta, d/d Im zeta)
  double robin_gamma = 0.0;
  bool on_compact = false;     // within tol of an arc; g_value = 0
  bool grad_singular = false;  // at a branch point
};

/// Green function of the extremal compact through the Abelian integral of sqrt(V/B).
class ExtremalGreen {
 public:
  ExtremalGreen(QuadraticDifferential qd, CompactSet K, double tol = 1e-10);

  GreenEvaluation eval(cd zeta) const;
  double value(cd zeta) const;
  double robin() const { return robin_; }
  const CompactSet& compact() const { return K_; }
  const QuadraticDifferential& differential() const { return qd_; }

 private:
  QuadraticDifferential qd_;
  CompactSet K_;
  double tol_;
  double robin_;
};

GreenEvaluation green_eval(const QuadraticDifferential& qd, const CompactSet& K, cd zeta, double tol = 1e-10);

/// Equilibrium charge of an arc system by a Chebyshev-Nystrom discretization of the
/// single-layer equation; independent of the quadratic differential.
class EquilibriumCharge {
 public:
  explicit EquilibriumCharge(const CompactSet& K, int modes = 48);

  /// -log capacity.
  double robin() const { return -V0_; }
  double capacity() const;
  /// Green function U(zeta) - V0 of the complement.
  double green(cd zeta) const;

 private:
  std::vector<std::function<cd(double)>> gam_;
  std::vector<std::vector<double>> coeffs_;  // Chebyshev coefficients of the density per arc
  double V0_ = 0.0;
};

/// Maximal jump of the one-sided normal derivatives of g across interior arc points.
double s_property_residual(const CompactSet& K, const std::function<double(cd)>& g, double h, int samples = 64);
double s_property_residual(const QuadraticDifferential& qd, const CompactSet& K, double h, int samples = 64);

struct RankedCandidate {
  int index = 0;  // position in the input list
  double robin_gamma = 0.0;
};

/// Robin constants of admissible candidates, largest first.
std::vector<RankedCandidate> robin_compare(const std::vector<cd>& branch_points, const std::vector<CompactSet>& candidates);
std::vector<RankedCandidate> robin_compare(const FunctionSpec& spec, const std::vector<CompactSet>& candidates);

}  // namespace sheetlab
