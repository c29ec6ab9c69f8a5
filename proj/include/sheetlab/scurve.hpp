#pragma once
// Extremal compact of the zeta-plane problem: critical trajectories of the
// quadratic differential -(V/B)(t) dt^2 with B(t) = prod (t - A~_j) and
// V = P^2, P monic of degree p-1. Along a trajectory F dt is purely imaginary,
// F = P / sqrt(B), and the Green function of the complement is |Re int F dt|.

#include "sheetlab/funcspec.hpp"
#include "sheetlab/surface.hpp"

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace sheetlab {

struct QuadraticDifferential {
  std::vector<cd> B_roots;         // A~_j = 1/A_j
  std::vector<cd> V_double_zeros;  // v_i, p-1 of them
  std::vector<std::pair<int, int>> pairing;
  bool general_position = true;
  bool near_pole = false;  // an arc passes within tol of zeta = 0
  double residual = 0.0;   // max |period condition| at the solution
  std::vector<std::string> flags;

  int p() const { return static_cast<int>(B_roots.size()) / 2; }
  /// V(t)/B(t).
  cd F2(cd t) const;
  /// P(t) / prod_k sq_k(t), with each pair's square root cut along the straight chord.
  cd F_straight(cd t) const;
  /// Distance from t to the nearest branch point or double zero.
  double singular_distance(cd t) const;
  /// Same, ignoring the point with index `skip` of B_roots.
  double branch_distance(cd t, int skip = -1) const;
};

struct Arc {
  std::vector<cd> points;  // ordered chain, endpoints are branch points
  int from = -1;
  int to = -1;
  /// Optional smooth parametrization on [-1, 1] proportional to arc length.
  std::function<cd(double)> param;

  double length() const;
};

enum class ArcLocation { ZetaPlane, SurfaceSheet2 };

struct CompactSet {
  std::vector<Arc> arcs;
  ArcLocation location = ArcLocation::ZetaPlane;
  std::vector<std::string> flags;  // e.g. an arc passing near zeta = 0
};

struct ScurveOptions {
  double tol = 1e-10;       // period residual and endpoint snap scale
  double step = 2e-3;       // maximal tracing step relative to the disk radius
  int max_newton = 60;
  int max_matchings = 24;   // matchings tried, ordered by total chord length
};

/// Solves the real period conditions for V and selects the pairing.
QuadraticDifferential chebotarev_solve(const BranchData& branch, const ScurveOptions& opt = {});
QuadraticDifferential chebotarev_solve(const std::vector<cd>& zeta_images, const ScurveOptions& opt = {});

/// Traces the critical trajectories from the branch points.
CompactSet trace_trajectories(const QuadraticDifferential& qd, const ScurveOptions& opt = {});

struct AdmissibilityReport {
  bool on_second_sheet = false;
  bool complement_connected = false;
  bool single_valued = false;
  std::string reason;
  bool ok() const { return on_second_sheet && complement_connected && single_valued; }
};

AdmissibilityReport admissibility_check(const CompactSet& K, const FunctionSpec& spec);
AdmissibilityReport admissibility_check(const CompactSet& K, const std::vector<cd>& branch_points);

/// Integral of F dt along a polyline; the first vertex may be a branch point.
/// The branch of F follows continuity from F_straight at the first regular node.
/// When `end_F` is given it receives F at the last vertex.
cd abelian_integral(const QuadraticDifferential& qd, const std::vector<cd>& path, bool start_at_branch,
                    bool end_at_branch = false, cd* end_F = nullptr);

/// Robin constant of the extremal compact from the Abelian integral: g - log|zeta|
/// at |zeta| = 1e3, 1e4, 1e5 extrapolated quadratically in 1/|zeta|.
double robin_abelian(const QuadraticDifferential& qd);

/// Green function |Re int_{b0}^{zeta} F dt| and the value of F at zeta on that branch.
struct AbelianValue {
  double g = 0.0;
  cd F;  // derivative of the analytic completion with Re >= 0 at zeta
};
AbelianValue green_abelian(const QuadraticDifferential& qd, cd zeta);

/// Segment and circular-arc compacts joining two points (bulge = sagitta / half chord,
/// signed; 0 gives the segment).
Arc circular_arc(cd a, cd b, double bulge, int samples = 400);

}  // namespace sheetlab
