#include "sheetlab/green.hpp"

#include "detail/gauss.hpp"
#include "sheetlab/error.hpp"

#include <Eigen/Dense>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace sheetlab {

namespace {

constexpr const char* kModule = "green";
constexpr double kPi = 3.14159265358979323846;

double polyline_distance(const std::vector<cd>& pts, cd z) {
  double d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const cd ab = pts[i + 1] - pts[i];
    const double L2 = std::norm(ab);
    double s = L2 > 0 ? std::real((z - pts[i]) * std::conj(ab)) / L2 : 0.0;
    s = std::clamp(s, 0.0, 1.0);
    d = std::min(d, std::abs(z - (pts[i] + s * ab)));
  }
  return d;
}

double compact_distance(const CompactSet& K, cd z) {
  double d = std::numeric_limits<double>::infinity();
  for (const Arc& a : K.arcs) d = std::min(d, polyline_distance(a.points, z));
  return d;
}

// Arc-length parametrization of a polyline on [-1, 1].
std::function<cd(double)> polyline_param(const std::vector<cd>& pts) {
  std::vector<double> cum(pts.size(), 0.0);
  for (std::size_t i = 1; i < pts.size(); ++i) cum[i] = cum[i - 1] + std::abs(pts[i] - pts[i - 1]);
  return [pts, cum](double x) {
    const double s = 0.5 * (x + 1.0) * cum.back();
    auto it = std::upper_bound(cum.begin(), cum.end(), s);
    std::size_t i = it == cum.begin() ? 0 : static_cast<std::size_t>(it - cum.begin()) - 1;
    if (i + 1 >= pts.size()) return pts.back();
    const double seg = cum[i + 1] - cum[i];
    const double u = seg > 0 ? (s - cum[i]) / seg : 0.0;
    return pts[i] + u * (pts[i + 1] - pts[i]);
  };
}

}  // namespace

ExtremalGreen::ExtremalGreen(QuadraticDifferential qd, CompactSet K, double tol)
    : qd_(std::move(qd)), K_(std::move(K)), tol_(tol) {
  if (!qd_.general_position) throw Error(ErrorCode::NotGeneralPosition, kModule, "quadratic differential is flagged");
  robin_ = robin_abelian(qd_);
}

GreenEvaluation ExtremalGreen::eval(cd zeta) const {
  GreenEvaluation out;
  out.zeta = zeta;
  out.robin_gamma = robin_;
  for (cd b : qd_.B_roots) {
    if (std::abs(zeta - b) <= tol_) {
      out.on_compact = true;
      out.grad_singular = true;
      out.grad = {std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
      return out;
    }
  }
  const AbelianValue v = green_abelian(qd_, zeta);
  out.grad = {v.F.real(), -v.F.imag()};
  if (compact_distance(K_, zeta) <= tol_) {
    out.on_compact = true;
    return out;
  }
  out.g_value = v.g;
  return out;
}

double ExtremalGreen::value(cd zeta) const { return eval(zeta).g_value; }

GreenEvaluation green_eval(const QuadraticDifferential& qd, const CompactSet& K, cd zeta, double tol) {
  return ExtremalGreen(qd, K, tol).eval(zeta);
}

EquilibriumCharge::EquilibriumCharge(const CompactSet& K, int modes) {
  if (K.arcs.empty()) throw Error(ErrorCode::BadInput, kModule, "empty compact");
  if (modes < 4) throw Error(ErrorCode::BadInput, kModule, "too few Chebyshev modes");
  for (const Arc& a : K.arcs) gam_.push_back(a.param ? a.param : polyline_param(a.points));
  const int p = static_cast<int>(gam_.size());
  const int M = modes;
  const int Q = 2 * M;
  std::vector<double> xc(M), yq(Q);
  for (int i = 0; i < M; ++i) xc[i] = std::cos((2 * i + 1) * kPi / (2 * M));
  for (int q = 0; q < Q; ++q) yq[q] = std::cos((2 * q + 1) * kPi / (2 * Q));
  // Tq(n, q) = T_n(y_q)
  Eigen::MatrixXd Tq(M, Q), Tx(M, M);
  for (int n = 0; n < M; ++n) {
    for (int q = 0; q < Q; ++q) Tq(n, q) = std::cos(n * (2 * q + 1) * kPi / (2 * Q));
    for (int i = 0; i < M; ++i) Tx(n, i) = std::cos(n * (2 * i + 1) * kPi / (2 * M));
  }
  std::vector<std::vector<cd>> Gx(p, std::vector<cd>(M)), Gy(p, std::vector<cd>(Q));
  for (int k = 0; k < p; ++k) {
    for (int i = 0; i < M; ++i) Gx[k][i] = gam_[k](xc[i]);
    for (int q = 0; q < Q; ++q) Gy[k][q] = gam_[k](yq[q]);
  }
  const int N = p * M + 1;
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(N, N);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(N);
  const double wq = kPi / Q;
  Eigen::VectorXd kern(Q);
  for (int j = 0; j < p; ++j) {
    for (int i = 0; i < M; ++i) {
      const int row = j * M + i;
      for (int k = 0; k < p; ++k) {
        for (int q = 0; q < Q; ++q) {
          const double dist = std::abs(Gx[j][i] - Gy[k][q]);
          kern[q] = k == j ? std::log(dist / std::fabs(xc[i] - yq[q])) : std::log(dist);
        }
        for (int n = 0; n < M; ++n) {
          double v = wq * kern.dot(Tq.row(n).transpose());
          if (k == j) v += n == 0 ? -kPi * std::log(2.0) : -kPi / n * Tx(n, i);
          A(row, k * M + n) = v;
        }
      }
      A(row, N - 1) = -1.0;
    }
  }
  for (int k = 0; k < p; ++k) A(N - 1, k * M) = kPi;
  rhs[N - 1] = 1.0;
  const Eigen::VectorXd sol = A.partialPivLu().solve(rhs);
  coeffs_.assign(p, std::vector<double>(M));
  for (int k = 0; k < p; ++k)
    for (int n = 0; n < M; ++n) coeffs_[k][n] = sol[k * M + n];
  V0_ = sol[N - 1];
}

double EquilibriumCharge::capacity() const { return std::exp(V0_); }

double EquilibriumCharge::green(cd zeta) const {
  boost::math::quadrature::tanh_sinh<double> ts;
  double U = 0.0;
  for (std::size_t k = 0; k < gam_.size(); ++k) {
    const auto& c = coeffs_[k];
    const auto& g = gam_[k];
    auto density = [&c](double th) {
      double s = 0.0;
      for (std::size_t n = 0; n < c.size(); ++n) s += c[n] * std::cos(n * th);
      return s;
    };
    auto f = [&](double th) { return std::log(std::abs(zeta - g(std::cos(th)))) * density(th); };
    // Split at the parameter of the nearest arc point so the near-log feature sits at an endpoint.
    int best = 0;
    double bd = std::numeric_limits<double>::infinity();
    const int scan = 512;
    for (int i = 0; i <= scan; ++i) {
      const double d = std::abs(zeta - g(std::cos(kPi * i / scan)));
      if (d < bd) {
        bd = d;
        best = i;
      }
    }
    double lo = kPi * std::max(0, best - 1) / scan;
    double hi = kPi * std::min(scan, best + 1) / scan;
    for (int it = 0; it < 80; ++it) {
      const double m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
      if (std::abs(zeta - g(std::cos(m1))) < std::abs(zeta - g(std::cos(m2))))
        hi = m2;
      else
        lo = m1;
    }
    const double ts_split = 0.5 * (lo + hi);
    double part = 0.0;
    if (ts_split > 0.0) part += ts.integrate(f, 0.0, ts_split, 1e-15);
    if (ts_split < kPi) part += ts.integrate(f, ts_split, kPi, 1e-15);
    U += part;
  }
  return U - V0_;
}

double s_property_residual(const CompactSet& K, const std::function<double(cd)>& g, double h, int samples) {
  double min_sep = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < K.arcs.size(); ++i) {
    min_sep = std::min(min_sep, K.arcs[i].length());
    for (std::size_t j = i + 1; j < K.arcs.size(); ++j)
      for (cd z : K.arcs[j].points) min_sep = std::min(min_sep, polyline_distance(K.arcs[i].points, z));
  }
  if (!(h > 0.0) || h >= min_sep / 100.0) {
    std::ostringstream os;
    os << "offset " << h << " not below " << min_sep / 100.0;
    throw Error(ErrorCode::OffsetTooLarge, kModule, os.str());
  }
  double worst = 0.0;
  for (const Arc& arc : K.arcs) {
    const auto& P = arc.points;
    std::vector<double> cum(P.size(), 0.0);
    for (std::size_t i = 1; i < P.size(); ++i) cum[i] = cum[i - 1] + std::abs(P[i] - P[i - 1]);
    const double L = cum.back();
    for (int s = 0; s < samples; ++s) {
      const double target = L * (0.05 + 0.9 * (s + 0.5) / samples);
      std::size_t i = static_cast<std::size_t>(std::upper_bound(cum.begin(), cum.end(), target) - cum.begin());
      i = std::clamp<std::size_t>(i, 1, P.size() - 1);
      // Sample at a vertex so the point lies on the computed arc.
      const std::size_t v = target - cum[i - 1] < cum[i] - target ? i - 1 : i;
      if (v == 0 || v + 1 >= P.size()) continue;
      const cd tangent = P[v + 1] - P[v - 1];
      const cd n = cd(0, 1) * tangent / std::abs(tangent);
      auto one_sided = [&](cd dir) {
        return (4.0 * g(P[v] + h * dir) - g(P[v] + 2.0 * h * dir)) / (2.0 * h);
      };
      worst = std::max(worst, std::fabs(one_sided(n) - one_sided(-n)));
    }
  }
  return worst;
}

double s_property_residual(const QuadraticDifferential& qd, const CompactSet& K, double h, int samples) {
  if (!qd.general_position) throw Error(ErrorCode::NotGeneralPosition, kModule, "quadratic differential is flagged");
  return s_property_residual(K, [&qd](cd z) { return green_abelian(qd, z).g; }, h, samples);
}

std::vector<RankedCandidate> robin_compare(const std::vector<cd>& branch_points,
                                           const std::vector<CompactSet>& candidates) {
  std::vector<RankedCandidate> out;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const AdmissibilityReport r = admissibility_check(candidates[i], branch_points);
    if (!r.ok()) {
      std::ostringstream os;
      os << "candidate " << i << " fails";
      if (!r.on_second_sheet) os << " on_second_sheet";
      if (!r.complement_connected) os << " complement_connected";
      if (!r.single_valued) os << " single_valued";
      throw Error(ErrorCode::InadmissibleCandidate, kModule, os.str());
    }
    out.push_back({static_cast<int>(i), EquilibriumCharge(candidates[i]).robin()});
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const RankedCandidate& a, const RankedCandidate& b) { return a.robin_gamma > b.robin_gamma; });
  return out;
}

std::vector<RankedCandidate> robin_compare(const FunctionSpec& spec, const std::vector<CompactSet>& candidates) {
  return robin_compare(derived_points(spec).zeta_images, candidates);
}

}  // namespace sheetlab
