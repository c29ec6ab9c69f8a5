#include "sheetlab/equilibrium.hpp"

#include "detail/gauss.hpp"
#include "sheetlab/error.hpp"
#include "sheetlab/simd/kernels.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace sheetlab {

namespace {

constexpr const char* kModule = "equilibrium";
const double kLog4 = std::log(4.0);

using Panel = std::array<cd, 2>;

// Average over the chord [p, q] of -2 log|x - t|.
double chord_log_avg(cd x, cd p, cd q) {
  const cd d = q - p;
  const double h = std::abs(d);
  const cd w = (x - p) * std::conj(d / h);
  auto F = [](cd u) { return std::abs(u) == 0.0 ? cd(0.0) : u * std::log(u); };
  const double I = std::real(F(w) - F(w - h)) - h;
  return -2.0 * I / h;
}

double smooth_kernel(cd z, cd t) { return kLog4 - std::log(std::abs(z * t - 1.0)) + std::log(std::abs(z * t)); }

struct Assembly {
  Eigen::MatrixXd K;  // row-major storage is used by the SIMD gemv
  Eigen::VectorXd V;
  std::vector<cd> X;  // Gauss points, 8 per panel
};

Assembly assemble(const std::vector<Panel>& panels) {
  const auto& g = detail::UnitGauss<8>::get();
  const std::size_t n = panels.size();
  const std::size_t m = 8 * n;
  Assembly A;
  A.X.resize(m);
  for (std::size_t j = 0; j < n; ++j)
    for (int b = 0; b < 8; ++b) A.X[8 * j + b] = panels[j][0] + (panels[j][1] - panels[j][0]) * g.x[b];
  std::vector<double> absX(m), ell(m);
  for (std::size_t k = 0; k < m; ++k) absX[k] = std::abs(A.X[k]);
  simd::log_batch(absX.data(), ell.data(), m);

  Eigen::MatrixXd K = Eigen::MatrixXd::Zero(n, n);
  std::vector<double> mag(m), L(m);
  for (std::size_t i = 0; i < n; ++i) {
    for (int a = 0; a < 8; ++a) {
      const cd x = A.X[8 * i + a];
      for (std::size_t k = 0; k < m; ++k) mag[k] = std::abs(x * A.X[k] - 1.0);
      simd::log_batch(mag.data(), L.data(), m);
      const double li = ell[8 * i + a];
      for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (int b = 0; b < 8; ++b) s += g.w[b] * (kLog4 - L[8 * j + b] + li + ell[8 * j + b]);
        double sing = 0.0;
        if (j != i) sing = chord_log_avg(x, panels[j][0], panels[j][1]);
        K(i, j) += g.w[a] * (s + sing);
      }
    }
    K(i, i) += 3.0 - 2.0 * std::log(std::abs(panels[i][1] - panels[i][0]));
  }
  A.K = 0.5 * (K + K.transpose());
  A.V.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    double v = 0.0;
    for (int a = 0; a < 8; ++a) v -= g.w[a] * ell[8 * i + a];
    A.V[i] = v;
  }
  return A;
}

// Potential of a panel measure at x, panel j contributing w_j times its average kernel.
double panel_potential(const std::vector<Panel>& panels, const std::vector<double>& w, cd x) {
  const auto& g = detail::UnitGauss<8>::get();
  double P = 0.0;
  for (std::size_t j = 0; j < panels.size(); ++j) {
    double s = chord_log_avg(x, panels[j][0], panels[j][1]);
    for (int b = 0; b < 8; ++b)
      s += g.w[b] * smooth_kernel(x, panels[j][0] + (panels[j][1] - panels[j][0]) * g.x[b]);
    P += w[j] * s;
  }
  return P;
}

// Euclidean projection onto the probability simplex.
Eigen::VectorXd project_simplex(const Eigen::VectorXd& y) {
  std::vector<double> u(y.data(), y.data() + y.size());
  std::sort(u.begin(), u.end(), std::greater<>());
  double css = 0.0, theta = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    css += u[i];
    const double t = (css - 1.0) / static_cast<double>(i + 1);
    if (u[i] - t > 0) theta = t;
  }
  return (y.array() - theta).max(0.0).matrix();
}

void gemv(const Eigen::MatrixXd& K, const Eigen::VectorXd& x, Eigen::VectorXd& y) {
  // K is symmetric, so its column-major storage serves as the row-major transpose.
  y.resize(K.rows());
  simd::gemv(K.data(), static_cast<std::size_t>(K.rows()), x.data(), y.data(), static_cast<std::size_t>(K.rows()),
             static_cast<std::size_t>(K.cols()));
}

cd arc_point(const Arc& arc, double s) {
  if (arc.param) return arc.param(2.0 * s - 1.0);
  const auto& P = arc.points;
  const double L = arc.length();
  double target = s * L, acc = 0.0;
  for (std::size_t i = 0; i + 1 < P.size(); ++i) {
    const double seg = std::abs(P[i + 1] - P[i]);
    if (acc + seg >= target || i + 2 == P.size()) {
      const double u = seg > 0 ? std::clamp((target - acc) / seg, 0.0, 1.0) : 0.0;
      return P[i] + u * (P[i + 1] - P[i]);
    }
    acc += seg;
  }
  return P.back();
}

void validate_measure(const DiscreteMeasure& mu) {
  if (mu.points.empty() || mu.points.size() != mu.weights.size())
    throw Error(ErrorCode::BadInput, kModule, "points and weights must be nonempty and equal in size");
  if (!mu.panels.empty() && mu.panels.size() != mu.points.size())
    throw Error(ErrorCode::BadInput, kModule, "panels must match points");
  for (double w : mu.weights)
    if (!(w >= 0.0)) throw Error(ErrorCode::BadInput, kModule, "negative weight");
  if (std::fabs(mu.total_mass() - 1.0) > 1e-12) throw Error(ErrorCode::BadInput, kModule, "weights must sum to 1");
  for (std::size_t i = 0; i < mu.points.size(); ++i)
    for (std::size_t j = i + 1; j < mu.points.size(); ++j)
      if (std::abs(mu.points[i] - mu.points[j]) <= 1e-14)
        throw Error(ErrorCode::DuplicateSupport, kModule, "repeated support point");
}

}  // namespace

double nonstandard_kernel(cd zeta_z, cd zeta_t) {
  return -2.0 * std::log(std::abs(zeta_z - zeta_t)) + smooth_kernel(zeta_z, zeta_t);
}

double external_field(cd zeta) { return -std::log(std::abs(zeta)); }

PotentialEnergy potential_energy(const DiscreteMeasure& mu, std::optional<SurfacePoint> eval_at, double tol) {
  if (mu.plane != Plane::Zeta) throw Error(ErrorCode::BadInput, kModule, "measure must live on the second sheet");
  validate_measure(mu);
  PotentialEnergy out;
  const std::size_t n = mu.points.size();
  if (!mu.panels.empty()) {
    std::vector<Panel> panels(mu.panels.begin(), mu.panels.end());
    const Assembly A = assemble(panels);
    const Eigen::Map<const Eigen::VectorXd> w(mu.weights.data(), static_cast<Eigen::Index>(n));
    out.J = w.dot(A.K * w) + 2.0 * w.dot(A.V);
    if (eval_at) {
      for (cd t : mu.points)
        if (std::abs(eval_at->zeta - t) <= tol)
          throw Error(ErrorCode::DiagonalSingularity, kModule, "evaluation point on the support");
      out.P_value = panel_potential(panels, mu.weights, eval_at->zeta);
    }
    return out;
  }
  double J = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double Pi = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) Pi += mu.weights[j] * nonstandard_kernel(mu.points[i], mu.points[j]);
    J += mu.weights[i] * (Pi + 2.0 * external_field(mu.points[i]));
  }
  out.J = J;
  if (eval_at) {
    double P = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (std::abs(eval_at->zeta - mu.points[j]) <= tol)
        throw Error(ErrorCode::DiagonalSingularity, kModule, "evaluation point on the support");
      P += mu.weights[j] * nonstandard_kernel(eval_at->zeta, mu.points[j]);
    }
    out.P_value = P;
  }
  return out;
}

EquilibriumSolution solve_equilibrium(const CompactSet& K, const std::vector<cd>& branch_points, int N, double tol) {
  if (N < 50) throw Error(ErrorCode::BadInput, kModule, "need at least 50 panels per arc");
  const AdmissibilityReport adm = admissibility_check(K, branch_points);
  if (!adm.ok()) {
    std::ostringstream os;
    os << "compact fails";
    if (!adm.on_second_sheet) os << " on_second_sheet";
    if (!adm.complement_connected) os << " complement_connected";
    if (!adm.single_valued) os << " single_valued";
    throw Error(ErrorCode::InadmissibleCandidate, kModule, os.str());
  }
  std::vector<Panel> panels;
  std::vector<bool> interior_start;  // the panel's first node is not an arc endpoint
  for (const Arc& arc : K.arcs) {
    std::vector<cd> nodes(N + 1);
    for (int i = 0; i <= N; ++i) {
      const double t = static_cast<double>(i) / N;
      const double s = t * t * t / (t * t * t + (1 - t) * (1 - t) * (1 - t));
      nodes[i] = arc_point(arc, s);
    }
    nodes.front() = arc.points.front();
    nodes.back() = arc.points.back();
    for (int i = 0; i < N; ++i) {
      panels.push_back({nodes[i], nodes[i + 1]});
      interior_start.push_back(i > 0);
    }
  }
  const Assembly A = assemble(panels);
  const Eigen::Index n = static_cast<Eigen::Index>(panels.size());

  // Projected gradient with exact line search on J(w) = w'Kw + 2V'w.
  Eigen::VectorXd w = Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
  Eigen::VectorXd Kw, Kd;
  gemv(A.K, w, Kw);
  const double step = 1.0 / (2.0 * A.K.cwiseAbs().rowwise().sum().maxCoeff());
  int it = 0;
  for (; it < 500; ++it) {
    const Eigen::VectorXd grad = 2.0 * (Kw + A.V);
    const Eigen::VectorXd d = project_simplex(w - step * grad) - w;
    if (d.lpNorm<Eigen::Infinity>() < 1e-16) break;
    gemv(A.K, d, Kd);
    const double curv = 2.0 * d.dot(Kd);
    const double slope = grad.dot(d);
    const double alpha = curv > 0 ? std::clamp(-slope / curv, 0.0, 1.0) : 1.0;
    w += alpha * d;
    Kw += alpha * Kd;
  }

  // Active-set polish on the KKT system of the current support.
  std::vector<bool> active(n);
  for (Eigen::Index i = 0; i < n; ++i) active[i] = w[i] > 0.0;
  double wK = 0.0;
  bool done = false;
  for (int round = 0; round < 2 * n + 10 && !done; ++round) {
    std::vector<Eigen::Index> S;
    for (Eigen::Index i = 0; i < n; ++i)
      if (active[i]) S.push_back(i);
    const Eigen::Index s = static_cast<Eigen::Index>(S.size());
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(s + 1, s + 1);
    Eigen::VectorXd rhs(s + 1);
    for (Eigen::Index a = 0; a < s; ++a) {
      for (Eigen::Index b = 0; b < s; ++b) M(a, b) = A.K(S[a], S[b]);
      M(a, s) = -1.0;
      M(s, a) = 1.0;
      rhs[a] = -A.V[S[a]];
    }
    rhs[s] = 1.0;
    const Eigen::VectorXd sol = M.partialPivLu().solve(rhs);
    Eigen::Index worst = -1;
    double most_negative = 0.0;
    for (Eigen::Index a = 0; a < s; ++a)
      if (sol[a] < most_negative) {
        most_negative = sol[a];
        worst = S[a];
      }
    if (worst >= 0) {
      active[worst] = false;
      continue;
    }
    w.setZero();
    for (Eigen::Index a = 0; a < s; ++a) w[S[a]] = sol[a];
    wK = sol[s];
    const Eigen::VectorXd g = A.K * w + A.V;
    Eigen::Index add = -1;
    double viol = -1e-13;
    for (Eigen::Index i = 0; i < n; ++i)
      if (!active[i] && g[i] - wK < viol) {
        viol = g[i] - wK;
        add = i;
      }
    if (add >= 0)
      active[add] = true;
    else
      done = true;
  }
  if (!done) throw Error(ErrorCode::NotConverged, kModule, "active-set iteration cap reached");
  std::vector<Eigen::Index> zero_set;
  for (Eigen::Index i = 0; i < n; ++i)
    if (!active[i]) zero_set.push_back(i);
  if (!zero_set.empty()) {
    std::ostringstream os;
    os << zero_set.size() << " panels carry zero weight:";
    for (auto i : zero_set) os << ' ' << i;
    throw Error(ErrorCode::NegativeWeightsPersist, kModule, os.str());
  }

  EquilibriumSolution out;
  DiscreteMeasure& mu = out.measure;
  mu.plane = Plane::Zeta;
  std::vector<double> wv(w.data(), w.data() + n);
  const double mass = std::accumulate(wv.begin(), wv.end(), 0.0);
  for (double& x : wv) x /= mass;
  for (Eigen::Index i = 0; i < n; ++i) {
    mu.points.push_back(0.5 * (panels[i][0] + panels[i][1]));
    mu.panels.push_back(panels[i]);
  }
  mu.weights = wv;

  EnergyReport& rep = out.report;
  rep.iterations = it;
  const Eigen::Map<const Eigen::VectorXd> wn(wv.data(), n);
  rep.J_value = wn.dot(A.K * wn) + 2.0 * wn.dot(A.V);
  double mean = 0.0;
  std::vector<double> mid_vals(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    mid_vals[i] = panel_potential(panels, wv, mu.points[i]) + external_field(mu.points[i]);
    mean += wv[i] * mid_vals[i];
  }
  rep.w_K = mean;
  double sup = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    sup = std::max(sup, std::fabs(mid_vals[i] - mean));
    if (interior_start[i]) {
      const cd x = panels[i][0];
      sup = std::max(sup, std::fabs(panel_potential(panels, wv, x) + external_field(x) - mean));
    }
  }
  rep.residual_sup = sup;
  rep.within_tol = sup <= tol;
  (void)wK;
  return out;
}

namespace {

struct ArcCoord {
  double s;     // arc-length coordinate of the nearest reference point
  double dist;  // distance to the reference polyline
};

ArcCoord locate(const std::vector<cd>& ref, const std::vector<double>& cum, cd z) {
  ArcCoord best{0.0, std::numeric_limits<double>::infinity()};
  for (std::size_t i = 0; i + 1 < ref.size(); ++i) {
    const cd ab = ref[i + 1] - ref[i];
    const double L2 = std::norm(ab);
    double u = L2 > 0 ? std::real((z - ref[i]) * std::conj(ab)) / L2 : 0.0;
    u = std::clamp(u, 0.0, 1.0);
    const double d = std::abs(z - (ref[i] + u * ab));
    if (d < best.dist) best = {cum[i] + u * std::sqrt(L2), d};
  }
  return best;
}

struct Cdf {
  std::vector<double> lo, hi, w;  // point masses have lo == hi
  double penalty = 0.0;
  double near_mass = 0.0;

  // Mass strictly below s (left) or up to s (right).
  double at(double s, bool right) const {
    double F = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (hi[i] <= lo[i]) {
        if (right ? lo[i] <= s : lo[i] < s) F += w[i];
      } else if (s >= hi[i]) {
        F += w[i];
      } else if (s > lo[i]) {
        F += w[i] * (s - lo[i]) / (hi[i] - lo[i]);
      }
    }
    return F;
  }
};

Cdf build_cdf(const DiscreteMeasure& mu, const std::vector<cd>& ref, const std::vector<double>& cum) {
  const double L = cum.back();
  Cdf c;
  for (std::size_t i = 0; i < mu.points.size(); ++i) {
    const ArcCoord p = locate(ref, cum, mu.points[i]);
    double lo = p.s, hi = p.s;
    if (!mu.panels.empty()) {
      const double a = locate(ref, cum, mu.panels[i][0]).s;
      const double b = locate(ref, cum, mu.panels[i][1]).s;
      lo = std::min(a, b);
      hi = std::max(a, b);
    }
    c.lo.push_back(lo);
    c.hi.push_back(hi);
    c.w.push_back(mu.weights[i]);
    c.penalty += mu.weights[i] * std::min(1.0, p.dist / L);
    if (p.dist <= L) c.near_mass += mu.weights[i];
  }
  return c;
}

}  // namespace

double measure_distance(const DiscreteMeasure& mu1, const DiscreteMeasure& mu2, const std::vector<cd>& reference) {
  const DiscreteMeasure a = mu1.projected();
  const DiscreteMeasure b = mu2.projected();
  for (const DiscreteMeasure* m : {&a, &b}) {
    if (m->points.empty() || m->points.size() != m->weights.size())
      throw Error(ErrorCode::BadInput, kModule, "measure is empty or malformed");
    if (std::fabs(m->total_mass() - 1.0) > 1e-9) throw Error(ErrorCode::BadInput, kModule, "measure not normalized");
  }
  if (reference.size() < 2) throw Error(ErrorCode::BadInput, kModule, "reference polyline needs two points");
  std::vector<double> cum(reference.size(), 0.0);
  for (std::size_t i = 1; i < reference.size(); ++i) cum[i] = cum[i - 1] + std::abs(reference[i] - reference[i - 1]);
  if (!(cum.back() > 0)) throw Error(ErrorCode::BadInput, kModule, "degenerate reference polyline");
  const Cdf ca = build_cdf(a, reference, cum);
  const Cdf cb = build_cdf(b, reference, cum);
  if (ca.near_mass == 0.0 || cb.near_mass == 0.0)
    throw Error(ErrorCode::NoCommonArc, kModule, "a measure has no mass near the reference arc");
  std::vector<double> brk;
  for (const Cdf* c : {&ca, &cb}) {
    brk.insert(brk.end(), c->lo.begin(), c->lo.end());
    brk.insert(brk.end(), c->hi.begin(), c->hi.end());
  }
  double ks = 0.0;
  for (double s : brk)
    for (bool right : {false, true}) ks = std::max(ks, std::fabs(ca.at(s, right) - cb.at(s, right)));
  return ks + ca.penalty + cb.penalty;
}

double measure_distance(const DiscreteMeasure& mu1, const DiscreteMeasure& mu2) {
  std::vector<cd> ref;
  for (const DiscreteMeasure* m : {&mu1, &mu2}) {
    if (!m->panels.empty()) {
      const DiscreteMeasure z = m->projected();
      for (const auto& p : z.panels) {
        if (ref.empty() || ref.back() != p[0]) ref.push_back(p[0]);
        ref.push_back(p[1]);
      }
      break;
    }
  }
  if (ref.empty()) {
    const DiscreteMeasure a = mu1.projected(), b = mu2.projected();
    std::vector<cd> all = a.points;
    all.insert(all.end(), b.points.begin(), b.points.end());
    double best = -1.0;
    cd p, q;
    for (cd x : all)
      for (cd y : all)
        if (std::abs(x - y) > best) {
          best = std::abs(x - y);
          p = x;
          q = y;
        }
    if (!(best > 0.0)) return 0.0;
    ref = {p, q};
  }
  return measure_distance(mu1, mu2, ref);
}

}  // namespace sheetlab
