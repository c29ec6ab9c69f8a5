#include "sheetlab/scurve.hpp"

#include "detail/gauss.hpp"
#include "sheetlab/error.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace sheetlab {

namespace {

constexpr const char* kModule = "scurve";
constexpr double kPi = 3.14159265358979323846;

double cross(cd a, cd b) { return a.real() * b.imag() - a.imag() * b.real(); }

bool on_segment(cd p, cd q, cd r) {
  return std::min(p.real(), q.real()) <= r.real() && r.real() <= std::max(p.real(), q.real()) &&
         std::min(p.imag(), q.imag()) <= r.imag() && r.imag() <= std::max(p.imag(), q.imag());
}

bool segments_intersect(cd p1, cd p2, cd q1, cd q2) {
  const double d1 = cross(p2 - p1, q1 - p1);
  const double d2 = cross(p2 - p1, q2 - p1);
  const double d3 = cross(q2 - q1, p1 - q1);
  const double d4 = cross(q2 - q1, p2 - q1);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) return true;
  if (d1 == 0 && on_segment(p1, p2, q1)) return true;
  if (d2 == 0 && on_segment(p1, p2, q2)) return true;
  if (d3 == 0 && on_segment(q1, q2, p1)) return true;
  if (d4 == 0 && on_segment(q1, q2, p2)) return true;
  return false;
}

double point_segment_distance(cd p, cd a, cd b) {
  const cd ab = b - a;
  const double L2 = std::norm(ab);
  if (L2 == 0.0) return std::abs(p - a);
  double s = std::real((p - a) * std::conj(ab)) / L2;
  s = std::clamp(s, 0.0, 1.0);
  return std::abs(p - (a + s * ab));
}

bool lex_less(cd a, cd b) { return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag()); }

int nearest_index(const std::vector<cd>& pts, cd t) {
  int best = -1;
  double bd = std::numeric_limits<double>::infinity();
  for (int i = 0; i < static_cast<int>(pts.size()); ++i) {
    const double d = std::abs(pts[i] - t);
    if (d < bd) {
      bd = d;
      best = i;
    }
  }
  return best;
}

// Value of F with the sign chosen by continuity from the previous call.
class BranchTracker {
 public:
  explicit BranchTracker(const QuadraticDifferential& qd) : qd_(qd) {}

  cd operator()(cd t) {
    cd f = std::sqrt(qd_.F2(t));
    const cd ref = init_ ? prev_ : qd_.F_straight(t);
    if (std::abs(f - ref) > std::abs(f + ref)) f = -f;
    prev_ = f;
    init_ = true;
    return f;
  }
  void seed(cd f) {
    prev_ = f;
    init_ = true;
  }

 private:
  const QuadraticDifferential& qd_;
  cd prev_{};
  bool init_ = false;
};

cd integrate_polyline(const QuadraticDifferential& qd, BranchTracker& tr, const std::vector<cd>& path,
                      bool start_at_branch, bool end_at_branch) {
  const auto& g = detail::UnitGauss<20>::get();
  const int nseg = static_cast<int>(path.size()) - 1;
  cd total = 0.0;
  for (int i = 0; i < nseg; ++i) {
    const cd a = path[i];
    const cd b = path[i + 1];
    const double L = std::abs(b - a);
    if (L == 0.0) continue;
    const cd dir = (b - a) / L;
    double s0 = 0.0;
    double s1 = L;
    if (i == 0 && start_at_branch) {
      // t = a + (t1 - a) u^2 absorbs the inverse square-root singularity.
      double ell = std::min(L, 0.4 * qd.branch_distance(a, nearest_index(qd.B_roots, a)));
      if (end_at_branch && nseg == 1) ell = std::min(ell, 0.5 * L);
      const cd d = dir * ell;
      for (int k = 0; k < 20; ++k) {
        const double u = g.x[k];
        total += g.w[k] * tr(a + d * (u * u)) * (2.0 * u) * d;
      }
      s0 = ell;
    }
    if (i == nseg - 1 && end_at_branch) {
      const double ell = std::min(L - s0, 0.4 * qd.branch_distance(b, nearest_index(qd.B_roots, b)));
      s1 = L - ell;
    }
    double s = s0;
    while (s < s1) {
      const double dist = qd.branch_distance(a + dir * s);
      const double step = std::min(s1 - s, 0.4 * dist);
      if (!(step > 1e-14 * L))
        throw Error(ErrorCode::PathCrossesCut, kModule, "integration path runs into a branch point");
      const cd d = dir * step;
      for (int k = 0; k < 20; ++k) total += g.w[k] * tr(a + dir * s + d * g.x[k]) * d;
      s += step;
    }
    if (i == nseg - 1 && end_at_branch) {
      const cd t1 = a + dir * s1;
      const cd d = t1 - b;
      for (int k = 19; k >= 0; --k) {
        const double u = g.x[k];
        total -= g.w[k] * tr(b + d * (u * u)) * (2.0 * u) * d;
      }
    }
  }
  return total;
}

// Minimal distance from the other branch points to the polyline.
double clearance(const QuadraticDifferential& qd, const std::vector<cd>& path, int skip_a, int skip_b) {
  double c = std::numeric_limits<double>::infinity();
  for (int k = 0; k < static_cast<int>(qd.B_roots.size()); ++k) {
    if (k == skip_a || k == skip_b) continue;
    for (std::size_t i = 0; i + 1 < path.size(); ++i)
      c = std::min(c, point_segment_distance(qd.B_roots[k], path[i], path[i + 1]));
  }
  return c;
}

// Straight path, or a one-vertex detour when another branch point lies close to it.
std::vector<cd> routed_path(const QuadraticDifferential& qd, cd a, cd b, int skip_a, int skip_b) {
  std::vector<cd> straight{a, b};
  const double L = std::abs(b - a);
  double best = clearance(qd, straight, skip_a, skip_b);
  if (best >= 0.05 * L) return straight;
  std::vector<cd> chosen = straight;
  const cd n = cd(0, 1) * (b - a);
  for (double off : {0.3, -0.3, 0.6, -0.6}) {
    std::vector<cd> p{a, 0.5 * (a + b) + off * n, b};
    const double c = clearance(qd, p, skip_a, skip_b);
    if (c > best) {
      best = c;
      chosen = p;
    }
  }
  return chosen;
}

cd poly_P(const std::vector<cd>& v, cd t) {
  cd p = 1.0;
  for (cd vi : v) p *= t - vi;
  return p;
}

}  // namespace

cd QuadraticDifferential::F2(cd t) const {
  cd num = 1.0;
  for (cd v : V_double_zeros) num *= (t - v) * (t - v);
  cd den = 1.0;
  for (cd a : B_roots) den *= t - a;
  return num / den;
}

cd QuadraticDifferential::F_straight(cd t) const {
  cd den = 1.0;
  for (const auto& [i, j] : pairing) {
    const cd m = 0.5 * (B_roots[i] + B_roots[j]);
    const cd h = 0.5 * (B_roots[j] - B_roots[i]);
    const cd x = t - m;
    if (x == 0.0) {
      den *= std::sqrt(-h * h);
      continue;
    }
    den *= x * std::sqrt(1.0 - (h * h) / (x * x));
  }
  return poly_P(V_double_zeros, t) / den;
}

double QuadraticDifferential::branch_distance(cd t, int skip) const {
  double d = std::numeric_limits<double>::infinity();
  for (int k = 0; k < static_cast<int>(B_roots.size()); ++k)
    if (k != skip) d = std::min(d, std::abs(t - B_roots[k]));
  return d;
}

double QuadraticDifferential::singular_distance(cd t) const {
  double d = branch_distance(t);
  for (cd v : V_double_zeros) d = std::min(d, std::abs(t - v));
  return d;
}

double Arc::length() const {
  double L = 0.0;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) L += std::abs(points[i + 1] - points[i]);
  return L;
}

cd abelian_integral(const QuadraticDifferential& qd, const std::vector<cd>& path, bool start_at_branch,
                    bool end_at_branch, cd* end_F) {
  if (path.size() < 2) throw Error(ErrorCode::BadInput, kModule, "path needs two vertices");
  BranchTracker tr(qd);
  const cd I = integrate_polyline(qd, tr, path, start_at_branch, end_at_branch);
  if (end_F != nullptr && !end_at_branch) *end_F = tr(path.back());
  return I;
}

AbelianValue green_abelian(const QuadraticDifferential& qd, cd zeta) {
  AbelianValue out;
  const int n = static_cast<int>(qd.B_roots.size());
  for (int k = 0; k < n; ++k) {
    if (std::abs(zeta - qd.B_roots[k]) < 1e-14) {
      out.g = 0.0;
      out.F = cd(std::numeric_limits<double>::infinity(), 0.0);
      return out;
    }
  }
  std::vector<cd> best_path;
  double best = -1.0;
  for (int j = 0; j < n; ++j) {
    std::vector<cd> path = routed_path(qd, qd.B_roots[j], zeta, j, -1);
    const double c = clearance(qd, path, j, -1) / (1.0 + std::abs(zeta - qd.B_roots[j]));
    if (c > best) {
      best = c;
      best_path = std::move(path);
    }
  }
  cd F;
  const cd Phi = abelian_integral(qd, best_path, true, false, &F);
  out.g = Phi.real();
  out.F = F;
  if (out.g < 0.0) {
    out.g = -out.g;
    out.F = -F;
  }
  return out;
}

double robin_abelian(const QuadraticDifferential& qd) {
  // Four rotated rays cancel the first three angular harmonics of g - log|zeta|.
  const double Rs[3] = {1e3, 1e4, 1e5};
  double vals[3];
  for (int i = 0; i < 3; ++i) {
    double acc = 0.0;
    for (int k = 0; k < 4; ++k) {
      const cd z = std::polar(Rs[i], kPi / 4 + k * kPi / 2);
      acc += green_abelian(qd, z).g - std::log(Rs[i]);
    }
    vals[i] = acc / 4;
  }
  // Neville extrapolation to 1/R = 0.
  double h[3] = {1 / Rs[0], 1 / Rs[1], 1 / Rs[2]};
  double p01 = (h[1] * vals[0] - h[0] * vals[1]) / (h[1] - h[0]);
  double p12 = (h[2] * vals[1] - h[1] * vals[2]) / (h[2] - h[1]);
  return (h[2] * p01 - h[0] * p12) / (h[2] - h[0]);
}

namespace {

using Matching = std::vector<std::pair<int, int>>;

void enumerate_matchings(std::vector<int>& free, Matching& cur, std::vector<Matching>& out) {
  if (free.empty()) {
    out.push_back(cur);
    return;
  }
  const int a = free.front();
  for (std::size_t i = 1; i < free.size(); ++i) {
    const int b = free[i];
    std::vector<int> rest;
    for (std::size_t k = 1; k < free.size(); ++k)
      if (k != i) rest.push_back(free[k]);
    cur.emplace_back(a, b);
    enumerate_matchings(rest, cur, out);
    cur.pop_back();
  }
}

bool chords_cross(const std::vector<cd>& pts, const Matching& m) {
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = i + 1; j < m.size(); ++j)
      if (segments_intersect(pts[m[i].first], pts[m[i].second], pts[m[j].first], pts[m[j].second]))
        return true;
  return false;
}

// Gauss-Chebyshev value of the loop period i * 2 * int_{-1}^{1} G(m + h x) / sqrt(1 - x^2) dx.
cd loop_period(const QuadraticDifferential& qd, int cut) {
  const auto [ia, ib] = qd.pairing[cut];
  const cd m = 0.5 * (qd.B_roots[ia] + qd.B_roots[ib]);
  const cd h = 0.5 * (qd.B_roots[ib] - qd.B_roots[ia]);
  auto G = [&](cd t) {
    cd den = 1.0;
    for (int l = 0; l < static_cast<int>(qd.pairing.size()); ++l) {
      if (l == cut) continue;
      const auto [ja, jb] = qd.pairing[l];
      const cd ml = 0.5 * (qd.B_roots[ja] + qd.B_roots[jb]);
      const cd hl = 0.5 * (qd.B_roots[jb] - qd.B_roots[ja]);
      const cd x = t - ml;
      den *= x * std::sqrt(1.0 - (hl * hl) / (x * x));
    }
    return poly_P(qd.V_double_zeros, t) / den;
  };
  cd prev = 0.0;
  for (int M = 32; M <= 1 << 14; M *= 2) {
    cd acc = 0.0;
    for (int q = 1; q <= M; ++q) acc += G(m + h * std::cos((2 * q - 1) * kPi / (2 * M)));
    const cd val = cd(0, 2) * acc * (kPi / M);
    if (M > 32 && std::abs(val - prev) <= 1e-14 * (1.0 + std::abs(val))) return val;
    prev = val;
  }
  return prev;
}

struct PeriodProblem {
  const std::vector<cd>& pts;
  Matching matching;
  std::vector<std::vector<cd>> connect_paths;  // from first point of cut 0 to first point of cut k

  QuadraticDifferential make(const std::vector<cd>& v) const {
    QuadraticDifferential qd;
    qd.B_roots = pts;
    qd.pairing = matching;
    qd.V_double_zeros = v;
    return qd;
  }

  Eigen::VectorXd conditions(const std::vector<cd>& v) const {
    const QuadraticDifferential qd = make(v);
    const int p = static_cast<int>(matching.size());
    Eigen::VectorXd c(2 * (p - 1));
    for (int k = 0; k + 1 < p; ++k) c[k] = loop_period(qd, k).real();
    for (int k = 1; k < p; ++k) c[p - 1 + k - 1] = abelian_integral(qd, connect_paths[k - 1], true, true).real();
    return c;
  }
};

std::vector<std::vector<cd>> seeds_for(const std::vector<cd>& pts, const Matching& m) {
  const int p = static_cast<int>(m.size());
  std::vector<cd> mids;
  cd centroid = 0.0;
  for (const auto& [a, b] : m) {
    mids.push_back(0.5 * (pts[a] + pts[b]));
    centroid += mids.back();
  }
  centroid /= static_cast<double>(p);
  std::sort(mids.begin(), mids.end(), [&](cd x, cd y) { return std::arg(x - centroid) < std::arg(y - centroid); });
  std::vector<std::vector<cd>> seeds;
  std::vector<cd> s1, s2;
  for (int i = 0; i + 1 < p; ++i) {
    s1.push_back(0.5 * (mids[i] + mids[i + 1]));
    s2.push_back(centroid + 0.25 * (mids[i] - centroid));
  }
  seeds.push_back(s1);
  seeds.push_back(s2);
  return seeds;
}

bool conjugate_symmetric(const std::vector<cd>& pts, double tol) {
  for (cd a : pts) {
    bool found = false;
    for (cd b : pts) found = found || std::abs(std::conj(a) - b) <= tol;
    if (!found) return false;
  }
  return true;
}

void symmetrize(std::vector<cd>& v) {
  std::vector<cd> out = v;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const int j = nearest_index(v, std::conj(v[i]));
    out[i] = 0.5 * (v[i] + std::conj(v[j]));
    if (std::fabs(out[i].imag()) < 1e-9) out[i] = out[i].real();
  }
  v = out;
}

struct NewtonResult {
  std::vector<cd> v;
  double residual = std::numeric_limits<double>::infinity();
  bool converged = false;
};

NewtonResult newton(const PeriodProblem& prob, std::vector<cd> v, const ScurveOptions& opt, double scale) {
  NewtonResult res;
  const int m = static_cast<int>(v.size());
  auto safe_cond = [&](const std::vector<cd>& x, Eigen::VectorXd& c) {
    try {
      c = prob.conditions(x);
      return c.allFinite();
    } catch (const Error&) {
      return false;
    }
  };
  Eigen::VectorXd c;
  if (!safe_cond(v, c)) return res;
  for (int it = 0; it < opt.max_newton; ++it) {
    const double r = c.lpNorm<Eigen::Infinity>();
    if (r < res.residual) {
      res.residual = r;
      res.v = v;
    }
    if (r <= opt.tol) {
      res.converged = true;
      return res;
    }
    Eigen::MatrixXd J(2 * m, 2 * m);
    const double delta = 1e-7 * scale;
    bool ok = true;
    for (int i = 0; i < m && ok; ++i) {
      for (int part = 0; part < 2 && ok; ++part) {
        std::vector<cd> vp = v;
        vp[i] += part == 0 ? cd(delta, 0) : cd(0, delta);
        Eigen::VectorXd cp;
        ok = safe_cond(vp, cp);
        if (ok) J.col(2 * i + part) = (cp - c) / delta;
      }
    }
    if (!ok) return res;
    const Eigen::VectorXd dx = J.colPivHouseholderQr().solve(-c);
    if (!dx.allFinite()) return res;
    bool accepted = false;
    for (double lam = 1.0; lam > 1e-4; lam *= 0.5) {
      std::vector<cd> vt = v;
      for (int i = 0; i < m; ++i) vt[i] += lam * cd(dx[2 * i], dx[2 * i + 1]);
      Eigen::VectorXd ct;
      if (safe_cond(vt, ct) && ct.lpNorm<Eigen::Infinity>() < r) {
        v = vt;
        c = ct;
        accepted = true;
        break;
      }
    }
    if (!accepted) return res;
  }
  const double r = c.lpNorm<Eigen::Infinity>();
  if (r < res.residual) {
    res.residual = r;
    res.v = v;
  }
  res.converged = res.residual <= opt.tol;
  return res;
}

bool general_position(const QuadraticDifferential& qd, double tol) {
  for (std::size_t i = 0; i < qd.V_double_zeros.size(); ++i) {
    if (qd.branch_distance(qd.V_double_zeros[i]) <= 1e3 * tol) return false;
    for (std::size_t j = i + 1; j < qd.V_double_zeros.size(); ++j)
      if (std::abs(qd.V_double_zeros[i] - qd.V_double_zeros[j]) <= 1e3 * tol) return false;
  }
  return true;
}

}  // namespace

QuadraticDifferential chebotarev_solve(const BranchData& branch, const ScurveOptions& opt) {
  return chebotarev_solve(branch.zeta_images, opt);
}

QuadraticDifferential chebotarev_solve(const std::vector<cd>& pts, const ScurveOptions& opt) {
  const int n = static_cast<int>(pts.size());
  if (n < 2 || n % 2 != 0) throw Error(ErrorCode::BadCount, kModule, "need 2p >= 2 branch points");
  for (cd a : pts)
    if (!(std::abs(a) < 1.0)) throw Error(ErrorCode::BadInput, kModule, "branch images must lie inside the unit disk");
  const int p = n / 2;
  if (p == 1) {
    QuadraticDifferential qd;
    qd.B_roots = pts;
    qd.pairing = {{0, 1}};
    qd.general_position = pts[0] != pts[1];
    return qd;
  }
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  Matching cur;
  std::vector<Matching> all;
  enumerate_matchings(idx, cur, all);
  auto total_length = [&](const Matching& m) {
    double L = 0.0;
    for (const auto& [a, b] : m) L += std::abs(pts[a] - pts[b]);
    return L;
  };
  std::stable_sort(all.begin(), all.end(),
                   [&](const Matching& x, const Matching& y) { return total_length(x) < total_length(y); });
  double scale = 0.0;
  for (cd a : pts)
    for (cd b : pts) scale = std::max(scale, std::abs(a - b));
  const bool symmetric = conjugate_symmetric(pts, 1e-14);

  QuadraticDifferential best;
  double best_gamma = -std::numeric_limits<double>::infinity();
  double best_residual = std::numeric_limits<double>::infinity();
  bool have_valid = false;
  QuadraticDifferential fallback;
  int tried = 0;
  for (const Matching& m : all) {
    if (tried >= opt.max_matchings) break;
    if (chords_cross(pts, m)) continue;
    ++tried;
    PeriodProblem prob{pts, m, {}};
    QuadraticDifferential geom = prob.make({});
    for (int k = 1; k < p; ++k)
      prob.connect_paths.push_back(routed_path(geom, pts[m[0].first], pts[m[k].first], m[0].first, m[k].first));
    for (const auto& seed : seeds_for(pts, m)) {
      NewtonResult nr = newton(prob, seed, opt, scale);
      if (nr.v.empty()) continue;
      if (symmetric && nr.converged) {
        std::vector<cd> sv = nr.v;
        symmetrize(sv);
        const double r = prob.conditions(sv).lpNorm<Eigen::Infinity>();
        if (r <= opt.tol) {
          nr.v = sv;
          nr.residual = r;
        }
      }
      if (nr.residual < best_residual) {
        best_residual = nr.residual;
        fallback = prob.make(nr.v);
        fallback.residual = nr.residual;
      }
      if (!nr.converged) continue;
      QuadraticDifferential qd = prob.make(nr.v);
      qd.residual = nr.residual;
      qd.general_position = general_position(qd, opt.tol);
      if (!qd.general_position) continue;
      try {
        CompactSet K = trace_trajectories(qd, opt);
        const double gamma = robin_abelian(qd);
        if (gamma > best_gamma + 1e-9) {
          best_gamma = gamma;
          best = qd;
          best.near_pole = !K.flags.empty();
          best.flags = K.flags;
          have_valid = true;
        }
      } catch (const Error&) {
        continue;
      }
      break;
    }
  }
  if (have_valid) return best;
  if (best_residual <= opt.tol) {
    fallback.general_position = false;
    fallback.flags.push_back("no converged candidate traced to an admissible arc system");
    return fallback;
  }
  std::ostringstream os;
  os << "no pairing converged; best residual " << best_residual;
  throw Error(ErrorCode::NewtonDiverged, kModule, os.str());
}

namespace {

cd direction(const QuadraticDifferential& qd, cd t, cd ref) {
  const cd f2 = qd.F2(t);
  cd d = std::sqrt(-std::conj(f2) / std::abs(f2));
  if (std::real(d * std::conj(ref)) < 0.0) d = -d;
  return d;
}

Arc trace_one(const QuadraticDifferential& qd, int j, const ScurveOptions& opt, bool& near_pole) {
  const cd e = qd.B_roots[j];
  const int n = static_cast<int>(qd.B_roots.size());
  cd C = poly_P(qd.V_double_zeros, e);
  C *= C;
  for (int k = 0; k < n; ++k)
    if (k != j) C /= e - qd.B_roots[k];
  cd dir = -std::conj(C) / std::abs(C);
  double sd = qd.branch_distance(e, j);
  for (cd v : qd.V_double_zeros) sd = std::min(sd, std::abs(e - v));
  cd t = e + dir * (1e-6 * sd);

  cd F;
  cd Phi = abelian_integral(qd, {e, t}, true, false, &F);
  BranchTracker tr(qd);
  tr.seed(F);
  const auto& g = detail::UnitGauss<8>::get();

  Arc arc;
  arc.from = j;
  arc.points = {e, t};
  const double snap = 10.0 * opt.tol;
  double prev_dist = std::numeric_limits<double>::infinity();
  int prev_near = -1;
  for (int step = 0; step < 400000; ++step) {
    const double h = std::min(opt.step, 0.25 * qd.singular_distance(t));
    const cd k1 = direction(qd, t, dir);
    const cd k2 = direction(qd, t + 0.5 * h * k1, k1);
    const cd k3 = direction(qd, t + 0.5 * h * k2, k2);
    const cd k4 = direction(qd, t + h * k3, k3);
    cd tn = t + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    const cd chord = tn - t;
    for (int k = 0; k < 8; ++k) Phi += g.w[k] * tr(t + chord * g.x[k]) * chord;
    cd Fn = tr(tn);
    cd dn = direction(qd, tn, k4);
    // One Newton correction across the trajectory onto Re Phi = 0.
    const cd nrm = cd(0, 1) * dn;
    const double slope = std::real(Fn * nrm);
    if (slope != 0.0) {
      double delta = -Phi.real() / slope;
      delta = std::clamp(delta, -0.1 * h, 0.1 * h);
      tn += delta * nrm;
      Phi += Fn * (delta * nrm);
      Fn = tr(tn);
      dn = direction(qd, tn, dn);
    }
    t = tn;
    dir = dn;
    arc.points.push_back(t);
    if (std::abs(t) >= 1.0)
      throw Error(ErrorCode::TrajectoryEscaped, kModule, "trajectory left the unit disk");
    if (std::abs(t) <= opt.tol) near_pole = true;
    if (std::abs(t - e) <= snap)
      throw Error(ErrorCode::EndpointMismatch, kModule, "trajectory returned to its starting point");
    const int k = nearest_index(qd.B_roots, t);
    const double dk = std::abs(t - qd.B_roots[k]);
    if (k != j) {
      const bool passed = k == prev_near && dk > prev_dist;
      if (dk <= snap || (passed && prev_dist <= 100.0 * opt.tol)) {
        if (passed) arc.points.pop_back();
        arc.points.back() = qd.B_roots[k];
        arc.to = k;
        return arc;
      }
      if (passed && prev_dist <= 1e-4 * sd)
        throw Error(ErrorCode::EndpointMismatch, kModule, "trajectory missed a branch point");
    }
    prev_near = k;
    prev_dist = dk;
  }
  throw Error(ErrorCode::EndpointMismatch, kModule, "trajectory did not terminate");
}

bool arcs_cross(const Arc& a, const Arc& b) {
  auto bbox = [](const Arc& x, std::size_t i) {
    return std::array<double, 4>{std::min(x.points[i].real(), x.points[i + 1].real()),
                                 std::max(x.points[i].real(), x.points[i + 1].real()),
                                 std::min(x.points[i].imag(), x.points[i + 1].imag()),
                                 std::max(x.points[i].imag(), x.points[i + 1].imag())};
  };
  for (std::size_t i = 0; i + 1 < a.points.size(); ++i) {
    const auto ba = bbox(a, i);
    for (std::size_t k = 0; k + 1 < b.points.size(); ++k) {
      const auto bb = bbox(b, k);
      if (ba[1] < bb[0] || bb[1] < ba[0] || ba[3] < bb[2] || bb[3] < ba[2]) continue;
      if (segments_intersect(a.points[i], a.points[i + 1], b.points[k], b.points[k + 1])) return true;
    }
  }
  return false;
}

void canonicalize(CompactSet& K) {
  for (Arc& a : K.arcs) {
    if (lex_less(a.points.back(), a.points.front())) {
      std::reverse(a.points.begin(), a.points.end());
      std::swap(a.from, a.to);
    }
  }
  std::sort(K.arcs.begin(), K.arcs.end(),
            [](const Arc& x, const Arc& y) { return lex_less(x.points.front(), y.points.front()); });
}

}  // namespace

CompactSet trace_trajectories(const QuadraticDifferential& qd, const ScurveOptions& opt) {
  if (!qd.general_position) throw Error(ErrorCode::NotGeneralPosition, kModule, "quadratic differential is flagged");
  CompactSet K;
  bool near_pole = false;
  for (const auto& [a, b] : qd.pairing) {
    Arc arc = trace_one(qd, a, opt, near_pole);
    if (arc.to != b) {
      std::ostringstream os;
      os << "trajectory from branch point " << a << " landed on " << arc.to << ", expected " << b;
      throw Error(ErrorCode::EndpointMismatch, kModule, os.str());
    }
    K.arcs.push_back(std::move(arc));
  }
  for (std::size_t i = 0; i < K.arcs.size(); ++i)
    for (std::size_t j = i + 1; j < K.arcs.size(); ++j)
      if (arcs_cross(K.arcs[i], K.arcs[j]))
        throw Error(ErrorCode::NotGeneralPosition, kModule, "traced arcs touch");
  if (near_pole) K.flags.push_back("arc passes within tol of zeta = 0");
  canonicalize(K);
  return K;
}

AdmissibilityReport admissibility_check(const CompactSet& K, const FunctionSpec& spec) {
  return admissibility_check(K, derived_points(spec).zeta_images);
}

namespace {

bool is_closed(const Arc& a) {
  return std::abs(a.points.front() - a.points.back()) <= 1e-12 * (1.0 + std::abs(a.points.front()));
}

}  // namespace

AdmissibilityReport admissibility_check(const CompactSet& K, const std::vector<cd>& branch_points) {
  AdmissibilityReport r;
  for (const Arc& a : K.arcs) {
    if (a.points.size() < 2) throw Error(ErrorCode::BadInput, kModule, "arc with fewer than two points");
    const std::size_t m = a.points.size() - 1;
    const bool closed = is_closed(a);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t k = i + 2; k < m; ++k) {
        if (closed && i == 0 && k == m - 1) continue;
        if (segments_intersect(a.points[i], a.points[i + 1], a.points[k], a.points[k + 1]))
          throw Error(ErrorCode::SelfIntersection, kModule, "arc chain intersects itself");
      }
    }
  }
  r.on_second_sheet = true;
  for (const Arc& a : K.arcs)
    for (cd z : a.points) r.on_second_sheet = r.on_second_sheet && std::abs(z) < 1.0;

  std::ostringstream why;
  r.complement_connected = true;
  for (const Arc& a : K.arcs) {
    if (is_closed(a)) {
      r.complement_connected = false;
      why << "closed curve separates the plane; ";
    }
  }
  for (std::size_t i = 0; i < K.arcs.size(); ++i)
    for (std::size_t j = i + 1; j < K.arcs.size(); ++j)
      if (arcs_cross(K.arcs[i], K.arcs[j])) {
        r.complement_connected = false;
        why << "arcs " << i << " and " << j << " cross; ";
      }
  if (r.complement_connected) why << "disjoint simple arcs do not separate; ";

  const double tol = 1e-9;
  std::vector<int> count(branch_points.size(), 0);
  bool endpoints_ok = true;
  for (const Arc& a : K.arcs) {
    if (is_closed(a)) {
      endpoints_ok = false;
      continue;
    }
    for (cd end : {a.points.front(), a.points.back()}) {
      const int k = nearest_index(branch_points, end);
      if (k < 0 || std::abs(branch_points[k] - end) > tol * (1.0 + std::abs(end)))
        endpoints_ok = false;
      else
        ++count[k];
    }
  }
  r.single_valued = endpoints_ok && std::all_of(count.begin(), count.end(), [](int c) { return c == 1; });
  if (!r.single_valued) why << "branch points not covered exactly once by arc endpoints; ";
  if (!r.on_second_sheet) why << "points outside the unit disk; ";
  r.reason = why.str();
  return r;
}

Arc circular_arc(cd a, cd b, double bulge, int samples) {
  Arc arc;
  const cd mid = 0.5 * (a + b);
  const double half = 0.5 * std::abs(b - a);
  if (bulge == 0.0) {
    arc.param = [a, b](double x) { return a + (b - a) * (0.5 * (x + 1.0)); };
  } else {
    const cd nrm = cd(0, 1) * (b - a) / std::abs(b - a);
    const double s = bulge * half;
    const double R = (half * half + s * s) / (2.0 * std::fabs(s));
    const cd center = mid + (s - std::copysign(R, s)) * nrm;
    const double ta = std::arg(a - center);
    const cd apex = mid + s * nrm;
    auto wrap = [](double x) {
      while (x > kPi) x -= 2 * kPi;
      while (x <= -kPi) x += 2 * kPi;
      return x;
    };
    double sweep = wrap(std::arg(b - center) - ta);
    const double tapex = wrap(std::arg(apex - center) - ta);
    if (!(tapex * sweep > 0 && std::fabs(tapex) < std::fabs(sweep))) sweep -= std::copysign(2 * kPi, sweep);
    arc.param = [center, R, ta, sweep](double x) { return center + std::polar(R, ta + 0.5 * (x + 1.0) * sweep); };
  }
  for (int i = 0; i <= samples; ++i) arc.points.push_back(arc.param(-1.0 + 2.0 * i / samples));
  arc.points.front() = a;
  arc.points.back() = b;
  return arc;
}

}  // namespace sheetlab
