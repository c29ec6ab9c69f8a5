#include "sheetlab/hermite_pade.hpp"

#include "sheetlab/error.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace sheetlab {

namespace {

constexpr const char* kModule = "hermite_pade";

// Scalar traits shared by the real and complex factorizations.
inline Real mag2(const Real& x) { return x * x; }
inline Real mag2(const Complex& x) { return norm(x); }
inline Real conj_t(const Real& x) { return x; }
inline Complex conj_t(const Complex& x) { return conj(x); }
inline Real phase_of(const Real& x) { return x < 0 ? Real(-1) : Real(1); }
inline Complex phase_of(const Complex& x) {
  Real m = abs(x);
  return m == 0 ? Complex(1) : x / m;
}
inline Complex as_complex(const Real& x) { return Complex(x); }
inline Complex as_complex(const Complex& x) { return x; }
template <class T> T from_complex(const Complex& c);
template <> Real from_complex<Real>(const Complex& c) { return c.re; }
template <> Complex from_complex<Complex>(const Complex& c) { return c; }

double log2_of(const Real& x) {
  if (x == 0) return -1e300;
  long e = 0;
  double m = boost::multiprecision::frexp(x, &e).convert_to<double>();
  return std::log2(std::fabs(m)) + static_cast<double>(e);
}

template <class T>
struct Matrix {
  int rows = 0, cols = 0;
  std::vector<T> a;
  T& operator()(int r, int c) { return a[static_cast<std::size_t>(r) * cols + c]; }
  const T& operator()(int r, int c) const { return a[static_cast<std::size_t>(r) * cols + c]; }
};

// Householder QR with column pivoting; returns the permutation. On exit the upper
// trapezoid of m holds R.
template <class T>
std::vector<int> pivoted_qr(Matrix<T>& m) {
  std::vector<int> perm(m.cols);
  std::iota(perm.begin(), perm.end(), 0);
  const int steps = std::min(m.rows, m.cols);
  for (int s = 0; s < steps; ++s) {
    int best = s;
    Real best_norm = -1;
    for (int c = s; c < m.cols; ++c) {
      Real acc = 0;
      for (int r = s; r < m.rows; ++r) acc += mag2(m(r, c));
      if (acc > best_norm) {
        best_norm = acc;
        best = c;
      }
    }
    if (best != s) {
      for (int r = 0; r < m.rows; ++r) std::swap(m(r, s), m(r, best));
      std::swap(perm[s], perm[best]);
    }
    Real xnorm = boost::multiprecision::sqrt(best_norm);
    if (xnorm == 0) continue;
    T alpha = phase_of(m(s, s)) * Real(-xnorm);
    std::vector<T> v(m.rows - s);
    for (int r = s; r < m.rows; ++r) v[r - s] = m(r, s);
    v[0] = v[0] - alpha;
    Real vnorm2 = 0;
    for (const auto& x : v) vnorm2 += mag2(x);
    if (vnorm2 == 0) continue;
    Real two_over = Real(2) / vnorm2;
    for (int c = s + 1; c < m.cols; ++c) {
      T w = T(0);
      for (int r = s; r < m.rows; ++r) w = w + conj_t(v[r - s]) * m(r, c);
      w = w * two_over;
      for (int r = s; r < m.rows; ++r) m(r, c) = m(r, c) - v[r - s] * w;
    }
    m(s, s) = alpha;
    for (int r = s + 1; r < m.rows; ++r) m(r, s) = T(0);
  }
  return perm;
}

// Kernel vector of R (rank x cols) with the free column `t` set to 1.
template <class T>
std::vector<T> back_substitute(const Matrix<T>& R, int rank, int t) {
  std::vector<T> x(R.cols, T(0));
  x[t] = T(1);
  for (int i = rank - 1; i >= 0; --i) {
    T acc = T(0);
    for (int j = i + 1; j < R.cols; ++j) acc = acc + R(i, j) * x[j];
    x[i] = -acc / R(i, i);
  }
  return x;
}

std::vector<Poly> split_polys(const std::vector<Complex>& x, int k, int n) {
  std::vector<Poly> polys(k, Poly(n + 1));
  for (int j = 0; j < k; ++j)
    for (int i = 0; i <= n; ++i) polys[j][i] = x[static_cast<std::size_t>(j) * (n + 1) + i];
  return polys;
}

void normalize(std::vector<Poly>& polys, int bits) {
  Real mx = 0;
  for (const auto& p : polys)
    for (const auto& c : p) mx = std::max(mx, abs(c));
  const Real thr = mx * boost::multiprecision::pow(Real(2), -bits / 2);
  for (int j = static_cast<int>(polys.size()) - 1; j >= 0; --j) {
    for (int i = static_cast<int>(polys[j].size()) - 1; i >= 0; --i) {
      if (abs(polys[j][i]) > thr) {
        Complex s = polys[j][i];
        for (auto& p : polys)
          for (auto& c : p) c = c / s;
        polys[j][i] = Complex(1);
        return;
      }
    }
  }
}

template <class T>
HPSolution solve_system(const std::vector<LaurentGerm>& germs, int n, int bits, bool real) {
  const int k = static_cast<int>(germs.size());
  const int L = hp_order(k, n);
  Matrix<T> m;
  m.cols = k * (n + 1);
  m.rows = m.cols - 1;
  m.a.assign(static_cast<std::size_t>(m.rows) * m.cols, T(0));
  // Row for z^mexp, mexp = n, n-1, ..., -(L-1): sum_j sum_i q_{j,i} F_j[i - mexp].
  for (int r = 0; r < m.rows; ++r) {
    const int mexp = n - r;
    for (int j = 0; j < k; ++j)
      for (int i = 0; i <= n; ++i) {
        const int idx = i - mexp;
        if (idx >= 0) {
          T v = from_complex<T>(germs[j].coeffs[idx]);
          set_precision(v, bits);
          m(r, j * (n + 1) + i) = std::move(v);
        }
      }
  }
  std::vector<int> perm = pivoted_qr(m);

  HPSolution sol;
  sol.k = k;
  sol.n = n;
  sol.precision_bits = bits;
  sol.real_arithmetic = real;
  sol.achieved_order = L;
  Real r00 = boost::multiprecision::sqrt(mag2(m(0, 0)));
  const double thr = -bits / 2.0;
  int rank = 0;
  for (int i = 0; i < m.rows; ++i) {
    Real rii = boost::multiprecision::sqrt(mag2(m(i, i)));
    if (r00 > 0 && log2_of(rii) - log2_of(r00) >= thr) rank = i + 1;
  }
  sol.last_pivot_ratio =
      m.rows > 0 ? log2_of(boost::multiprecision::sqrt(mag2(m(m.rows - 1, m.rows - 1)))) - log2_of(r00) : 0.0;
  if (r00 == 0) rank = 0;
  const bool degenerate = rank < m.rows;
  sol.degenerate_kernel = degenerate;

  for (int t = rank; t < m.cols; ++t) {
    std::vector<T> y = back_substitute(m, rank, t);
    std::vector<Complex> x(m.cols);
    for (int c = 0; c < m.cols; ++c) x[perm[c]] = as_complex(y[c]);
    std::vector<Poly> polys = split_polys(x, k, n);
    normalize(polys, bits);
    if (t == rank) sol.polys = polys;
    if (degenerate) sol.kernel.push_back(std::move(polys));
    if (!degenerate) break;
  }
  return sol;
}

}  // namespace

int hp_order(int k, int n) { return (k - 1) * (n + 1); }

int hp_required_length(int k, int n) { return k * (n + 1) - 1; }

std::vector<LaurentGerm> hp_germs(const GermFamily& fam, int k) {
  if (k < 2 || k > 4) throw Error(ErrorCode::BadInput, kModule, "k must be 2, 3 or 4");
  PrecisionScope scope(fam.f.precision_bits);
  LaurentGerm one;
  one.precision_bits = fam.f.precision_bits;
  one.coeffs.assign(fam.f.coeffs.size(), Complex());
  one.coeffs[0] = Complex(1);
  std::vector<LaurentGerm> g{one, fam.f, fam.f2, fam.f3};
  g.resize(k);
  return g;
}

HPSolution hp_type1(const std::vector<LaurentGerm>& germs, int n, int precision_bits) {
  const int k = static_cast<int>(germs.size());
  if (k < 2 || k > 4) throw Error(ErrorCode::BadInput, kModule, "family size must be 2, 3 or 4");
  if (n < 0) throw Error(ErrorCode::BadInput, kModule, "n must be >= 0");
  const int need = hp_required_length(k, n);
  for (int j = 0; j < k; ++j)
    if (static_cast<int>(germs[j].coeffs.size()) < need)
      throw Error(ErrorCode::InsufficientGermLength, kModule,
                  "germ " + std::to_string(j) + " has " + std::to_string(germs[j].coeffs.size()) +
                      " coefficients, need " + std::to_string(need));
  PrecisionScope scope(precision_bits);
  double imag = 0.0;
  for (const auto& g : germs) imag = std::max(imag, g.imag_ratio());
  const bool real = imag <= std::ldexp(1.0, -precision_bits / 2);
  return real ? solve_system<Real>(germs, n, precision_bits, true)
              : solve_system<Complex>(germs, n, precision_bits, false);
}

int residual_order(const HPSolution& sol, const std::vector<LaurentGerm>& germs) {
  const int k = sol.k, n = sol.n;
  PrecisionScope scope(sol.precision_bits);
  std::size_t len = germs[0].coeffs.size();
  for (const auto& g : germs) len = std::min(len, g.coeffs.size());
  // Coefficient of z^m needs F_j[i - m] for i <= n: available for m >= n + 1 - len.
  const int m_low = n + 1 - static_cast<int>(len);
  const Real rel = boost::multiprecision::pow(Real(2), -sol.precision_bits / 4);
  std::vector<Complex> cs;
  std::vector<Real> scales;
  Real global = 0;
  for (int m = n; m >= m_low; --m) {
    Complex c;
    Real scale = 0;
    for (int j = 0; j < k; ++j)
      for (int i = 0; i <= n; ++i) {
        const int idx = i - m;
        if (idx < 0) continue;
        Complex q = sol.polys[j][i], g = germs[j].coeffs[idx];
        set_precision(q, sol.precision_bits);
        set_precision(g, sol.precision_bits);
        Complex term = q * g;
        c += term;
        scale += abs(term);
      }
    global = std::max(global, scale);
    cs.push_back(c);
    scales.push_back(scale);
  }
  // Coefficients whose every term sits at roundoff level relative to the whole
  // residual count as vanishing.
  const Real floor = rel * rel * global;
  int d = 0;
  for (int m = n; m >= m_low; --m) {
    const std::size_t at = static_cast<std::size_t>(n - m);
    const Real ac = abs(cs[at]);
    const bool small = ac <= rel * scales[at] || ac <= floor;
    if (!small) {
      d = m > 0 ? 0 : -m;
      break;
    }
    if (m <= 0) d = -m + 1;
  }
  if (d < hp_order(k, n))
    throw Error(ErrorCode::OrderShortfall, kModule,
                "certified order " + std::to_string(d) + " < " + std::to_string(hp_order(k, n)));
  return d;
}

int poly_degree(const Poly& p, int precision_bits) {
  PrecisionScope scope(precision_bits);
  Real mx = 0;
  for (const auto& c : p) mx = std::max(mx, abs(c));
  const Real thr = mx * boost::multiprecision::pow(Real(2), -precision_bits / 2);
  for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
    if (abs(p[i]) > thr) return i;
  return -1;
}

std::vector<std::complex<double>> ZeroSet::roots_cd() const {
  std::vector<std::complex<double>> out;
  for (const auto& r : roots) out.push_back(to_cd(r));
  return out;
}

namespace {

struct AberthResult {
  std::vector<Complex> roots;
  bool converged = false;
};

std::vector<std::complex<double>> companion_seeds(const Poly& p, int deg) {
  std::vector<std::complex<double>> seeds;
  Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(deg, deg);
  const std::complex<double> lead = to_cd(p[deg]);
  bool finite = std::isfinite(std::abs(lead)) && std::abs(lead) > 0;
  for (int i = 0; i < deg && finite; ++i) {
    std::complex<double> c = -to_cd(p[i] / p[deg]);
    finite = std::isfinite(c.real()) && std::isfinite(c.imag());
    C(0, deg - 1 - i) = c;
  }
  for (int i = 1; i < deg; ++i) C(i, i - 1) = 1.0;
  if (finite) {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(C, false);
    if (es.info() == Eigen::Success)
      for (int i = 0; i < deg; ++i) seeds.push_back(es.eigenvalues()(i));
  }
  bool ok = static_cast<int>(seeds.size()) == deg;
  for (auto s : seeds) ok = ok && std::isfinite(s.real()) && std::isfinite(s.imag());
  if (!ok) {
    // Circle of radius from the coefficient ratio bound.
    double r = std::pow(std::max(1e-300, std::abs(to_cd(p[0] / p[deg]))), 1.0 / deg);
    if (!std::isfinite(r) || r == 0) r = 1.0;
    seeds.clear();
    for (int i = 0; i < deg; ++i) seeds.push_back(std::polar(r, 2 * M_PI * (i + 0.25) / deg));
  }
  // Aberth needs pairwise distinct seeds.
  for (int i = 0; i < deg; ++i)
    for (int j = 0; j < i; ++j)
      if (std::abs(seeds[i] - seeds[j]) <= 1e-10 * (1.0 + std::abs(seeds[i])))
        seeds[i] += std::polar(1e-6 * (1.0 + std::abs(seeds[i])), 0.7 + i);
  return seeds;
}

AberthResult aberth(const Poly& p, int deg, int bits) {
  PrecisionScope scope(bits);
  AberthResult res;
  for (auto s : companion_seeds(p, deg)) res.roots.push_back(from_cd(s));
  const Real eps = boost::multiprecision::pow(Real(2), -(bits - 16));
  const int max_iter = 100 + 20 * deg;
  std::vector<bool> done(deg, false);
  for (int it = 0; it < max_iter; ++it) {
    bool all = true;
    for (int i = 0; i < deg; ++i) {
      if (done[i]) continue;
      const Complex& z = res.roots[i];
      Complex v = p[deg], dv(0);
      Real az0 = abs(z), bound = abs(p[deg]);
      for (int j = deg - 1; j >= 0; --j) {
        dv = dv * z + v;
        v = v * z + p[j];
        bound = bound * az0 + abs(p[j]);
      }
      // Residual at rounding level: further steps only wander (multiple roots).
      if (abs(v) <= eps * bound) {
        done[i] = true;
        continue;
      }
      Complex ratio = v / dv;
      Complex sum(0);
      for (int j = 0; j < deg; ++j)
        if (j != i) sum += reciprocal(z - res.roots[j]);
      Complex w = ratio / (Complex(1) - ratio * sum);
      res.roots[i] -= w;
      Real az = abs(res.roots[i]);
      if (abs(w) <= eps * (az > 1 ? az : Real(1)))
        done[i] = true;
      else
        all = false;
    }
    if (all) {
      res.converged = true;
      break;
    }
  }
  return res;
}

Real backward_error(const Poly& p, int deg, const Complex& z) {
  Complex v(0);
  Real s = 0, az = abs(z);
  for (int j = deg; j >= 0; --j) {
    v = v * z + p[j];
    s = s * az + abs(p[j]);
  }
  return s == 0 ? Real(0) : abs(v) / s;
}

}  // namespace

ZeroSet polyroots(const Poly& poly, double tol, int precision_bits) {
  PrecisionScope scope(precision_bits);
  const int deg = poly_degree(poly, precision_bits);
  if (deg < 1) throw Error(ErrorCode::BadInput, kModule, "polynomial degree must be >= 1");
  Poly p(poly.begin(), poly.begin() + deg + 1);
  set_precision_all(p, precision_bits);
  // Exact zero roots.
  int zero_mult = 0;
  while (zero_mult < deg && p[zero_mult].re == 0 && p[zero_mult].im == 0) ++zero_mult;
  Poly q(p.begin() + zero_mult, p.end());
  const int qdeg = deg - zero_mult;

  ZeroSet zs;
  std::vector<Complex> roots;
  int bits = precision_bits;
  if (qdeg > 0) {
    AberthResult ar = aberth(q, qdeg, bits);
    if (!ar.converged) {
      bits *= 2;
      ar = aberth(q, qdeg, bits);
      if (!ar.converged)
        throw Error(ErrorCode::NoConvergence, kModule,
                    "Aberth iteration cap reached at " + std::to_string(bits) + " bits");
    }
    roots = std::move(ar.roots);
  }
  PrecisionScope inner(bits);
  double worst = 0.0;
  for (const auto& r : roots) worst = std::max(worst, backward_error(q, qdeg, r).convert_to<double>());
  for (int i = 0; i < zero_mult; ++i) roots.emplace_back();
  // Deterministic order: by real part, then imaginary part.
  std::sort(roots.begin(), roots.end(), [](const Complex& a, const Complex& b) {
    return a.re < b.re || (a.re == b.re && a.im < b.im);
  });
  // Group coincident roots into multiplicities.
  const Real cluster = boost::multiprecision::pow(Real(2), -bits / 4);
  for (const auto& r : roots) {
    bool merged = false;
    for (std::size_t i = 0; i < zs.roots.size(); ++i) {
      Real scale = std::max(Real(1), abs(r));
      if (abs(zs.roots[i] - r) <= cluster * scale) {
        ++zs.multiplicities[i];
        merged = true;
        break;
      }
    }
    if (!merged) {
      zs.roots.push_back(r);
      zs.multiplicities.push_back(1);
    }
  }
  zs.residual_bound = worst;
  zs.precision_bits = bits;
  if (worst > tol)
    throw Error(ErrorCode::NoConvergence, kModule,
                "residual bound " + std::to_string(worst) + " exceeds tol " + std::to_string(tol));
  return zs;
}

std::pair<ZeroSet, DiscreteMeasure> polyroots_and_measure(const Poly& poly, double tol,
                                                          int precision_bits) {
  ZeroSet zs = polyroots(poly, tol, precision_bits);
  int deg = 0;
  for (int m : zs.multiplicities) deg += m;
  DiscreteMeasure mu;
  mu.plane = Plane::Z;
  for (std::size_t i = 0; i < zs.roots.size(); ++i) {
    mu.points.push_back(to_cd(zs.roots[i]));
    mu.weights.push_back(static_cast<double>(zs.multiplicities[i]) / deg);
  }
  return {std::move(zs), std::move(mu)};
}

}  // namespace sheetlab
