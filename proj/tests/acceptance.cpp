// One line per acceptance criterion; exit status 1 if any criterion fails.
#include "commands.hpp"
#include "sheetlab/ap.hpp"
#include "sheetlab/equilibrium.hpp"
#include "sheetlab/error.hpp"
#include "sheetlab/green.hpp"
#include "sheetlab/hermite_pade.hpp"
#include "sheetlab/io.hpp"
#include "sheetlab/nuttall.hpp"
#include "sheetlab/series.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <iostream>
#include <limits>
#include <sstream>

using namespace sheetlab;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void report(int id, const std::string& name, const std::function<bool(std::ostringstream&)>& body) {
  std::ostringstream detail;
  bool ok = false;
  const auto t0 = Clock::now();
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail << "exception: " << e.what();
    ok = false;
  }
  if (!ok) ++failures;
  std::cout << (ok ? "PASS" : "FAIL") << "  criterion " << id << "  " << name << "  [" << detail.str() << "; "
            << seconds_since(t0) << " s]" << std::endl;
}

FunctionSpec make_spec(const std::string& json_text) { return validate_spec(parse_spec_json(json_text)); }

const char* kRealSpec = R"({"class":"Z","A":[["2","0"],["3","0"]],"alpha":["-1/2","-1/2"]})";
const char* kTwoIntervalSpec =
    R"({"class":"Z2","A":[["0","3"],["0","-3"]],"alpha":["1/2","1/2"],"B":[["0","3"],["0","-3"]],)"
    R"("beta":["-1/2","-1/2"],"intervals":[["-3","-2"],["2","3"]]})";

const std::vector<cd> kSegment{0.5, 1.0 / 3.0};

// Largest coefficient-wise relative error between the germ and the contour oracle.
double germ_oracle_error(const FunctionSpec& spec, int N, int bits) {
  const GermFamily fam = germ_of_family(spec, N, bits);
  double rho = 1.0;
  for (cd z : derived_points(spec).z_branch_points) rho = std::max(rho, std::abs(z));
  const double R = std::max(10.0, 3.0 * rho);
  const int M = 2 * N + 2 + static_cast<int>(std::ceil(1.2 * bits / std::log2(R / rho)));
  const LaurentGerm orc = oracle_coeffs(spec, N, R, M, bits);
  return std::exp2(log2_max_relative_difference(fam.f, orc));
}

int hp_order_at(const FunctionSpec& spec, int k, int n, int bits, HPSolution* out = nullptr) {
  const GermFamily fam = germ_of_family(spec, hp_required_length(k, n) + 8, bits);
  const auto germs = hp_germs(fam, k);
  HPSolution sol = hp_type1(germs, n, bits);
  const int d = residual_order(sol, germs);
  if (out) *out = std::move(sol);
  return d;
}

double segment_distance(cd z, cd a, cd b) {
  const cd ab = b - a;
  const double s = std::clamp(std::real((z - a) * std::conj(ab)) / std::norm(ab), 0.0, 1.0);
  return std::abs(z - (a + s * ab));
}

double hausdorff_polyline_segment(const std::vector<cd>& P, cd a, cd b) {
  double d = 0.0;
  for (cd z : P) d = std::max(d, segment_distance(z, a, b));
  for (int i = 0; i <= 400; ++i) {
    const cd q = a + (b - a) * (i / 400.0);
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j + 1 < P.size(); ++j) best = std::min(best, segment_distance(q, P[j], P[j + 1]));
    d = std::max(d, best);
  }
  return d;
}

struct SegmentCase {
  QuadraticDifferential qd = chebotarev_solve(kSegment);
  CompactSet K = trace_trajectories(qd);
};

}  // namespace

int main() {
  std::cout.precision(6);

  report(1, "germ oracle agreement (N=64, 512 bits)", [](std::ostringstream& d) {
    const auto t0 = Clock::now();
    const FunctionSpec spec = make_spec(kRealSpec);
    const double err = germ_oracle_error(spec, 64, 512);
    const GermFamily fam = germ_of_family(spec, 64, 512);
    PrecisionScope scope(512);
    const Real s6 = boost::multiprecision::sqrt(Real(6));
    const double e0 = Real(abs(fam.f.coeffs[0] - Complex(Real(1) / s6))).convert_to<double>();
    const double e1 = Real(abs(fam.f.coeffs[1] - Complex(Real(5) / (24 * s6)))).convert_to<double>();
    const double t = seconds_since(t0);
    d << "max rel error " << err << ", |c0 - 6^-1/2| " << e0 << ", |c1 - 5/(24 sqrt 6)| " << e1;
    return err <= 1e-30 && e0 <= 1e-20 && e1 <= 1e-20 && t <= 10.0;
  });

  report(2, "Hermite-Pade order contract (n=20, 2048 bits)", [](std::ostringstream& d) {
    const FunctionSpec spec = make_spec(kRealSpec);
    auto t0 = Clock::now();
    const int d3 = hp_order_at(spec, 3, 20, 2048);
    const double t3 = seconds_since(t0);
    t0 = Clock::now();
    const int d4 = hp_order_at(spec, 4, 20, 2048);
    const double t4 = seconds_since(t0);
    d << "k=3 order " << d3 << " (" << t3 << " s), k=4 order " << d4 << " (" << t4 << " s)";
    return d3 >= 42 && d4 >= 63 && t3 <= 120 && t4 <= 120;
  });

  report(3, "Pade denominator zeros on [-1, 1] (n=30)", [](std::ostringstream& d) {
    const auto t0 = Clock::now();
    HPSolution sol;
    hp_order_at(make_spec(kRealSpec), 2, 30, 2048, &sol);
    const ZeroSet zs = polyroots(sol.polys[1], std::pow(2.0, -1024), 2048);
    double worst = 0.0;
    for (cd z : zs.roots_cd()) worst = std::max(worst, segment_distance(z, -1.0, 1.0));
    const double t = seconds_since(t0);
    d << zs.roots.size() << " zeros, max distance to E " << worst;
    return !zs.roots.empty() && worst <= 1e-6 && t <= 60;
  });

  report(4, "extremal compact of the real case", [](std::ostringstream& d) {
    const SegmentCase s;
    if (s.K.arcs.size() != 1) {
      d << s.K.arcs.size() << " arcs";
      return false;
    }
    const double hz = hausdorff_polyline_segment(s.K.arcs[0].points, 1.0 / 3.0, 0.5);
    std::vector<cd> proj;
    for (cd t : s.K.arcs[0].points) proj.push_back(SurfacePoint{t}.z());
    const double hp = hausdorff_polyline_segment(proj, 1.25, 5.0 / 3.0);
    d << "Hausdorff to [1/3, 1/2] " << hz << ", projection to [1.25, 5/3] " << hp;
    return hz <= 1e-6 && hp <= 1e-6;
  });

  report(5, "Robin constant log 24 by two routes and candidate ranking", [](std::ostringstream& d) {
    const SegmentCase s;
    const double ga = robin_abelian(s.qd);
    const double gc = EquilibriumCharge(s.K).robin();
    std::vector<CompactSet> cands{s.K};
    for (double bulge : {0.2, 0.5, 1.0}) {
      CompactSet c;
      c.arcs.push_back(circular_arc(kSegment[1], kSegment[0], bulge));
      cands.push_back(c);
    }
    const auto ranked = robin_compare(kSegment, cands);
    const double L = std::log(24.0);
    d << "abelian error " << std::fabs(ga - L) << ", capacity error " << std::fabs(gc - L) << ", ranking";
    for (const auto& r : ranked) d << " " << r.index << ":" << r.robin_gamma;
    return std::fabs(ga - L) <= 1e-8 && std::fabs(gc - L) <= 1e-8 && ranked.size() == 4 && ranked[0].index == 0;
  });

  report(6, "S-property residual", [](std::ostringstream& d) {
    const SegmentCase s;
    const double r = s_property_residual(s.qd, s.K, 1e-5);
    CompactSet bent;
    bent.arcs.push_back(circular_arc(kSegment[1], kSegment[0], 0.5));
    const EquilibriumCharge C(bent);
    const double rb = s_property_residual(bent, [&C](cd z) { return C.green(z); }, 1e-5);
    d << "extremal " << r << ", non-extremal arc " << rb;
    return r <= 1e-4 && rb >= 1e-2;
  });

  report(7, "sheet ordering on 10^4 grid points", [](std::ostringstream& d) {
    const auto t0 = Clock::now();
    const SegmentCase s;
    const NuttallReport r = nuttall_report(ExtremalGreen(s.qd, s.K), GridSpec{});
    const double t = seconds_since(t0);
    d << r.grid_points << " points, min v " << r.min_v1 << " " << r.min_v2 << " " << r.min_v3 << ", max |sum u| "
      << r.max_sum_abs << ", slope " << std::setprecision(15) << r.slope_u1;
    return r.grid_points == 10000 && r.gaps_positive() && r.max_sum_abs <= 1e-10 &&
           std::fabs(r.slope_u1 + 3.0) <= 1e-4 && t <= 300;
  });

  report(8, "equilibrium constancy and refinement", [](std::ostringstream& d) {
    const SegmentCase s;
    const EquilibriumSolution a = solve_equilibrium(s.K, kSegment, 200, 1e-3);
    const EquilibriumSolution b = solve_equilibrium(s.K, kSegment, 400, 1e-3);
    const double ratio = a.report.residual_sup / b.report.residual_sup;
    d << "residual N=200 " << a.report.residual_sup << ", N=400 " << b.report.residual_sup << ", ratio " << ratio;
    return b.report.residual_sup <= 1e-3 && ratio >= 2.0;
  });

  report(9, "zero counting measure against the projected equilibrium measure (n=40)", [](std::ostringstream& d) {
    const SegmentCase s;
    const EquilibriumSolution eq = solve_equilibrium(s.K, kSegment, 400, 1e-3);
    HPSolution sol;
    hp_order_at(make_spec(kRealSpec), 3, 40, 2560, &sol);
    const auto [zs, mu] = polyroots_and_measure(sol.polys[2], std::pow(2.0, -1280), 2560);
    const double dist = measure_distance(mu, eq.measure);
    d << "degree " << zs.roots.size() << ", distance " << dist;
    return dist <= 0.05;
  });

  report(10, "two-interval pipeline", [](std::ostringstream& d) {
    const FunctionSpec spec = make_spec(kTwoIntervalSpec);
    const double err = germ_oracle_error(spec, 64, 512);
    const int d3 = hp_order_at(spec, 3, 20, 2048);
    const int d4 = hp_order_at(spec, 4, 20, 2048);
    const fs::path dir = fs::temp_directory_path() / "sheetlab_acceptance";
    fs::remove_all(dir);
    const std::string spec_path = (dir / "two_interval.json").string();
    write_atomic(spec_path, kTwoIntervalSpec);
    const std::string out = (dir / "figure").string();
    const char* argv[] = {"sheetlab", "figure-data", "--spec", spec_path.c_str(), "--n", "20", "--out", out.c_str()};
    std::ostringstream cout_, cerr_;
    const int code = cli::run(8, argv, cout_, cerr_);
    bool disjoint = false;
    double gap = -1.0;
    if (code == 0) {
      const auto fig = nlohmann::json::parse(read_file(out + "/figure.json"));
      disjoint = fig.at("q_cloud_disjoint_from_intervals").get<bool>();
      gap = fig.at("q").at("cloud_min_distance_to_cuts").get<double>();
    }
    d << "germ rel error " << err << ", orders " << d3 << " " << d4 << ", figure-data exit " << code
      << ", q zeros to intervals " << gap;
    if (code != 0) d << " (" << cerr_.str() << ")";
    return err <= 1e-30 && d3 >= 42 && d4 >= 63 && code == 0 && disjoint && fs::exists(out + "/q_zeros.csv");
  });

  std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criteria fail") << std::endl;
  return failures == 0 ? 0 : 1;
}
