#include "commands.hpp"

#include "sheetlab/equilibrium.hpp"
#include "sheetlab/error.hpp"
#include "sheetlab/green.hpp"
#include "sheetlab/hermite_pade.hpp"
#include "sheetlab/io.hpp"
#include "sheetlab/nuttall.hpp"
#include "sheetlab/series.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>

namespace sheetlab::cli {

namespace {

using nlohmann::json;

struct JobConfig {
  std::string command;
  std::string spec_path;
  std::string out_dir = "out";
  std::string grid;
  int n = 0;
  int k = 3;
  int N = 400;
  int precision_bits = 0;
  double tol = 0.0;
};

// A numeric contract was evaluated and failed; artifacts are still written.
struct ContractFailure {
  std::string what;
};

struct Job {
  JobConfig cfg;
  Provenance prov;
  std::ostream& out;
  std::vector<std::string> failures;

  std::string path(const std::string& name) const { return (std::filesystem::path(cfg.out_dir) / name).string(); }
  void write(const std::string& name, const std::string& content) const { write_atomic(path(name), content); }
  void write_json(const std::string& name, json j) const {
    j["command"] = prov.command;
    j["config_hash"] = prov.config_hash;
    write(name, j.dump(2) + "\n");
  }
  CsvWriter csv(std::vector<std::string> header) const { return CsvWriter(prov, std::move(header)); }
  void require(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

bool is_input_error(ErrorCode c) {
  switch (c) {
    case ErrorCode::BadInput:
    case ErrorCode::BadCount:
    case ErrorCode::ModulusTooSmall:
    case ErrorCode::ExponentSumNotInteger:
    case ErrorCode::NotConjugateSymmetric:
    case ErrorCode::DuplicateBranchParameter:
    case ErrorCode::BadIntervalOrder:
    case ErrorCode::NonRealRequired:
    case ErrorCode::DegenerateInterval:
    case ErrorCode::GridTouchesCut:
    case ErrorCode::OffsetTooLarge:
      return true;
    default:
      return false;
  }
}

FunctionSpec load(const JobConfig& cfg) {
  if (cfg.spec_path.empty()) throw Error(ErrorCode::BadInput, "cli", "--spec is required");
  return validate_spec(load_spec(cfg.spec_path));
}

int hp_bits(const JobConfig& cfg, int n) { return cfg.precision_bits > 0 ? cfg.precision_bits : std::max(2048, 64 * n); }

std::string decimal(const Real& x, int bits) { return to_decimal(x, static_cast<int>(digits10_for_bits(bits))); }

json complex_json(const Complex& c, int bits) { return json::array({decimal(c.re, bits), decimal(c.im, bits)}); }
json cd_json(cd z) { return json::array({z.real(), z.imag()}); }

struct GridSpecArg {
  int nx, ny;
  double half_width;
};

GridSpecArg parse_grid(const std::string& s, GridSpecArg def) {
  if (s.empty()) return def;
  GridSpecArg g = def;
  char x = 0, at = 0;
  std::istringstream is(s);
  if (!(is >> g.nx >> x >> g.ny) || (x != 'x' && x != 'X') || g.nx <= 0 || g.ny <= 0)
    throw Error(ErrorCode::BadInput, "cli", "grid must look like 100x100@3.5");
  if (is >> at) {
    if (at != '@' || !(is >> g.half_width) || !(g.half_width > 0))
      throw Error(ErrorCode::BadInput, "cli", "grid must look like 100x100@3.5");
  }
  return g;
}

// ---------------------------------------------------------------- Hermite-Pade

struct HpRun {
  HPSolution sol;
  int order = 0;
  std::vector<ZeroSet> zeros;
  std::vector<DiscreteMeasure> measures;
};

HpRun run_hp(const FunctionSpec& spec, int k, int n, int bits, bool with_roots) {
  HpRun r;
  const GermFamily fam = germ_of_family(spec, hp_required_length(k, n) + 8, bits);
  const std::vector<LaurentGerm> germs = hp_germs(fam, k);
  r.sol = hp_type1(germs, n, bits);
  r.order = residual_order(r.sol, germs);
  if (with_roots) {
    const double tol = std::pow(2.0, -bits / 2.0);
    for (const Poly& p : r.sol.polys) {
      if (poly_degree(p, bits) < 1) {
        r.zeros.emplace_back();
        r.measures.emplace_back();
        continue;
      }
      auto [zs, mu] = polyroots_and_measure(p, std::max(tol, 1e-300), bits);
      r.zeros.push_back(std::move(zs));
      r.measures.push_back(std::move(mu));
    }
  }
  return r;
}

json poly_json(const HpRun& r, int j) {
  const int bits = r.sol.precision_bits;
  json coeffs = json::array();
  for (const Complex& c : r.sol.polys[j]) coeffs.push_back(complex_json(c, bits));
  json doc;
  doc["k"] = r.sol.k;
  doc["n"] = r.sol.n;
  doc["j"] = j;
  doc["precision_bits"] = bits;
  doc["degree"] = poly_degree(r.sol.polys[j], bits);
  doc["normalization"] = r.sol.normalization;
  doc["required_order"] = hp_order(r.sol.k, r.sol.n);
  doc["residual_order"] = r.order;
  doc["real_arithmetic"] = r.sol.real_arithmetic;
  doc["degenerate_kernel"] = r.sol.degenerate_kernel;
  doc["coefficients"] = coeffs;
  return doc;
}

void write_roots(Job& job, const std::string& name, const HpRun& r) {
  CsvWriter w = job.csv({"j", "re", "im", "multiplicity"});
  for (std::size_t j = 0; j < r.zeros.size(); ++j) {
    const auto roots = r.zeros[j].roots_cd();
    for (std::size_t i = 0; i < roots.size(); ++i)
      w.row({std::to_string(j), fmt(roots[i].real()), fmt(roots[i].imag()),
             std::to_string(r.zeros[j].multiplicities[i])});
  }
  job.write(name, w.str());
}

// ---------------------------------------------------------------- extremal compact

struct StahlRun {
  std::vector<cd> branch;
  QuadraticDifferential qd;
  CompactSet K;
  AdmissibilityReport adm;
};

StahlRun run_stahl(const FunctionSpec& spec, double tol) {
  if (spec.cls != SpecClass::SingleInterval)
    throw Error(ErrorCode::BadInput, "cli", "the extremal compact is computed for the single-interval class only");
  StahlRun s;
  s.branch = derived_points(spec).zeta_images;
  ScurveOptions opt;
  if (tol > 0) opt.tol = tol;
  s.qd = chebotarev_solve(s.branch, opt);
  s.K = trace_trajectories(s.qd, opt);
  s.adm = admissibility_check(s.K, s.branch);
  return s;
}

void write_arcs(Job& job, const CompactSet& K) {
  CsvWriter zeta = job.csv({"arc", "s", "re_zeta", "im_zeta"});
  CsvWriter zp = job.csv({"arc", "re_z", "im_z"});
  for (std::size_t a = 0; a < K.arcs.size(); ++a) {
    double s = 0.0;
    const auto& P = K.arcs[a].points;
    for (std::size_t i = 0; i < P.size(); ++i) {
      if (i > 0) s += std::abs(P[i] - P[i - 1]);
      zeta.row({std::to_string(a), fmt(s), fmt(P[i].real()), fmt(P[i].imag())});
      const cd z = SurfacePoint{P[i]}.z();
      zp.row({std::to_string(a), fmt(z.real()), fmt(z.imag())});
    }
  }
  job.write("arcs_zeta.csv", zeta.str());
  job.write("arcs_z.csv", zp.str());
}

json stahl_json(const StahlRun& s) {
  json j;
  json v = json::array(), pairing = json::array(), branch = json::array();
  for (cd z : s.qd.V_double_zeros) v.push_back(cd_json(z));
  for (const auto& [a, b] : s.qd.pairing) pairing.push_back({a, b});
  for (cd z : s.branch) branch.push_back(cd_json(z));
  j["branch_points_zeta"] = branch;
  j["V_double_zeros"] = v;
  j["pairing"] = pairing;
  j["period_residual"] = s.qd.residual;
  j["general_position"] = s.qd.general_position;
  j["flags"] = s.K.flags;
  j["arcs"] = s.K.arcs.size();
  j["admissibility"] = {{"on_second_sheet", s.adm.on_second_sheet},
                        {"complement_connected", s.adm.complement_connected},
                        {"single_valued", s.adm.single_valued},
                        {"reason", s.adm.reason}};
  return j;
}

// Circular-arc perturbations of every arc of the extremal pairing.
std::vector<CompactSet> perturbed_candidates(const StahlRun& s) {
  std::vector<CompactSet> out;
  for (double bulge : {0.2, 0.5, 1.0, -0.3}) {
    CompactSet C;
    for (const auto& [a, b] : s.qd.pairing) C.arcs.push_back(circular_arc(s.branch[a], s.branch[b], bulge));
    if (admissibility_check(C, s.branch).ok()) out.push_back(std::move(C));
  }
  return out;
}

// ---------------------------------------------------------------- commands

void cmd_germ(Job& job) {
  const FunctionSpec spec = load(job.cfg);
  const int N = job.cfg.n > 0 ? job.cfg.n : 64;
  const int bits = job.cfg.precision_bits > 0 ? job.cfg.precision_bits : default_precision_bits(N);
  const GermFamily fam = germ_of_family(spec, N, bits);
  double rho = 1.0;
  for (cd z : derived_points(spec).z_branch_points) rho = std::max(rho, std::abs(z));
  const double R = std::max(10.0, 3.0 * rho);
  const int M = 2 * N + 2 + static_cast<int>(std::ceil(1.2 * bits / std::log2(R / rho)));
  const LaurentGerm orc = oracle_coeffs(spec, N, R, M, bits);
  const double log2_err = log2_max_relative_difference(fam.f, orc);
  json coeffs = json::array();
  for (int k = 0; k <= N; ++k) coeffs.push_back(complex_json(fam.f.coeffs[k], bits));
  json j;
  j["N"] = N;
  j["precision_bits"] = bits;
  j["coefficients"] = coeffs;
  j["oracle"] = {{"radius", R}, {"nodes", M}, {"log2_max_rel_error", std::isfinite(log2_err) ? json(log2_err) : json(nullptr)}, {"log2_limit", -bits / 8.0}};
  job.write_json("germ.json", j);
  job.require(log2_err <= -bits / 8.0, "germ oracle disagreement above 2^(-bits/8)");
  job.out << "germ: N=" << N << " bits=" << bits << " log2_max_rel_error=" << log2_err << "\n";
}

void cmd_hp(Job& job) {
  const FunctionSpec spec = load(job.cfg);
  const int k = job.cfg.k;
  const int n = job.cfg.n > 0 ? job.cfg.n : 20;
  const int bits = hp_bits(job.cfg, n);
  const HpRun r = run_hp(spec, k, n, bits, true);
  for (int j = 0; j < k; ++j)
    job.write_json("Q_" + std::to_string(n) + "_" + std::to_string(j) + ".json", poly_json(r, j));
  write_roots(job, "Q_" + std::to_string(n) + "_roots.csv", r);
  job.out << "hp: k=" << k << " n=" << n << " bits=" << bits << " residual_order=" << r.order
          << " required=" << hp_order(k, n) << "\n";
}

void cmd_stahl(Job& job) {
  const StahlRun s = run_stahl(load(job.cfg), job.cfg.tol);
  json j = stahl_json(s);
  j["robin_gamma"] = robin_abelian(s.qd);
  job.write_json("stahl.json", j);
  write_arcs(job, s.K);
  job.require(s.adm.ok(), "traced compact is not admissible: " + s.adm.reason);
  job.out << "stahl: p=" << s.qd.p() << " arcs=" << s.K.arcs.size() << " residual=" << s.qd.residual
          << " admissible=" << (s.adm.ok() ? "yes" : "no") << "\n";
}

void cmd_green(Job& job) {
  const StahlRun s = run_stahl(load(job.cfg), job.cfg.tol);
  const ExtremalGreen G(s.qd, s.K);
  const GridSpecArg g = parse_grid(job.cfg.grid, {81, 81, 1.0});
  CsvWriter w = job.csv({"re_zeta", "im_zeta", "g"});
  for (int i = 0; i < g.nx; ++i) {
    for (int k = 0; k < g.ny; ++k) {
      const cd z(-g.half_width + 2 * g.half_width * (i + 0.5) / g.nx,
                 -g.half_width + 2 * g.half_width * (k + 0.5) / g.ny);
      w.row(std::vector<double>{z.real(), z.imag(), G.eval(z).g_value});
    }
  }
  job.write("green_grid.csv", w.str());
  std::vector<CompactSet> cands{s.K};
  for (auto& c : perturbed_candidates(s)) cands.push_back(std::move(c));
  const auto ranked = robin_compare(s.branch, cands);
  json rank = json::array();
  for (const auto& rc : ranked) rank.push_back({{"candidate", rc.index}, {"robin_gamma", rc.robin_gamma}});
  double scale = std::numeric_limits<double>::infinity();
  for (const Arc& a : s.K.arcs) scale = std::min(scale, a.length());
  const double h = std::min(1e-5, scale * 1e-4);
  const double sres = s_property_residual(s.qd, s.K, h);
  json j = stahl_json(s);
  j["robin_gamma_abelian"] = G.robin();
  j["robin_gamma_capacity"] = EquilibriumCharge(s.K).robin();
  j["ranking"] = rank;
  j["candidate_0"] = "extremal compact";
  j["s_property_residual"] = sres;
  j["s_property_offset"] = h;
  job.write_json("green.json", j);
  job.require(ranked.front().index == 0, "extremal compact does not have the largest Robin constant");
  job.out << "green: robin_abelian=" << fmt(G.robin()) << " extremal_rank_first=" << (ranked.front().index == 0)
          << " s_residual=" << sres << "\n";
}

void cmd_nuttall(Job& job) {
  const StahlRun s = run_stahl(load(job.cfg), job.cfg.tol);
  const ExtremalGreen G(s.qd, s.K);
  const GridSpecArg g = parse_grid(job.cfg.grid, {100, 100, 3.5});
  GridSpec grid;
  grid.nx = g.nx;
  grid.ny = g.ny;
  grid.half_width = g.half_width;
  const NuttallReport rep = nuttall_report(G, grid);
  CsvWriter w = job.csv({"re_z", "im_z", "u1", "u2", "u3", "u4"});
  for (cd z : grid.points()) {
    const SheetValues v = u_values(z, G);
    w.row(std::vector<double>{z.real(), z.imag(), v.u[0], v.u[1], v.u[2], v.u[3]});
  }
  job.write("nuttall_grid.csv", w.str());
  json j = json::parse(to_json(rep));
  job.write_json("nuttall.json", j);
  job.require(rep.gaps_positive(), "sheet ordering violated on the grid");
  job.require(rep.max_sum_abs <= 1e-10, "sum of sheet values not zero");
  job.require(std::fabs(rep.slope_u1 + 3.0) <= 1e-4, "u1 slope differs from -3");
  job.out << "nuttall: points=" << rep.grid_points << " min_gap="
          << std::min({rep.min_v1, rep.min_v2, rep.min_v3}) << " slope_u1=" << fmt(rep.slope_u1) << "\n";
}

void cmd_equilibrium(Job& job) {
  const FunctionSpec spec = load(job.cfg);
  const StahlRun s = run_stahl(spec, 0.0);
  const double tol = job.cfg.tol > 0 ? job.cfg.tol : 1e-3;
  const EquilibriumSolution sol = solve_equilibrium(s.K, s.branch, job.cfg.N, tol);
  CsvWriter w = job.csv({"re_zeta", "im_zeta", "weight"});
  for (std::size_t i = 0; i < sol.measure.points.size(); ++i)
    w.row(std::vector<double>{sol.measure.points[i].real(), sol.measure.points[i].imag(), sol.measure.weights[i]});
  job.write("equilibrium_measure.csv", w.str());

  const int n = job.cfg.n > 0 ? job.cfg.n : 40;
  const HpRun r = run_hp(spec, 3, n, hp_bits(job.cfg, n), true);
  json dist = json::array();
  for (int jj = 0; jj < 3; ++jj) {
    if (r.measures[jj].points.empty()) {
      dist.push_back(nullptr);
      continue;
    }
    dist.push_back(measure_distance(r.measures[jj], sol.measure));
  }
  json j;
  j["N"] = job.cfg.N;
  j["J_value"] = sol.report.J_value;
  j["w_K"] = sol.report.w_K;
  j["residual_sup"] = sol.report.residual_sup;
  j["tol"] = tol;
  j["within_tol"] = sol.report.within_tol;
  j["hp_n"] = n;
  j["measure_distance_Q"] = dist;
  job.write_json("equilibrium.json", j);
  job.require(sol.report.within_tol, "equilibrium residual above tol");
  job.out << "equilibrium: N=" << job.cfg.N << " residual_sup=" << sol.report.residual_sup
          << " distance_Q2=" << dist[2] << "\n";
}

double distance_to_interval(cd z, double lo, double hi) {
  return std::abs(z - cd(std::clamp(z.real(), lo, hi), 0.0));
}

void cmd_figure_data(Job& job) {
  const FunctionSpec spec = load(job.cfg);
  const int n = job.cfg.n > 0 ? job.cfg.n : 20;
  const int bits = hp_bits(job.cfg, n);
  std::vector<std::pair<double, double>> cuts;
  if (spec.cls == SpecClass::SingleInterval) {
    cuts.emplace_back(-1.0, 1.0);
  } else {
    cuts.emplace_back(exact_to_real(spec.delta1.lo).convert_to<double>(), exact_to_real(spec.delta1.hi).convert_to<double>());
    cuts.emplace_back(exact_to_real(spec.delta2.lo).convert_to<double>(), exact_to_real(spec.delta2.hi).convert_to<double>());
  }
  auto cut_distance = [&](cd z) {
    double d = std::numeric_limits<double>::infinity();
    for (const auto& [lo, hi] : cuts) d = std::min(d, distance_to_interval(z, lo, hi));
    return d;
  };
  std::vector<std::vector<cd>> projected;
  std::optional<StahlRun> stahl;
  if (spec.cls == SpecClass::SingleInterval) {
    stahl = run_stahl(spec, 0.0);
    for (const Arc& a : stahl->K.arcs) {
      std::vector<cd> zs;
      for (cd t : a.points) zs.push_back(SurfacePoint{t}.z());
      projected.push_back(std::move(zs));
    }
  }
  auto compact_distance = [&](cd z) {
    double d = std::numeric_limits<double>::infinity();
    for (const auto& P : projected)
      for (std::size_t i = 0; i + 1 < P.size(); ++i) {
        const cd ab = P[i + 1] - P[i];
        const double s = std::norm(ab) > 0 ? std::clamp(std::real((z - P[i]) * std::conj(ab)) / std::norm(ab), 0.0, 1.0) : 0.0;
        d = std::min(d, std::abs(z - (P[i] + s * ab)));
      }
    return d;
  };
  json j;
  j["n"] = n;
  j["precision_bits"] = bits;
  const char* names[3] = {"pade", "Q", "q"};
  double q_cloud_min = 0.0;
  for (int k = 2; k <= 4; ++k) {
    const HpRun r = run_hp(spec, k, n, bits, true);
    const std::string name = names[k - 2];
    write_roots(job, name + "_zeros.csv", r);
    json fam;
    fam["k"] = k;
    fam["residual_order"] = r.order;
    json per = json::array();
    for (int jj = (k == 2 ? 1 : 0); jj < k; ++jj) {
      double dmin = std::numeric_limits<double>::infinity(), dmax = 0.0;
      for (cd z : r.zeros[jj].roots_cd()) {
        const double d = cut_distance(z);
        dmin = std::min(dmin, d);
        dmax = std::max(dmax, d);
      }
      json entry = {{"j", jj},
                    {"zeros", r.zeros[jj].roots.size()},
                    {"min_distance_to_cuts", r.zeros[jj].roots.empty() ? json(nullptr) : json(dmin)},
                    {"max_distance_to_cuts", r.zeros[jj].roots.empty() ? json(nullptr) : json(dmax)}};
      if (!projected.empty() && !r.zeros[jj].roots.empty()) {
        // Median distance: a few zeros of the non-leading polynomials escape to large modulus.
        std::vector<double> dc;
        for (cd z : r.zeros[jj].roots_cd()) dc.push_back(compact_distance(z));
        std::sort(dc.begin(), dc.end());
        entry["median_distance_to_compact_projection"] = dc[dc.size() / 2];
      }
      per.push_back(entry);
    }
    fam["polynomials"] = per;
    double cloud_min = std::numeric_limits<double>::infinity();
    for (int jj = 0; jj < k; ++jj)
      for (cd z : r.zeros[jj].roots_cd()) cloud_min = std::min(cloud_min, cut_distance(z));
    fam["cloud_min_distance_to_cuts"] = std::isfinite(cloud_min) ? json(cloud_min) : json(nullptr);
    j[name] = fam;
    if (k == 4) q_cloud_min = cloud_min;
  }
  if (stahl) {
    write_arcs(job, stahl->K);
    j["compact_arcs"] = stahl->K.arcs.size();
  } else {
    j["compact_arcs"] = nullptr;
    j["compact_note"] = "the two-interval extremal compact is not computed";
    const bool disjoint = q_cloud_min > 1e-6;
    j["q_cloud_disjoint_from_intervals"] = disjoint;
    job.require(disjoint, "q zero cloud meets an interval");
  }
  job.write_json("figure.json", j);
  job.out << "figure-data: n=" << n << " bits=" << bits << " files in " << job.cfg.out_dir << "\n";
}

std::string canonical_config(const JobConfig& c) {
  std::ostringstream os;
  os << "command=" << c.command << "\nn=" << c.n << "\nk=" << c.k << "\nN=" << c.N << "\nbits=" << c.precision_bits
     << "\ntol=" << fmt(c.tol) << "\ngrid=" << c.grid << "\nspec=\n";
  if (!c.spec_path.empty()) {
    try {
      os << read_file(c.spec_path);
    } catch (const Error&) {
    }
  }
  return os.str();
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hermite-Pade, extremal compact and equilibrium computations for algebraic germs", "sheetlab"};
  app.require_subcommand(1);
  JobConfig cfg;
  struct Cmd {
    const char* name;
    const char* help;
    void (*fn)(Job&);
  };
  const Cmd cmds[] = {
      {"germ", "Laurent germ at infinity with trapezoid-rule cross-check", cmd_germ},
      {"hp", "type I Hermite-Pade polynomials, residual order and zeros", cmd_hp},
      {"stahl", "Chebotarev polynomial, critical trajectories and admissibility", cmd_stahl},
      {"green", "Green function grid, Robin constants and candidate ranking", cmd_green},
      {"nuttall", "sheet ordering of u and asymptotics", cmd_nuttall},
      {"equilibrium", "equilibrium measure and distance to Hermite-Pade zero counts", cmd_equilibrium},
      {"figure-data", "zero clouds of Pade and Hermite-Pade polynomials and the compact projection", cmd_figure_data},
  };
  std::vector<std::pair<CLI::App*, const Cmd*>> subs;
  for (const Cmd& c : cmds) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    sub->add_option("--spec", cfg.spec_path, "spec document (JSON)");
    sub->add_option("--out", cfg.out_dir, "output directory");
    sub->add_option("--n", cfg.n, "polynomial degree or germ length")->check(CLI::PositiveNumber);
    sub->add_option("--k", cfg.k, "number of functions in the family")->check(CLI::Range(2, 4));
    sub->add_option("--N,--nodes", cfg.N, "panels per arc")->check(CLI::PositiveNumber);
    sub->add_option("--precision-bits", cfg.precision_bits, "working precision in bits")->check(CLI::PositiveNumber);
    sub->add_option("--tol", cfg.tol, "tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--grid", cfg.grid, "grid as NXxNY@HALFWIDTH");
    subs.emplace_back(sub, &c);
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: cli: " << e.what() << "\n";
    return 1;
  }
  const Cmd* chosen = nullptr;
  for (auto& [sub, c] : subs)
    if (sub->parsed()) chosen = c;
  cfg.command = chosen->name;

  std::string line = "sheetlab";
  for (int i = 1; i < argc; ++i) line += std::string(" ") + argv[i];
  Job job{cfg, {line, config_hash(canonical_config(cfg))}, out, {}};
  try {
    chosen->fn(job);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return is_input_error(e.code()) ? 1 : 2;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: io: " << e.what() << "\n";
    return 1;
  }
  if (!job.failures.empty()) {
    for (const auto& f : job.failures) err << "contract: " << cfg.command << ": " << f << "\n";
    return 2;
  }
  return 0;
}

}  // namespace sheetlab::cli
