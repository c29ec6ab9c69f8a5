#include "doctest.h"

#include "commands.hpp"
#include "sheetlab/io.hpp"

#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "sheetlab");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = sheetlab::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / "sheetlab_cli_test" / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string write_spec(const fs::path& dir, const std::string& name, const std::string& body) {
  const std::string path = (dir / name).string();
  sheetlab::write_atomic(path, body);
  return path;
}

const char* kRealSpec = R"({"class":"Z","A":[["2","0"],["3","0"]],"alpha":["-1/2","-1/2"]})";

}  // namespace

TEST_CASE("hp writes the polynomials and their zeros") {
  const fs::path dir = scratch("hp");
  const std::string spec = write_spec(dir, "spec.json", kRealSpec);
  const fs::path out = dir / "out";
  const Result r = run({"hp", "--spec", spec, "--k", "3", "--n", "20", "--out", out.string()});
  CHECK(r.code == 0);
  for (const char* f : {"Q_20_0.json", "Q_20_1.json", "Q_20_2.json", "Q_20_roots.csv"}) CHECK(fs::exists(out / f));
  const std::string csv = sheetlab::read_file((out / "Q_20_roots.csv").string());
  CHECK(csv.rfind("#command: sheetlab hp", 0) == 0);
  CHECK(csv.find("\n#config-hash: ") != std::string::npos);
  CHECK(csv.find("\nj,re,im,multiplicity\n") != std::string::npos);
}

TEST_CASE("re-running a command gives byte-identical outputs") {
  const fs::path dir = scratch("determinism");
  const std::string spec = write_spec(dir, "spec.json", kRealSpec);
  const std::string out = (dir / "out").string();
  REQUIRE(run({"stahl", "--spec", spec, "--out", out}).code == 0);
  const std::string a = sheetlab::read_file(out + "/arcs_zeta.csv");
  const std::string ja = sheetlab::read_file(out + "/stahl.json");
  REQUIRE(run({"stahl", "--spec", spec, "--out", out}).code == 0);
  CHECK(sheetlab::read_file(out + "/arcs_zeta.csv") == a);
  CHECK(sheetlab::read_file(out + "/stahl.json") == ja);
}

TEST_CASE("input errors exit with status 1") {
  const fs::path dir = scratch("errors");
  const std::string bad =
      write_spec(dir, "bad.json", R"({"class":"Z","A":[["2","0.5"],["3","0"]],"alpha":["-1/2","-1/2"]})");
  const Result r = run({"germ", "--spec", bad, "--out", (dir / "out").string()});
  CHECK(r.code == 1);
  CHECK(r.err.find("NotConjugateSymmetric") != std::string::npos);
  CHECK(r.err.find("funcspec") != std::string::npos);

  CHECK(run({"germ", "--spec", (dir / "missing.json").string()}).code == 1);
  CHECK(run({"hp", "--spec", bad, "--k", "5"}).code == 1);
  CHECK(run({"frobnicate"}).code == 1);
  CHECK(run({"germ"}).code == 1);
  const std::string two = write_spec(
      dir, "two.json",
      R"({"class":"Z2","A":[["0","3"],["0","-3"]],"alpha":["1/2","1/2"],"B":[["0","3"],["0","-3"]],)"
      R"("beta":["-1/2","-1/2"],"intervals":[["-3","-2"],["2","3"]]})");
  CHECK(run({"stahl", "--spec", two, "--out", (dir / "out").string()}).code == 1);
  CHECK(run({"green", "--spec", write_spec(dir, "ok.json", kRealSpec), "--grid", "10y10"}).code == 1);
}

TEST_CASE("numeric contract failures exit with status 2") {
  const fs::path dir = scratch("contract");
  const std::string spec = write_spec(dir, "spec.json", kRealSpec);
  // A coarse discretization cannot meet a tight constancy tolerance.
  const std::string out = (dir / "out").string();
  const Result r = run({"equilibrium", "--spec", spec, "--N", "50", "--tol", "1e-9", "--n", "10", "--out", out});
  CHECK(r.code == 2);
  CHECK(r.err.find("equilibrium") != std::string::npos);
  // Artifacts are still written for inspection.
  CHECK(fs::exists(out + "/equilibrium.json"));
}

TEST_CASE("germ and stahl report their cross-checks") {
  const fs::path dir = scratch("germ");
  const std::string spec = write_spec(dir, "spec.json", kRealSpec);
  const std::string out = (dir / "out").string();
  const Result g = run({"germ", "--spec", spec, "--n", "64", "--precision-bits", "512", "--out", out});
  CHECK(g.code == 0);
  CHECK(fs::exists(out + "/germ.json"));
  const Result s = run({"green", "--spec", spec, "--grid", "9x9@1", "--out", out});
  CHECK(s.code == 0);
  CHECK(fs::exists(out + "/green_grid.csv"));
  CHECK(fs::exists(out + "/green.json"));
}
