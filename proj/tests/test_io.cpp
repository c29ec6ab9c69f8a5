#include "doctest.h"

#include "sheetlab/error.hpp"
#include "sheetlab/io.hpp"

#include <filesystem>
#include <fstream>

using namespace sheetlab;
namespace fs = std::filesystem;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::NotConverged;
}

}  // namespace

TEST_CASE("spec documents") {
  const RawSpec r = parse_spec_json(R"({"class":"Z","A":[["2","0"],["3","0"]],"alpha":["-1/2","-1/2"]})");
  CHECK(r.class_tag == "Z");
  REQUIRE(r.A.size() == 2);
  CHECK(r.A[1][0] == "3");
  CHECK(r.alpha[0] == "-1/2");
  CHECK(r.B.empty());

  const RawSpec t = parse_spec_json(
      R"({"class":"Z2","A":[["0","3"],["0","-3"]],"alpha":["1/2","1/2"],"B":[["0","3"],["0","-3"]],)"
      R"("beta":["-1/2","-1/2"],"intervals":[["-3","-2"],["2","3"]]})");
  CHECK(t.intervals.size() == 2);
  CHECK(validate_spec(t).cls == SpecClass::TwoInterval);

  CHECK(code_of([] { parse_spec_json(R"({"class":"Z","A":[[2,0]]})"); }) == ErrorCode::BadInput);
  CHECK(code_of([] { parse_spec_json(R"({"class":"Z","extra":1})"); }) == ErrorCode::BadInput);
  CHECK(code_of([] { parse_spec_json(R"({"A":[]})"); }) == ErrorCode::BadInput);
  CHECK(code_of([] { parse_spec_json("{not json"); }) == ErrorCode::BadInput);
  CHECK(code_of([] { load_spec("/nonexistent/spec.json"); }) == ErrorCode::BadInput);
}

TEST_CASE("hash and number formatting") {
  CHECK(config_hash("") == "cbf29ce484222325");
  CHECK(config_hash("a") == "af63dc4c8601ec8c");
  CHECK(config_hash("abc") != config_hash("abd"));
  CHECK(fmt(0.1) == "0.1");
  CHECK(std::stod(fmt(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("CSV writer") {
  CsvWriter w({"sheetlab hp --k 3", "0123456789abcdef"}, {"j", "re", "note"});
  w.row(std::vector<std::string>{"0", "1.5", "a,b"});
  w.row(std::vector<double>{1, 0.25, -2});
  CHECK(w.str() ==
        "#command: sheetlab hp --k 3\n#config-hash: 0123456789abcdef\nj,re,note\n0,1.5,\"a,b\"\n1,0.25,-2\n");
  CHECK(code_of([&] { w.row(std::vector<double>{1.0}); }) == ErrorCode::BadInput);
}

TEST_CASE("atomic writes create directories and leave no temporaries") {
  const fs::path dir = fs::temp_directory_path() / "sheetlab_io_test" / "nested";
  fs::remove_all(dir.parent_path());
  const std::string target = (dir / "out.txt").string();
  write_atomic(target, "first\n");
  write_atomic(target, "second\n");
  CHECK(read_file(target) == "second\n");
  int files = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(dir)) ++files;
  CHECK(files == 1);
  fs::remove_all(dir.parent_path());
}
