#include "sheetlab/io.hpp"

#include "sheetlab/error.hpp"

#include <json.hpp>

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace sheetlab {

namespace {

constexpr const char* kModule = "io";
using nlohmann::json;

std::string need_string(const json& v, const char* what) {
  if (!v.is_string()) throw Error(ErrorCode::BadInput, kModule, std::string(what) + " must be a decimal string");
  return v.get<std::string>();
}

std::vector<std::array<std::string, 2>> pairs(const json& doc, const char* key) {
  std::vector<std::array<std::string, 2>> out;
  if (!doc.contains(key)) return out;
  const json& arr = doc.at(key);
  if (!arr.is_array()) throw Error(ErrorCode::BadInput, kModule, std::string(key) + " must be an array");
  for (const json& e : arr) {
    if (!e.is_array() || e.size() != 2)
      throw Error(ErrorCode::BadInput, kModule, std::string(key) + " entries must be two-element arrays");
    out.push_back({need_string(e[0], key), need_string(e[1], key)});
  }
  return out;
}

std::vector<std::string> strings(const json& doc, const char* key) {
  std::vector<std::string> out;
  if (!doc.contains(key)) return out;
  const json& arr = doc.at(key);
  if (!arr.is_array()) throw Error(ErrorCode::BadInput, kModule, std::string(key) + " must be an array");
  for (const json& e : arr) out.push_back(need_string(e, key));
  return out;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

RawSpec parse_spec_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::BadInput, kModule, std::string("spec is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorCode::BadInput, kModule, "spec must be a JSON object");
  for (const auto& [key, _] : doc.items()) {
    if (key != "class" && key != "A" && key != "alpha" && key != "B" && key != "beta" && key != "intervals")
      throw Error(ErrorCode::BadInput, kModule, "unknown spec field '" + key + "'");
  }
  if (!doc.contains("class")) throw Error(ErrorCode::BadInput, kModule, "spec needs a class");
  RawSpec raw;
  raw.class_tag = need_string(doc.at("class"), "class");
  raw.A = pairs(doc, "A");
  raw.alpha = strings(doc, "alpha");
  raw.B = pairs(doc, "B");
  raw.beta = strings(doc, "beta");
  raw.intervals = pairs(doc, "intervals");
  return raw;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::BadInput, kModule, "cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

RawSpec load_spec(const std::string& path) { return parse_spec_json(read_file(path)); }

std::string config_hash(const std::string& canonical) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : canonical) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void write_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::BadInput, kModule, "cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw Error(ErrorCode::BadInput, kModule, "write failed for " + tmp.string());
  }
  fs::rename(tmp, target);
}

std::string fmt(double x) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

CsvWriter::CsvWriter(Provenance prov, std::vector<std::string> header) : width_(header.size()) {
  body_ = "#command: " + prov.command + "\n#config-hash: " + prov.config_hash + "\n";
  for (std::size_t i = 0; i < header.size(); ++i) body_ += (i ? "," : "") + csv_escape(header[i]);
  body_ += "\n";
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  if (cells.size() != width_) throw Error(ErrorCode::BadInput, kModule, "CSV row width does not match header");
  for (std::size_t i = 0; i < cells.size(); ++i) body_ += (i ? "," : "") + csv_escape(cells[i]);
  body_ += "\n";
}

void CsvWriter::row(const std::vector<double>& cells) {
  std::vector<std::string> s;
  s.reserve(cells.size());
  for (double x : cells) s.push_back(fmt(x));
  row(s);
}

std::string CsvWriter::str() const { return body_; }

}  // namespace sheetlab
