#pragma once
// Spec documents and artifact writers. Numbers in spec documents are decimal
// strings so validation sees exact values.

#include "sheetlab/funcspec.hpp"

#include <complex>
#include <string>
#include <vector>

namespace sheetlab {

/// {"class":"Z"|"Z2","A":[["re","im"],...],"alpha":[...],"B":[...],"beta":[...],"intervals":[[lo,hi],...]}
RawSpec parse_spec_json(const std::string& text);
RawSpec load_spec(const std::string& path);
std::string read_file(const std::string& path);

/// Stable 64-bit FNV-1a digest, hex encoded.
std::string config_hash(const std::string& canonical);

/// Writes to a sibling temporary file and renames it over the target.
void write_atomic(const std::string& path, const std::string& content);

struct Provenance {
  std::string command;
  std::string config_hash;
};

/// Shortest round-trip decimal form of a double.
std::string fmt(double x);

class CsvWriter {
 public:
  CsvWriter(Provenance prov, std::vector<std::string> header);
  void row(const std::vector<std::string>& cells);
  void row(const std::vector<double>& cells);
  std::string str() const;

 private:
  std::string body_;
  std::size_t width_;
};

}  // namespace sheetlab
