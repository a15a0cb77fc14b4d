#pragma once

#include <optional>
#include <string>

#include "sqc/constructions.hpp"

namespace sqc {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kManifestVersion = 1;

// A built code together with the construction inputs it can be rebuilt from.
struct CodeBundle {
  std::string kind;  // "bbs", "shp" or "hgp"
  std::optional<BbsCode> bbs;
  std::optional<ShpCode> shp;
  std::optional<HgpCode> hgp;

  const SubsystemCode& code() const;
};

// Versioned JSON manifest: construction inputs plus the derived generators
// (as qubit index lists) and layout, so the code is both rebuildable and
// inspectable. Loading rebuilds from the inputs and cross-checks the stored
// qubit/logical counts; mismatches throw std::runtime_error.
std::string save_code_manifest(const CodeBundle& bundle);
CodeBundle load_code_manifest(const std::string& json_text);

// Parses only the stored derived block into a SubsystemCode without rebuilding
// from the inputs, so verification can inspect exactly what the file claims.
SubsystemCode parse_manifest_code(const std::string& json_text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace sqc
