// Run manifests, content hashes and key=value config files.
#pragma once

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "xishift/lfunctions.hpp"
#include "xishift/zeros.hpp"

namespace xishift {

/// Lower-case hex SHA-256 of a byte string / of a file's contents.
std::string sha256_hex(const std::string& bytes);
std::string sha256_file(const std::filesystem::path& path);

/// Thrown for malformed config files or unknown keys.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Every tunable that a config file may set. Keys match the member names.
struct RunConfig {
  EvalConfig eval;
  ZeroSearchOptions search;
  ArgumentPrincipleOptions contour;
  StructureCheckOptions structure;
  double scan_step = 0.05;
  double r_grid_step = 1e-3;
  std::uint64_t seed = 20240601;

  /// Applies key=value lines ('#' starts a comment). Throws ConfigError.
  void apply_text(const std::string& text);
  void apply_file(const std::filesystem::path& path);
  void set(const std::string& key, const std::string& value);
  [[nodiscard]] nlohmann::json to_json() const;
};

struct ManifestOutput {
  std::string path;
  std::string sha256;
  std::uintmax_t bytes = 0;
};

class RunManifest {
 public:
  RunManifest(std::vector<std::string> argv, const RunConfig& cfg);

  void add_input(const std::filesystem::path& path);
  /// Writes `content` to dir/name and records its hash.
  void write_output(const std::filesystem::path& dir, const std::string& name, const std::string& content);
  void flag_regime(Regime r) { regimes_.insert(to_string(r)); }
  void note(const std::string& key, nlohmann::json value) { extra_[key] = std::move(value); }
  [[nodiscard]] const std::vector<ManifestOutput>& outputs() const { return outputs_; }

  [[nodiscard]] nlohmann::json to_json() const;
  /// Writes dir/manifest.json (the manifest itself is not listed).
  void finish(const std::filesystem::path& dir, int exit_code);

 private:
  std::vector<std::string> argv_;
  nlohmann::json config_;
  std::string started_;
  std::string finished_;
  int exit_code_ = 0;
  std::vector<std::pair<std::string, std::string>> inputs_;
  std::vector<ManifestOutput> outputs_;
  std::set<std::string> regimes_;
  nlohmann::json extra_ = nlohmann::json::object();
};

std::string utc_timestamp();
std::string code_version();

}  // namespace xishift
