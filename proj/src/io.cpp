#include "xishift/io.hpp"

#include <openssl/evp.h>

#include <charconv>
#include <chrono>
#include <ctime>
#include <fstream>
#include <sstream>

namespace xishift {

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("SHA-256 digest failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[md[i] >> 4]);
    out.push_back(hex[md[i] & 15]);
  }
  return out;
}

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return sha256_hex(ss.str());
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <class T>
T parse_number(const std::string& key, const std::string& v) {
  T out{};
  const char* end = v.data() + v.size();
  auto [p, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc{} || p != end) throw ConfigError("bad value for " + key + ": '" + v + "'");
  return out;
}

}  // namespace

void RunConfig::set(const std::string& key, const std::string& value) {
  auto dbl = [&] { return parse_number<double>(key, value); };
  auto integer = [&] { return parse_number<long long>(key, value); };
  if (key == "target_abs_err") eval.target_abs_err = dbl();
  else if (key == "max_terms") eval.max_terms = static_cast<int>(integer());
  else if (key == "em_order") eval.em_order = static_cast<int>(integer());
  else if (key == "residual_tol") search.residual_tol = dbl();
  else if (key == "deriv_tol") search.deriv_tol = dbl();
  else if (key == "grid_scale") search.grid_scale = dbl();
  else if (key == "bracket_width") search.bracket_width = dbl();
  else if (key == "quadrature_n") contour.quadrature_n = static_cast<int>(integer());
  else if (key == "contour_min_distance") contour.min_distance = dbl();
  else if (key == "grid_n") structure.grid_n = static_cast<int>(integer());
  else if (key == "random_n") structure.random_n = static_cast<int>(integer());
  else if (key == "scan_step") scan_step = dbl();
  else if (key == "r_grid_step") r_grid_step = dbl();
  else if (key == "seed") seed = parse_number<std::uint64_t>(key, value);
  else throw ConfigError("unknown config key '" + key + "'");
  try {
    eval.validate();
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
  if (!(search.grid_scale > 0 && search.bracket_width > 0 && scan_step > 0 && r_grid_step > 0 &&
        contour.quadrature_n > 0 && structure.grid_n >= 0 && structure.random_n >= 0))
    throw ConfigError("config value for " + key + " out of range");
  structure.seed = seed;
}

void RunConfig::apply_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected key=value");
    set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
}

void RunConfig::apply_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  apply_text(ss.str());
}

nlohmann::json RunConfig::to_json() const {
  return {{"target_abs_err", eval.target_abs_err},
          {"max_terms", eval.max_terms},
          {"em_order", eval.em_order},
          {"residual_tol", search.residual_tol},
          {"deriv_tol", search.deriv_tol},
          {"grid_scale", search.grid_scale},
          {"bracket_width", search.bracket_width},
          {"jobs", search.jobs},
          {"quadrature_n", contour.quadrature_n},
          {"contour_min_distance", contour.min_distance},
          {"grid_n", structure.grid_n},
          {"random_n", structure.random_n},
          {"scan_step", scan_step},
          {"r_grid_step", r_grid_step},
          {"seed", seed}};
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string code_version() {
#ifdef XISHIFT_VERSION
  return XISHIFT_VERSION;
#else
  return "unknown";
#endif
}

RunManifest::RunManifest(std::vector<std::string> argv, const RunConfig& cfg)
    : argv_(std::move(argv)), config_(cfg.to_json()), started_(utc_timestamp()) {}

void RunManifest::add_input(const std::filesystem::path& path) {
  inputs_.emplace_back(path.string(), sha256_file(path));
}

void RunManifest::write_output(const std::filesystem::path& dir, const std::string& name, const std::string& content) {
  std::filesystem::create_directories(dir);
  const auto path = dir / name;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
  out.close();
  outputs_.push_back({name, sha256_hex(content), content.size()});
}

nlohmann::json RunManifest::to_json() const {
  nlohmann::json ins = nlohmann::json::array();
  for (const auto& [p, h] : inputs_) ins.push_back({{"path", p}, {"sha256", h}});
  nlohmann::json outs = nlohmann::json::array();
  for (const auto& o : outputs_) outs.push_back({{"path", o.path}, {"sha256", o.sha256}, {"bytes", o.bytes}});
  return {{"command_line", argv_},
          {"code_version", code_version()},
          {"config", config_},
          {"started_utc", started_},
          {"finished_utc", finished_},
          {"exit_code", exit_code_},
          {"inputs", ins},
          {"outputs", outs},
          {"regime_flags", std::vector<std::string>(regimes_.begin(), regimes_.end())},
          {"results", extra_}};
}

void RunManifest::finish(const std::filesystem::path& dir, int exit_code) {
  finished_ = utc_timestamp();
  exit_code_ = exit_code;
  std::filesystem::create_directories(dir);
  std::ofstream out(dir / "manifest.json", std::ios::binary);
  if (!out) throw std::runtime_error("cannot write manifest in " + dir.string());
  out << to_json().dump(2) << '\n';
}

}  // namespace xishift
