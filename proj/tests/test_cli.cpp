#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "xishift/cli.hpp"
#include "xishift/io.hpp"

namespace fs = std::filesystem;
using namespace xishift;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    std::random_device rd;
    path = fs::temp_directory_path() / ("xishift-test-" + std::to_string(rd()) + std::to_string(rd()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  [[nodiscard]] std::string sub(const std::string& name) const { return (path / name).string(); }
};

struct Run {
  int rc;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "xishift");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int rc = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {rc, out.str(), err.str()};
}

nlohmann::json read_json(const fs::path& p) {
  std::ifstream in(p);
  return nlohmann::json::parse(in);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST_CASE("sha256 known answer") {
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST_CASE("zeros writes both lists, interlacing and a manifest") {
  TempDir d;
  const auto out = d.sub("z");
  const auto r = run({"zeros", "--h", "0.5", "--theta", "0.3", "--T", "60", "--out", out});
  REQUIRE(r.rc == 0);
  for (const char* f : {"zeros_A.csv", "zeros_B.csv", "interlacing.json", "manifest.json"})
    CHECK(fs::exists(fs::path(out) / f));
  const auto m = read_json(fs::path(out) / "manifest.json");
  CHECK(m["exit_code"] == 0);
  REQUIRE(m["outputs"].size() == 3);
  for (const auto& o : m["outputs"]) CHECK(o["sha256"] == sha256_file(fs::path(out) / o["path"].get<std::string>()));
  CHECK(read_json(fs::path(out) / "interlacing.json")["pass"] == true);
  CHECK(r.out.find("unconditional") != std::string::npos);
}

TEST_CASE("reruns and parallel runs are byte-identical") {
  TempDir d;
  const std::vector<std::string> base{"zeros", "--h", "0.25", "--theta", "1", "--T", "80"};
  auto a = base, b = base, c = base;
  a.insert(a.end(), {"--out", d.sub("a")});
  b.insert(b.end(), {"--out", d.sub("b")});
  c.insert(c.end(), {"--out", d.sub("c"), "--jobs", "3"});
  REQUIRE(run(a).rc == 0);
  REQUIRE(run(b).rc == 0);
  REQUIRE(run(c).rc == 0);
  for (const char* f : {"zeros_A.csv", "zeros_B.csv", "interlacing.json"}) {
    CHECK(slurp(fs::path(d.sub("a")) / f) == slurp(fs::path(d.sub("b")) / f));
    CHECK(slurp(fs::path(d.sub("a")) / f) == slurp(fs::path(d.sub("c")) / f));
  }
  const auto m = read_json(fs::path(d.sub("a")) / "manifest.json");
  bool flagged = false;
  for (const auto& f : m["regime_flags"]) flagged = flagged || f == "conditional-RH";
  CHECK(flagged);
}

TEST_CASE("usage errors exit with 64") {
  TempDir d;
  const auto h0 = run({"zeros", "--h", "0", "--T", "20", "--out", d.sub("h0")});
  CHECK(h0.rc == 64);
  CHECK(h0.err.find("scan") != std::string::npos);
  CHECK(run({"zeros", "--h", "0.5", "--T", "20", "--target", "dirichlet:8.0", "--out", d.sub("t")}).rc == 64);
  CHECK(run({"zeros", "--h", "0.5", "--T", "20", "--target", "nonsense", "--out", d.sub("t")}).rc == 64);
  CHECK(run({"zeros", "--T", "20"}).rc == 64);
  CHECK(run({"zeros", "--h", "0.5", "--T", "20", "--bogus"}).rc == 64);
  CHECK(run({"frobnicate"}).rc == 64);
  CHECK(run({"spacings", "--h", "0.5", "--T", "50", "--ref", "poisson", "--out", d.sub("r")}).rc == 64);
  CHECK(run({"--help"}).rc == 0);
  CHECK(run({"zeros", "--help"}).rc == 0);
}

TEST_CASE("config files") {
  TempDir d;
  const auto cfg = d.sub("run.cfg");
  std::ofstream(cfg) << "# small sample\ngrid_n = 4\nrandom_n = 10\n";
  const auto out = d.sub("s");
  const auto r = run({"structure-check", "--h", "0.5", "--re-lo", "0.6", "--re-hi", "2", "--im-lo", "0", "--im-hi",
                      "20", "--config", cfg, "--out", out});
  REQUIRE(r.rc == 0);
  const auto j = read_json(fs::path(out) / "structure_check.json");
  CHECK(j["n"] == 26);
  const auto m = read_json(fs::path(out) / "manifest.json");
  CHECK(m["config"]["random_n"] == 10);

  const auto bad = d.sub("bad.cfg");
  std::ofstream(bad) << "no_such_key = 1\n";
  CHECK(run({"characters", "--q", "5", "--config", bad, "--out", d.sub("b")}).rc == 64);
  CHECK(run({"characters", "--q", "5", "--config", d.sub("missing.cfg")}).rc == 64);
}

TEST_CASE("scan, count and spacings") {
  TempDir d;
  const auto s = run({"scan", "--T", "40", "--out", d.sub("scan")});
  REQUIRE(s.rc == 0);
  std::ifstream in(fs::path(d.sub("scan")) / "zeros.csv");
  std::string line;
  int rows = -1;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 6);

  REQUIRE(run({"count", "--h", "0.5", "--T", "50", "--out", d.sub("count")}).rc == 0);
  const auto c = read_json(fs::path(d.sub("count")) / "count.json");
  CHECK(c["complete"] == true);

  REQUIRE(run({"spacings", "--h", "0.5", "--T", "200", "--k", "3", "--out", d.sub("sp")}).rc == 0);
  for (const char* f : {"histogram.csv", "consecutive_k3.csv", "dispersion.json"})
    CHECK(fs::exists(fs::path(d.sub("sp")) / f));
  const auto j = read_json(fs::path(d.sub("sp")) / "dispersion.json");
  CHECK(j.dump().find("Wigner") != std::string::npos);
}

TEST_CASE("characters and selftest") {
  TempDir d;
  REQUIRE(run({"characters", "--q", "8", "--out", d.sub("c")}).rc == 0);
  const auto j = read_json(fs::path(d.sub("c")) / "characters_8.json");
  CHECK(j.size() == 4);
  const auto st = run({"selftest", "--only", "11", "--out", d.sub("st")});
  CHECK(st.rc == 0);
  CHECK(st.out.find("PASS") != std::string::npos);
  CHECK(fs::exists(fs::path(d.sub("st")) / "acceptance.json"));
}
