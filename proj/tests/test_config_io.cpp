#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <random>
#include <string>

#include "ecoepi/config.hpp"
#include "ecoepi/errors.hpp"
#include "ecoepi/io.hpp"
#include "ecoepi/pde.hpp"
#include "ecoepi/presets.hpp"
#include "test_util.hpp"

using namespace ecoepi;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const std::string& tag) {
  fs::path dir = fs::temp_directory_path() / ("ecoepi_test_" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string strip_key(const std::string& text, const std::string& key) {
  std::string out;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line))
    if (line.rfind(key + " =", 0) != 0) out += line + "\n";
  return out;
}

}  // namespace

TEST_CASE("every bundled preset survives a serialize/parse round trip") {
  REQUIRE(preset_names().size() == 10);
  for (const std::string& name : preset_names()) {
    CAPTURE(name);
    CHECK(is_preset(name));
    const RunConfig cfg = preset(name);
    const RunConfig back = parse_config(write_config(cfg));
    CHECK(back == cfg);
  }
  CHECK_FALSE(is_preset("nope"));
  CHECK_THROWS_AS(preset("nope"), validation_error);
}

TEST_CASE("parser rejects malformed input with the offending name") {
  const std::string good = write_config(preset("baseline"));

  CHECK(throws_mentioning<validation_error>([&] { parse_config(strip_key(good, "r")); },
                                            "missing required parameter 'r'"));
  CHECK(throws_mentioning<validation_error>(
      [&] { parse_config(good + "\n[params]\nrr = 1\n"); }, "unknown key 'rr' in [params]"));
  CHECK(throws_mentioning<validation_error>([&] { parse_config(good + "\n[extra]\nx = 1\n"); },
                                            "unknown section [extra]"));
  CHECK(throws_mentioning<validation_error>([&] { parse_config(good + "\n[params]\nr = 0.4\n"); },
                                            "duplicate key 'r' in [params]"));
  CHECK(throws_mentioning<validation_error>(
      [&] { parse_config(strip_key(good, "r") + "\n[params]\nr = abc\n"); },
      "non-numeric value 'abc'"));
  CHECK(throws_mentioning<validation_error>([] { parse_config("r = 0.4\n"); },
                                            "before any section"));
  CHECK(throws_mentioning<validation_error>([&] { parse_config(good + "\n[grid]\nnx = 3\n"); },
                                            "unknown key 'nx' in [grid]"));
  CHECK(throws_mentioning<validation_error>(
      [&] { parse_config(good + "\n[analysis]\nbogus = 1\n"); },
      "unknown key 'bogus' in [analysis]"));

  // schedule must use exactly one of the two forms
  CHECK(throws_mentioning<validation_error>(
      [&] { parse_config(good + "\n[schedule]\ntimes = 1, 2\nt_end = 5\ninterval = 1\n"); },
      "either 'times' or 't_end'+'interval'"));
  CHECK(throws_mentioning<validation_error>(
      [&] { parse_config(good + "\n[schedule]\nt_end = 5\n"); },
      "needs 'times' or both 't_end' and 'interval'"));
  const RunConfig ok = parse_config(good + "\n[schedule]\nt_end = 5\ninterval = 1\n");
  CHECK(ok.has_schedule);
  CHECK(ok.t_end == 5.0);
}

TEST_CASE("bundled config files match the in-memory presets") {
  const fs::path dir = ECOEPI_CONFIG_DIR;
  for (const std::string& name : preset_names()) {
    CAPTURE(name);
    const fs::path file = dir / (name + ".ini");
    REQUIRE(fs::exists(file));
    CHECK(load_config(file) == preset(name));
  }
}

TEST_CASE("typed analysis getters convert and fall back") {
  RunConfig cfg = preset("lyapunov_stable");
  CHECK(analysis_double(cfg, "init_u", -1.0) == 15.1342);
  CHECK(analysis_int(cfg, "total", -1) == 1000);
  CHECK(analysis_int(cfg, "absent", 7) == 7);
  CHECK(analysis_double(cfg, "absent", 2.5) == 2.5);
  CHECK(analysis_str(cfg, "absent", "fallback") == "fallback");
  cfg.analysis["total"] = "10.5";
  CHECK(throws_mentioning<validation_error>([&] { analysis_int(cfg, "total", 0); },
                                            "must be an integer"));
  cfg.analysis["total"] = "xyz";
  CHECK_THROWS_AS(analysis_double(cfg, "total", 0.0), validation_error);
}

TEST_CASE("full-precision formatting round-trips doubles exactly") {
  std::mt19937_64 rng(123);
  std::uniform_real_distribution<double> mag(-30.0, 30.0);
  std::uniform_real_distribution<double> mant(-1.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const double x = mant(rng) * std::pow(10.0, mag(rng));
    CHECK(std::stod(fmt_full(x)) == x);
  }
  CHECK(fmt_full(0.0) == "0");
  CHECK(std::stod(fmt_full(M_PI)) == M_PI);
  CHECK(fmt_sig(1.0 / 3.0, 3) == "0.333");
}

TEST_CASE("hash primitives match published reference vectors") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(hash_hex(0xcbf29ce484222325ULL) == "cbf29ce484222325");
  CHECK(hash_hex(0x1ULL).size() == 16);
}

TEST_CASE("key-value files hold full-precision entries") {
  const fs::path dir = temp_dir("kv");
  KV kv;
  kv_add(kv, "alpha", 0.1);
  kv_add(kv, "note", std::string("plain text"));
  write_key_value(dir / "out.txt", kv);
  const std::string text = read_text(dir / "out.txt");
  CHECK(text.find("alpha = 0.10000000000000001") != std::string::npos);
  CHECK(text.find("note = plain text") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("snapshot files reproduce the fields bit for bit") {
  const ModelParams p = baseline_params();
  const GridSpec g = make_grid(p, 1.0, 0.1, 0.01);
  REQUIRE(g.nx == 11);
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> level(0.0, 50.0);
  FieldGrid f = constant_state({1.0, 1.0, 1.0}, g);
  for (int i = 0; i < g.nx; ++i)
    for (int j = 0; j < g.nx; ++j) {
      f.u(i, j) = level(rng);
      f.v(i, j) = level(rng);
      f.w(i, j) = level(rng);
    }
  f.time = 800.0;

  const fs::path dir = temp_dir("snap");
  const auto paths = write_snapshot(dir, "demo", f, g);
  REQUIRE(paths.size() == 3);

  SnapshotMeta meta;
  const Eigen::ArrayXXd back = read_snapshot_field(paths[0], meta);
  CHECK(meta.field == "u");
  CHECK(meta.t == 800.0);
  CHECK(meta.nx == 11);
  CHECK(meta.ny == 11);
  CHECK(meta.h == 0.1);
  CHECK((back - f.u).abs().maxCoeff() == 0.0);

  // writing the same state twice yields identical artifact checksums
  const fs::path dir2 = temp_dir("snap2");
  const auto paths2 = write_snapshot(dir2, "demo", f, g);
  for (size_t i = 0; i < paths.size(); ++i) CHECK(hash_file(paths[i]) == hash_file(paths2[i]));

  FieldGrid f2 = f;
  f2.time = 1000.0;
  write_snapshot(dir, "demo", f2, g);
  const auto history = load_run_snapshots(dir, "demo");
  REQUIRE(history.size() == 2);
  CHECK(history[0].time == 800.0);
  CHECK(history[1].time == 1000.0);
  CHECK((history[1].w - f.w).abs().maxCoeff() == 0.0);

  // an orphaned field file makes reassembly fail loudly
  FieldGrid f3 = f;
  f3.time = 1200.0;
  const auto paths3 = write_snapshot(dir, "demo", f3, g);
  fs::remove(paths3[1]);
  fs::remove(paths3[2]);
  CHECK(throws_mentioning<validation_error>([&] { load_run_snapshots(dir, "demo"); },
                                            "incomplete snapshot set"));
  fs::remove_all(dir);
  fs::remove_all(dir2);
}

TEST_CASE("manifests record the config hash and per-artifact checksums") {
  const fs::path dir = temp_dir("manifest");
  write_text(dir / "a.csv", "1,2,3\n");
  const std::string config_text = write_config(preset("baseline"));
  emit_manifest(dir, "demo", config_text, {dir / "a.csv"}, 1.25);
  const std::string text = read_text(dir / "demo_manifest.txt");
  CHECK(text.find("config_hash = " + hash_hex(fnv1a64(config_text))) != std::string::npos);
  CHECK(text.find("a.csv " + hash_hex(fnv1a64("1,2,3\n"))) != std::string::npos);
  fs::remove_all(dir);
}

#ifdef ECOEPI_CLI_PATH
TEST_CASE("command-line tool rejects bad parameters with exit code 2") {
  const fs::path dir = temp_dir("cli");
  RunConfig bad = preset("baseline");
  bad.params.r = -1.0;
  write_text(dir / "bad.ini", write_config(bad));
  const std::string cmd = std::string(ECOEPI_CLI_PATH) + " equilibria --config " +
                          (dir / "bad.ini").string() + " > " + (dir / "log.txt").string() +
                          " 2>&1";
  const int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  CHECK(WEXITSTATUS(status) == 2);
  const std::string log = read_text(dir / "log.txt");
  CHECK(log.find("validation error") != std::string::npos);
  CHECK(log.find("r must") != std::string::npos);

  // grid guard violations are also configuration errors
  RunConfig tight = preset("table3_a");
  tight.h = 0.005;
  write_text(dir / "tight.ini", write_config(tight));
  const std::string cmd2 = std::string(ECOEPI_CLI_PATH) + " simulate --config " +
                           (dir / "tight.ini").string() + " > " + (dir / "log2.txt").string() +
                           " 2>&1";
  const int status2 = std::system(cmd2.c_str());
  REQUIRE(status2 != -1);
  CHECK(WEXITSTATUS(status2) == 2);
  CHECK(read_text(dir / "log2.txt").find("stability guard violated") != std::string::npos);
  fs::remove_all(dir);
}
#endif
