#pragma once
#include <cmath>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "ecoepi/params.hpp"

namespace ecoepi {

// Parsed run configuration. Sections: [params] (every model parameter,
// required — no silent biological defaults), [grid], [schedule] (either an
// explicit `times` list or `t_end` + `interval`), [analysis]
// (subcommand-specific settings from a fixed whitelist), [output].
struct RunConfig {
  ModelParams params{};
  double L = M_PI, h = 0.01, dt = 0.01;
  std::vector<double> schedule_times;  // non-empty when `times` was given
  double t_end = -1.0, interval = -1.0;
  bool has_schedule = false;
  std::map<std::string, std::string> analysis;
  std::string out_dir = "out";
  std::string run_name = "run";

  bool operator==(const RunConfig& other) const;
};

// Strict parser: unknown sections or keys are rejected by name; every
// ModelParams key must appear in [params]; malformed numbers name their key.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);

// Canonical serialization; parse(write_config(c)) == c.
std::string write_config(const RunConfig& cfg);

// Typed access to [analysis] entries with defaults.
double analysis_double(const RunConfig& cfg, const std::string& key, double fallback);
int analysis_int(const RunConfig& cfg, const std::string& key, int fallback);
std::string analysis_str(const RunConfig& cfg, const std::string& key,
                         const std::string& fallback);

}  // namespace ecoepi
