#pragma once
#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "ecoepi/dispersion.hpp"
#include "ecoepi/ode.hpp"
#include "ecoepi/pattern.hpp"
#include "ecoepi/pde.hpp"

namespace ecoepi {

// Shortest decimal that round-trips the double exactly (17 significant digits).
std::string fmt_full(double x);
// Fixed significant digits for bulk numeric tables.
std::string fmt_sig(double x, int digits = 10);

using KV = std::vector<std::pair<std::string, std::string>>;
void kv_add(KV& kv, const std::string& key, double value);
void kv_add(KV& kv, const std::string& key, const std::string& value);

// Flat `key = value` block, one pair per line.
void write_key_value(const std::filesystem::path& path, const KV& kv);

void write_text(const std::filesystem::path& path, const std::string& content);
std::string read_text(const std::filesystem::path& path);

void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& traj);
void write_dispersion_csv(const std::filesystem::path& path,
                          const std::vector<DispersionSample>& samples);
void write_sweep_csv(const std::filesystem::path& path, const BifurcationSweep& sweep);
void write_region_csv(const std::filesystem::path& path, const RegionMap& map);
void write_hopf_csv(const std::filesystem::path& path, const RegionMap& map);
void write_distances_csv(const std::filesystem::path& path,
                         const std::vector<FieldDistances>& distances);

// One file per field per capture time, named <run>_<field>_t<time>.csv, with
// the header line `# field=<u|v|w> t=<time> nx=<n> ny=<n> h=<h>` followed by
// nx rows of ny comma-separated full-precision values. Returns the paths.
std::vector<std::filesystem::path> write_snapshot(const std::filesystem::path& dir,
                                                  const std::string& run,
                                                  const FieldGrid& fields,
                                                  const GridSpec& grid);

struct SnapshotMeta {
  std::string field;
  double t = 0.0;
  int nx = 0, ny = 0;
  double h = 0.0;
};
Eigen::ArrayXXd read_snapshot_field(const std::filesystem::path& path, SnapshotMeta& meta);

// Reassembles the FieldGrids of a run from its snapshot files in `dir`,
// sorted by capture time; requires all three fields at every time.
std::vector<FieldGrid> load_run_snapshots(const std::filesystem::path& dir,
                                          const std::string& run);

uint64_t fnv1a64(const std::string& data);
std::string hash_hex(uint64_t h);
uint64_t hash_file(const std::filesystem::path& path);

// Records config hash, tool versions, wall time, and per-artifact content
// hashes so that identical serial runs can be compared checksum-by-checksum.
void emit_manifest(const std::filesystem::path& dir, const std::string& run,
                   const std::string& config_text,
                   const std::vector<std::filesystem::path>& artifacts, double wall_seconds);

}  // namespace ecoepi
