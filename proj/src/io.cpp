#include "ecoepi/io.hpp"

#include <Eigen/Core>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "ecoepi/errors.hpp"

namespace ecoepi {

namespace fs = std::filesystem;

std::string fmt_full(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string fmt_sig(double x, int digits) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, x);
  return buf;
}

void kv_add(KV& kv, const std::string& key, double value) { kv.emplace_back(key, fmt_full(value)); }
void kv_add(KV& kv, const std::string& key, const std::string& value) {
  kv.emplace_back(key, value);
}

namespace {

std::ofstream open_out(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw validation_error("cannot open for writing: " + path.string());
  return out;
}

}  // namespace

void write_key_value(const fs::path& path, const KV& kv) {
  std::ofstream out = open_out(path);
  for (const auto& [k, v] : kv) out << k << " = " << v << "\n";
}

void write_text(const fs::path& path, const std::string& content) {
  open_out(path) << content;
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw validation_error("cannot open for reading: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_trajectory_csv(const fs::path& path, const Trajectory& traj) {
  std::ofstream out = open_out(path);
  out << "t,u,v,w\n";
  for (size_t i = 0; i < traj.times.size(); ++i)
    out << fmt_sig(traj.times[i]) << ',' << fmt_sig(traj.states[i][0]) << ','
        << fmt_sig(traj.states[i][1]) << ',' << fmt_sig(traj.states[i][2]) << "\n";
}

void write_dispersion_csv(const fs::path& path, const std::vector<DispersionSample>& samples) {
  std::ofstream out = open_out(path);
  out << "k,rho1,rho2,rho3,phi\n";
  for (const DispersionSample& s : samples)
    out << fmt_sig(s.k) << ',' << fmt_sig(s.rho1) << ',' << fmt_sig(s.rho2) << ','
        << fmt_sig(s.rho3) << ',' << fmt_sig(s.phi) << "\n";
}

void write_sweep_csv(const fs::path& path, const BifurcationSweep& sweep) {
  std::ofstream out = open_out(path);
  out << sweep.parameter << ",extremum_v,diverged\n";
  for (size_t i = 0; i < sweep.grid.size(); ++i) {
    if (sweep.diverged[i]) {
      out << fmt_sig(sweep.grid[i]) << ",,1\n";
      continue;
    }
    for (double e : sweep.extrema[i])
      out << fmt_sig(sweep.grid[i]) << ',' << fmt_sig(e) << ",0\n";
  }
}

void write_region_csv(const fs::path& path, const RegionMap& map) {
  std::ofstream out = open_out(path);
  out << map.axis1.name << ',' << map.axis2.name << ",verdict,phi0\n";
  for (size_t i = 0; i < map.axis1.values.size(); ++i)
    for (size_t j = 0; j < map.axis2.values.size(); ++j)
      out << fmt_sig(map.axis1.values[i]) << ',' << fmt_sig(map.axis2.values[j]) << ','
          << to_string(map.at(i, j)) << ',' << fmt_sig(map.phi0[i * map.axis2.values.size() + j])
          << "\n";
}

void write_hopf_csv(const fs::path& path, const RegionMap& map) {
  std::ofstream out = open_out(path);
  out << "axis,row,col,param_at_zero\n";
  for (const HopfCrossing& c : map.hopf)
    out << c.axis << ',' << c.i << ',' << c.j << ',' << fmt_sig(c.param_at_zero) << "\n";
}

void write_distances_csv(const fs::path& path, const std::vector<FieldDistances>& distances) {
  std::ofstream out = open_out(path);
  out << "t_a,t_b,field,distance\n";
  for (const FieldDistances& d : distances) {
    out << fmt_sig(d.t_a) << ',' << fmt_sig(d.t_b) << ",u," << fmt_sig(d.u) << "\n";
    out << fmt_sig(d.t_a) << ',' << fmt_sig(d.t_b) << ",v," << fmt_sig(d.v) << "\n";
    out << fmt_sig(d.t_a) << ',' << fmt_sig(d.t_b) << ",w," << fmt_sig(d.w) << "\n";
  }
}

namespace {

std::string time_tag(double t) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", t);
  return buf;
}

void write_field_csv(const fs::path& path, const Eigen::ArrayXXd& a, const char* name,
                     double t, double h) {
  std::ofstream out = open_out(path);
  out << "# field=" << name << " t=" << time_tag(t) << " nx=" << a.rows()
      << " ny=" << a.cols() << " h=" << fmt_full(h) << "\n";
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      if (j) out << ',';
      out << fmt_full(a(i, j));
    }
    out << "\n";
  }
}

}  // namespace

std::vector<fs::path> write_snapshot(const fs::path& dir, const std::string& run,
                                     const FieldGrid& fields, const GridSpec& grid) {
  std::vector<fs::path> paths;
  const std::string tag = time_tag(fields.time);
  const std::pair<const char*, const Eigen::ArrayXXd*> items[] = {
      {"u", &fields.u}, {"v", &fields.v}, {"w", &fields.w}};
  for (const auto& [name, arr] : items) {
    fs::path p = dir / (run + "_" + name + "_t" + tag + ".csv");
    write_field_csv(p, *arr, name, fields.time, grid.h);
    paths.push_back(p);
  }
  return paths;
}

Eigen::ArrayXXd read_snapshot_field(const fs::path& path, SnapshotMeta& meta) {
  std::ifstream in(path);
  if (!in) throw validation_error("cannot open snapshot: " + path.string());
  std::string header;
  std::getline(in, header);
  char field[8] = {0};
  if (std::sscanf(header.c_str(), "# field=%7[^ ] t=%lf nx=%d ny=%d h=%lf", field, &meta.t,
                  &meta.nx, &meta.ny, &meta.h) != 5)
    throw validation_error("bad snapshot header in " + path.string());
  meta.field = field;
  if (meta.nx <= 0 || meta.ny <= 0)
    throw validation_error("bad snapshot dimensions in " + path.string());
  Eigen::ArrayXXd a(meta.nx, meta.ny);
  std::string line;
  for (int i = 0; i < meta.nx; ++i) {
    if (!std::getline(in, line))
      throw validation_error("truncated snapshot: " + path.string());
    std::istringstream row(line);
    std::string cell;
    for (int j = 0; j < meta.ny; ++j) {
      if (!std::getline(row, cell, ','))
        throw validation_error("short row in snapshot: " + path.string());
      a(i, j) = std::stod(cell);
    }
  }
  return a;
}

std::vector<FieldGrid> load_run_snapshots(const fs::path& dir, const std::string& run) {
  // time -> (field name -> array)
  std::map<double, std::map<std::string, Eigen::ArrayXXd>> by_time;
  const std::string prefix = run + "_";
  for (const auto& entry : fs::directory_iterator(dir)) {
    const std::string name = entry.path().filename().string();
    if (name.rfind(prefix, 0) != 0 || entry.path().extension() != ".csv") continue;
    // expect <run>_<field>_t<time>.csv
    const std::string rest = name.substr(prefix.size());
    if (rest.size() < 4 || rest[1] != '_' || rest[2] != 't') continue;
    SnapshotMeta meta;
    Eigen::ArrayXXd a = read_snapshot_field(entry.path(), meta);
    by_time[meta.t][meta.field] = std::move(a);
  }
  if (by_time.empty())
    throw validation_error("no snapshots found for run '" + run + "' in " + dir.string());
  std::vector<FieldGrid> out;
  for (auto& [t, fields] : by_time) {
    if (fields.size() != 3)
      throw validation_error("incomplete snapshot set at t=" + time_tag(t) + " for run '" +
                             run + "'");
    FieldGrid f;
    f.u = std::move(fields.at("u"));
    f.v = std::move(fields.at("v"));
    f.w = std::move(fields.at("w"));
    f.time = t;
    out.push_back(std::move(f));
  }
  return out;
}

uint64_t fnv1a64(const std::string& data) {
  uint64_t h = 14695981039346656037ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hash_hex(uint64_t h) {
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

uint64_t hash_file(const fs::path& path) { return fnv1a64(read_text(path)); }

void emit_manifest(const fs::path& dir, const std::string& run, const std::string& config_text,
                   const std::vector<fs::path>& artifacts, double wall_seconds) {
  std::ofstream out = open_out(dir / (run + "_manifest.txt"));
  out << "run = " << run << "\n";
  out << "config_hash = " << hash_hex(fnv1a64(config_text)) << "\n";
  out << "compiler = " << __VERSION__ << "\n";
  out << "eigen = " << EIGEN_WORLD_VERSION << '.' << EIGEN_MAJOR_VERSION << '.'
      << EIGEN_MINOR_VERSION << "\n";
  out << "wall_time_s = " << fmt_sig(wall_seconds, 4) << "\n";
  for (const fs::path& a : artifacts)
    out << "artifact = " << a.filename().string() << ' ' << hash_hex(hash_file(a)) << "\n";
}

}  // namespace ecoepi
