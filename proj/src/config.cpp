#include "ecoepi/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "ecoepi/errors.hpp"
#include "ecoepi/io.hpp"

namespace ecoepi {

namespace {

const std::set<std::string>& analysis_whitelist() {
  static const std::set<std::string> keys = {
      // initial state and ODE-time settings
      "init_u", "init_v", "init_w", "t_end", "dt", "decimate",
      // Lyapunov settings
      "transient", "total", "renorm_interval",
      // bifurcation sweep axis
      "parameter", "grid_min", "grid_max", "grid_count", "log_spacing", "window",
      // region scan axes
      "axis1_name", "axis1_min", "axis1_max", "axis1_count", "axis1_log",
      "axis2_name", "axis2_min", "axis2_max", "axis2_count", "axis2_log",
      // dispersion sampling
      "k_max", "k_count",
      // simulation extras
      "perturb_fields", "w_prime"};
  return keys;
}

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

double parse_number(const std::string& key, const std::string& value) {
  try {
    size_t used = 0;
    double x = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument("trailing characters");
    return x;
  } catch (const std::exception&) {
    throw validation_error("config: key '" + key + "' has non-numeric value '" + value + "'");
  }
}

std::vector<double> parse_number_list(const std::string& key, const std::string& value) {
  std::vector<double> out;
  std::string item;
  std::istringstream ss(value);
  while (std::getline(ss, item, ',')) {
    std::istringstream parts(item);
    std::string tok;
    while (parts >> tok) out.push_back(parse_number(key, tok));
  }
  if (out.empty()) throw validation_error("config: key '" + key + "' has an empty list");
  return out;
}

}  // namespace

bool RunConfig::operator==(const RunConfig& other) const {
  for (const auto& [name, field] : param_fields())
    if (params.*field != other.params.*field) return false;
  return L == other.L && h == other.h && dt == other.dt &&
         schedule_times == other.schedule_times && t_end == other.t_end &&
         interval == other.interval && has_schedule == other.has_schedule &&
         analysis == other.analysis && out_dir == other.out_dir && run_name == other.run_name;
}

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  std::set<std::string> params_seen;
  std::set<std::string> grid_seen, schedule_seen, output_seen;
  std::string section;
  std::istringstream lines(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(lines, raw)) {
    ++lineno;
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw validation_error("config: malformed section header at line " +
                               std::to_string(lineno));
      section = trim(line.substr(1, line.size() - 2));
      if (section != "params" && section != "grid" && section != "schedule" &&
          section != "analysis" && section != "output")
        throw validation_error("config: unknown section [" + section + "]");
      if (section == "schedule") cfg.has_schedule = true;
      continue;
    }
    const size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw validation_error("config: expected 'key = value' at line " + std::to_string(lineno));
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (section.empty())
      throw validation_error("config: key '" + key + "' appears before any section");
    if (key.empty() || value.empty())
      throw validation_error("config: empty key or value at line " + std::to_string(lineno));

    if (section == "params") {
      double ModelParams::* field = nullptr;
      try {
        field = param_field(key);
      } catch (const validation_error&) {
        throw validation_error("config: unknown key '" + key + "' in [params]");
      }
      if (!params_seen.insert(key).second)
        throw validation_error("config: duplicate key '" + key + "' in [params]");
      cfg.params.*field = parse_number(key, value);
    } else if (section == "grid") {
      if (!grid_seen.insert(key).second)
        throw validation_error("config: duplicate key '" + key + "' in [grid]");
      if (key == "L")
        cfg.L = parse_number(key, value);
      else if (key == "h")
        cfg.h = parse_number(key, value);
      else if (key == "dt")
        cfg.dt = parse_number(key, value);
      else
        throw validation_error("config: unknown key '" + key + "' in [grid]");
    } else if (section == "schedule") {
      if (!schedule_seen.insert(key).second)
        throw validation_error("config: duplicate key '" + key + "' in [schedule]");
      if (key == "times")
        cfg.schedule_times = parse_number_list(key, value);
      else if (key == "t_end")
        cfg.t_end = parse_number(key, value);
      else if (key == "interval")
        cfg.interval = parse_number(key, value);
      else
        throw validation_error("config: unknown key '" + key + "' in [schedule]");
    } else if (section == "analysis") {
      if (!analysis_whitelist().count(key))
        throw validation_error("config: unknown key '" + key + "' in [analysis]");
      if (!cfg.analysis.emplace(key, value).second)
        throw validation_error("config: duplicate key '" + key + "' in [analysis]");
    } else {  // output
      if (!output_seen.insert(key).second)
        throw validation_error("config: duplicate key '" + key + "' in [output]");
      if (key == "dir")
        cfg.out_dir = value;
      else if (key == "run_name")
        cfg.run_name = value;
      else
        throw validation_error("config: unknown key '" + key + "' in [output]");
    }
  }

  for (const auto& [name, field] : param_fields())
    if (!params_seen.count(name))
      throw validation_error("config: missing required parameter '" + name + "' in [params]");

  if (cfg.has_schedule) {
    const bool by_times = !cfg.schedule_times.empty();
    const bool by_span = cfg.t_end >= 0.0 || cfg.interval >= 0.0;
    if (by_times && by_span)
      throw validation_error("config: [schedule] takes either 'times' or 't_end'+'interval'");
    if (!by_times && !(cfg.t_end > 0.0 && cfg.interval > 0.0))
      throw validation_error("config: [schedule] needs 'times' or both 't_end' and 'interval'");
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  return parse_config(read_text(path));
}

std::string write_config(const RunConfig& cfg) {
  std::ostringstream out;
  out << "[params]\n";
  for (const auto& [name, field] : param_fields())
    out << name << " = " << fmt_full(cfg.params.*field) << "\n";
  out << "\n[grid]\n";
  out << "L = " << fmt_full(cfg.L) << "\n";
  out << "h = " << fmt_full(cfg.h) << "\n";
  out << "dt = " << fmt_full(cfg.dt) << "\n";
  if (cfg.has_schedule) {
    out << "\n[schedule]\n";
    if (!cfg.schedule_times.empty()) {
      out << "times = ";
      for (size_t i = 0; i < cfg.schedule_times.size(); ++i)
        out << (i ? ", " : "") << fmt_full(cfg.schedule_times[i]);
      out << "\n";
    } else {
      out << "t_end = " << fmt_full(cfg.t_end) << "\n";
      out << "interval = " << fmt_full(cfg.interval) << "\n";
    }
  }
  if (!cfg.analysis.empty()) {
    out << "\n[analysis]\n";
    for (const auto& [k, v] : cfg.analysis) out << k << " = " << v << "\n";
  }
  out << "\n[output]\n";
  out << "dir = " << cfg.out_dir << "\n";
  out << "run_name = " << cfg.run_name << "\n";
  return out.str();
}

double analysis_double(const RunConfig& cfg, const std::string& key, double fallback) {
  auto it = cfg.analysis.find(key);
  return it == cfg.analysis.end() ? fallback : parse_number(key, it->second);
}

int analysis_int(const RunConfig& cfg, const std::string& key, int fallback) {
  auto it = cfg.analysis.find(key);
  if (it == cfg.analysis.end()) return fallback;
  const double x = parse_number(key, it->second);
  if (std::abs(x - std::llround(x)) > 1e-9)
    throw validation_error("config: key '" + key + "' must be an integer");
  return static_cast<int>(std::llround(x));
}

std::string analysis_str(const RunConfig& cfg, const std::string& key,
                         const std::string& fallback) {
  auto it = cfg.analysis.find(key);
  return it == cfg.analysis.end() ? fallback : it->second;
}

}  // namespace ecoepi
