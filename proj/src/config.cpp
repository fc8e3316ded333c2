// Copyright 2026 The latticeshuttle Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "latticeshuttle/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "latticeshuttle/errors.hpp"

namespace latticeshuttle {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <typename T>
T parse_number(const std::string& key, const std::string& text) {
  const std::string v = trim(text);
  T out{};
  const auto* first = v.data();
  const auto* last = v.data() + v.size();
  const auto [ptr, ec] = std::from_chars(first, last, out);
  if (v.empty() || ec != std::errc() || ptr != last) {
    throw ConfigError("invalid value '" + v + "' for " + key);
  }
  return out;
}

template <typename T>
std::vector<T> parse_list(const std::string& key, const std::string& text) {
  std::vector<T> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_number<T>(key, item));
  if (out.empty()) throw ConfigError("empty list for " + key);
  return out;
}

// Shortest text that reads back to the same double.
std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "experiment", "sites", "u_over_j", "tau_over_th", "points",
      "tol", "seed", "out", "threads", "shots", "j_over_h_khz",
      "ramp_convention", "ramp_integrator", "direction", "start_site"};
  return keys;
}

void apply_config_value(SweepConfig& cfg, const std::string& key,
                        const std::string& raw) {
  const std::string value = trim(raw);
  if (key == "experiment") {
    cfg.experiment = parse_experiment(value);
  } else if (key == "sites") {
    cfg.sites = parse_list<int>(key, value);
  } else if (key == "u_over_j") {
    cfg.u_over_j = parse_number<double>(key, value);
  } else if (key == "tau_over_th") {
    cfg.tau_over_th = parse_list<double>(key, value);
  } else if (key == "points") {
    cfg.points = parse_number<int>(key, value);
  } else if (key == "tol") {
    cfg.tolerance = parse_number<double>(key, value);
  } else if (key == "seed") {
    cfg.seed = parse_number<std::uint64_t>(key, value);
  } else if (key == "out") {
    cfg.output_path = value;
  } else if (key == "threads") {
    cfg.threads = parse_number<int>(key, value);
  } else if (key == "shots") {
    cfg.shots = parse_number<std::uint64_t>(key, value);
  } else if (key == "j_over_h_khz") {
    if (value.empty() || value == "none") {
      cfg.j_over_h_khz.reset();
    } else {
      cfg.j_over_h_khz = parse_number<double>(key, value);
    }
  } else if (key == "ramp_convention") {
    cfg.ramp_convention = parse_ramp_convention(value);
  } else if (key == "ramp_integrator") {
    cfg.ramp_integrator = parse_ramp_integrator(value);
  } else if (key == "direction") {
    if (value == "left") {
      cfg.direction = Direction::kLeft;
    } else if (value == "right") {
      cfg.direction = Direction::kRight;
    } else {
      throw ConfigError("direction must be left or right, got '" + value + "'");
    }
  } else if (key == "start_site") {
    cfg.start_site = parse_number<int>(key, value);
  } else {
    throw ConfigError("unknown key '" + key + "'");
  }
}

SweepConfig parse_config_text(const std::string& text, const std::string& origin,
                              SweepConfig base) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    try {
      if (eq == std::string::npos) throw ConfigError("expected key=value");
      apply_config_value(base, trim(line.substr(0, eq)), line.substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ConfigError(origin + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return base;
}

SweepConfig parse_config(const std::string& path, SweepConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str(), path, std::move(base));
}

std::string format_config(const SweepConfig& cfg) {
  std::ostringstream os;
  auto join_ints = [](const std::vector<int>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
  };
  auto join_doubles = [](const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + format_double(v[i]);
    return s;
  };
  os << "experiment=" << to_string(cfg.experiment) << '\n';
  // Empty lists mean "experiment default" and are left out.
  if (!cfg.sites.empty()) os << "sites=" << join_ints(cfg.sites) << '\n';
  os << "u_over_j=" << format_double(cfg.u_over_j) << '\n';
  if (!cfg.tau_over_th.empty()) os << "tau_over_th=" << join_doubles(cfg.tau_over_th) << '\n';
  os << "points=" << cfg.points << '\n';
  os << "tol=" << format_double(cfg.tolerance) << '\n';
  os << "seed=" << cfg.seed << '\n';
  os << "out=" << cfg.output_path << '\n';
  os << "threads=" << cfg.threads << '\n';
  os << "shots=" << cfg.shots << '\n';
  os << "j_over_h_khz=" << (cfg.j_over_h_khz ? format_double(*cfg.j_over_h_khz) : "none")
     << '\n';
  os << "ramp_convention=" << to_string(cfg.ramp_convention) << '\n';
  os << "ramp_integrator=" << to_string(cfg.ramp_integrator) << '\n';
  os << "direction=" << (cfg.direction == Direction::kLeft ? "left" : "right") << '\n';
  os << "start_site=" << cfg.start_site << '\n';
  return os.str();
}

}  // namespace latticeshuttle
