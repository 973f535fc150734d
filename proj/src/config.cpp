#include "config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "error.hpp"

namespace qrc::config {

namespace {

std::string trim(const std::string &s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_list(const std::string &value) {
  std::vector<std::string> parts;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) parts.push_back(item);
  }
  return parts;
}

double parse_double(const std::string &key, const std::string &value) {
  try {
    size_t pos = 0;
    double v = std::stod(value, &pos);
    require(pos == value.size(), QRC_ERR_CONFIG, "");
    return v;
  } catch (...) {
    fail(QRC_ERR_CONFIG, "config key '" + key + "' has non-numeric value '" +
                             value + "'");
  }
}

} // namespace

void RunConfig::set(const std::string &key, const std::string &value) {
  require(!key.empty(), QRC_ERR_CONFIG, "empty config key");
  map_[key] = trim(value);
}

bool RunConfig::has(const std::string &key) const { return map_.count(key); }

void RunConfig::load_file(const std::string &path) {
  std::ifstream in(path);
  require(in.good(), QRC_ERR_IO, "cannot open config file " + path);
  if (path.size() > 5 && path.substr(path.size() - 5) == ".json") {
    nlohmann::json j;
    try {
      in >> j;
    } catch (const std::exception &e) {
      fail(QRC_ERR_CONFIG, std::string("invalid manifest JSON: ") + e.what());
    }
    require(j.contains("config") && j["config"].is_object(), QRC_ERR_CONFIG,
            "manifest has no config object");
    for (auto &[k, v] : j["config"].items())
      set(k, v.get<std::string>());
    return;
  }
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    require(eq != std::string::npos, QRC_ERR_CONFIG,
            path + ":" + std::to_string(line_no) + ": expected key = value");
    set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
}

std::string RunConfig::get_str(const std::string &key,
                               const std::string &dflt) const {
  auto it = map_.find(key);
  return it == map_.end() ? dflt : it->second;
}

double RunConfig::get_double(const std::string &key, double dflt) const {
  auto it = map_.find(key);
  return it == map_.end() ? dflt : parse_double(key, it->second);
}

int RunConfig::get_int(const std::string &key, int dflt) const {
  auto it = map_.find(key);
  if (it == map_.end()) return dflt;
  double v = parse_double(key, it->second);
  int i = int(v);
  require(double(i) == v, QRC_ERR_CONFIG,
          "config key '" + key + "' must be an integer, got " + it->second);
  return i;
}

uint64_t RunConfig::get_u64(const std::string &key, uint64_t dflt) const {
  auto it = map_.find(key);
  if (it == map_.end()) return dflt;
  uint64_t v = 0;
  auto [p, ec] = std::from_chars(it->second.data(),
                                 it->second.data() + it->second.size(), v);
  require(ec == std::errc() && p == it->second.data() + it->second.size(),
          QRC_ERR_CONFIG, "config key '" + key +
                              "' must be an unsigned integer, got " +
                              it->second);
  return v;
}

bool RunConfig::get_bool(const std::string &key, bool dflt) const {
  auto it = map_.find(key);
  if (it == map_.end()) return dflt;
  std::string v = it->second;
  std::transform(v.begin(), v.end(), v.begin(), ::tolower);
  if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
  if (v == "0" || v == "false" || v == "no" || v == "off") return false;
  fail(QRC_ERR_CONFIG, "config key '" + key + "' must be a boolean, got " +
                           it->second);
}

std::vector<double> RunConfig::get_double_list(
    const std::string &key, const std::vector<double> &dflt) const {
  auto it = map_.find(key);
  if (it == map_.end()) return dflt;
  std::vector<double> out;
  for (const auto &p : split_list(it->second))
    out.push_back(parse_double(key, p));
  require(!out.empty(), QRC_ERR_CONFIG,
          "config key '" + key + "' has an empty list");
  return out;
}

std::vector<int> RunConfig::get_int_list(const std::string &key,
                                         const std::vector<int> &dflt) const {
  auto it = map_.find(key);
  if (it == map_.end()) return dflt;
  std::vector<int> out;
  for (const auto &p : split_list(it->second)) {
    double v = parse_double(key, p);
    require(double(int(v)) == v, QRC_ERR_CONFIG,
            "config key '" + key + "' must list integers");
    out.push_back(int(v));
  }
  require(!out.empty(), QRC_ERR_CONFIG,
          "config key '" + key + "' has an empty list");
  return out;
}

std::vector<std::string> RunConfig::get_str_list(
    const std::string &key, const std::vector<std::string> &dflt) const {
  auto it = map_.find(key);
  if (it == map_.end()) return dflt;
  auto out = split_list(it->second);
  require(!out.empty(), QRC_ERR_CONFIG,
          "config key '" + key + "' has an empty list");
  return out;
}

void RunConfig::check_keys(const std::vector<std::string> &allowed,
                           const std::string &command) const {
  for (const auto &[key, value] : map_) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      fail(QRC_ERR_CONFIG, "unknown config key '" + key + "' for command '" +
                               command + "'");
  }
}

} // namespace qrc::config
