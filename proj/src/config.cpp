#include "herzlab/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace herzlab {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

[[noreturn]] void bad_value(const std::string& section, const std::string& key,
                            const std::string& value, const std::string& want) {
  throw std::runtime_error("config: [" + section + "] " + key + " = '" + value +
                           "' is not " + want);
}

}  // namespace

Config Config::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("config: cannot open " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return parse(text.str());
}

Config Config::parse(const std::string& text) {
  Config cfg;
  std::istringstream in(text);
  std::string line, section;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == ';') continue;
    if (t.front() == '[') {
      if (t.back() != ']')
        throw std::runtime_error("config: unterminated section header on line " +
                                 std::to_string(line_no));
      section = trim(t.substr(1, t.size() - 2));
      cfg.sections_[section];  // record even when empty, so the echo shows it
      continue;
    }
    std::size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("config: expected key = value on line " + std::to_string(line_no));
    std::string key = trim(t.substr(0, eq));
    std::string value = trim(t.substr(eq + 1));
    if (key.empty())
      throw std::runtime_error("config: empty key on line " + std::to_string(line_no));
    cfg.sections_[section][key] = value;
  }
  return cfg;
}

bool Config::has(const std::string& section, const std::string& key) const {
  auto sec = sections_.find(section);
  return sec != sections_.end() && sec->second.count(key) > 0;
}

std::string Config::get(const std::string& section, const std::string& key,
                        const std::string& fallback) const {
  auto sec = sections_.find(section);
  if (sec == sections_.end()) return fallback;
  auto it = sec->second.find(key);
  return it == sec->second.end() ? fallback : it->second;
}

double Config::get_double(const std::string& section, const std::string& key,
                          double fallback) const {
  if (!has(section, key)) return fallback;
  const std::string& value = sections_.at(section).at(key);
  try {
    std::size_t used = 0;
    double v = std::stod(value, &used);
    if (trim(value.substr(used)).empty()) return v;
  } catch (const std::exception&) {
  }
  bad_value(section, key, value, "a number");
}

int Config::get_int(const std::string& section, const std::string& key, int fallback) const {
  if (!has(section, key)) return fallback;
  const std::string& value = sections_.at(section).at(key);
  try {
    std::size_t used = 0;
    int v = std::stoi(value, &used);
    if (trim(value.substr(used)).empty()) return v;
  } catch (const std::exception&) {
  }
  bad_value(section, key, value, "an integer");
}

std::uint64_t Config::get_u64(const std::string& section, const std::string& key,
                              std::uint64_t fallback) const {
  if (!has(section, key)) return fallback;
  const std::string& value = sections_.at(section).at(key);
  try {
    std::size_t used = 0;
    unsigned long long v = std::stoull(value, &used);
    if (trim(value.substr(used)).empty()) return static_cast<std::uint64_t>(v);
  } catch (const std::exception&) {
  }
  bad_value(section, key, value, "an unsigned integer");
}

bool Config::get_bool(const std::string& section, const std::string& key, bool fallback) const {
  if (!has(section, key)) return fallback;
  const std::string& value = sections_.at(section).at(key);
  std::string v = lower(trim(value));
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  bad_value(section, key, value, "a boolean");
}

void Config::set(const std::string& section, const std::string& key, const std::string& value) {
  sections_[section][key] = value;
}

nlohmann::json Config::to_json() const {
  nlohmann::json out = nlohmann::json::object();
  for (const auto& [section, entries] : sections_) {
    nlohmann::json sec = nlohmann::json::object();
    for (const auto& [key, value] : entries) sec[key] = value;
    out[section.empty() ? "(global)" : section] = std::move(sec);
  }
  return out;
}

}  // namespace herzlab
