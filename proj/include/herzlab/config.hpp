#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "json.hpp"

namespace herzlab {

/// INI-style experiment configuration: "[section]" headers, "key = value"
/// pairs, '#' or ';' comments.  Unknown keys are preserved (and echoed into
/// summaries); typed getters fall back to defaults.
class Config {
 public:
  Config() = default;
  static Config load(const std::string& path);     // throws std::runtime_error
  static Config parse(const std::string& text);

  bool has(const std::string& section, const std::string& key) const;
  std::string get(const std::string& section, const std::string& key,
                  const std::string& fallback) const;
  double get_double(const std::string& section, const std::string& key, double fallback) const;
  int get_int(const std::string& section, const std::string& key, int fallback) const;
  std::uint64_t get_u64(const std::string& section, const std::string& key,
                        std::uint64_t fallback) const;
  bool get_bool(const std::string& section, const std::string& key, bool fallback) const;

  void set(const std::string& section, const std::string& key, const std::string& value);

  nlohmann::json to_json() const;  // full echo, sections as objects

 private:
  std::map<std::string, std::map<std::string, std::string>> sections_;
};

}  // namespace herzlab
