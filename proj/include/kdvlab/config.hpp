#pragma once

// Flat key = value configuration files.
//
//   # comment
//   scheme = sbdf2
//   dt = 0.00324, 0.00609      # lists are comma separated
//
// Keys are lower case letters, digits, '_' and '.'. A key may appear once.

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace kdvlab::config {

class Config {
 public:
  Config() = default;

  static Config parse(std::string_view text, const std::string& origin = "<string>");
  static Config load(const std::string& path);

  bool has(const std::string& key) const;
  /// Overrides or adds a key (command-line flags).
  void set(const std::string& key, const std::string& value);
  /// Parses "key=value".
  void set_assignment(const std::string& assignment);

  std::string get(const std::string& key) const;
  std::string get(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  int get_int(const std::string& key, int fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::vector<std::string> get_list(const std::string& key) const;
  std::vector<std::string> get_list(const std::string& key, const std::vector<std::string>& fallback) const;
  std::vector<double> get_doubles(const std::string& key) const;
  std::vector<double> get_doubles(const std::string& key, const std::vector<double>& fallback) const;
  std::vector<int> get_ints(const std::string& key, const std::vector<int>& fallback) const;

  /// Sorted "key=value" lines; the input to the config hash.
  std::string canonical() const;
  const std::map<std::string, std::string>& entries() const { return values_; }

 private:
  std::string where(const std::string& key) const;

  std::map<std::string, std::string> values_;
  std::map<std::string, std::string> origins_;  // "file:line" or "override"
};

}  // namespace kdvlab::config
