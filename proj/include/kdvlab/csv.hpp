#pragma once

// CSV output. Every file starts with a comment line
//   # kdvlab <version> schema=<name> config=<fnv1a-64 hex>
// followed by the column header. Floats use 17 significant digits.

#include <cstdint>
#include <fstream>
#include <initializer_list>
#include <string>
#include <vector>

namespace kdvlab::csv {

inline constexpr const char* kVersion = "1.0.0";

std::uint64_t fnv1a(const std::string& text);
std::string hex(std::uint64_t value);
std::string format(double value);
std::string format(long long value);
std::string format(int value);

class Writer {
 public:
  Writer(const std::string& path, const std::string& schema, const std::string& config_hash,
         const std::vector<std::string>& columns);

  /// Extra "# key=value" metadata line; only valid before the first row.
  void meta(const std::string& key, const std::string& value);
  void row(const std::vector<std::string>& cells);
  void close();

 private:
  void header();

  std::string path_;
  std::ofstream out_;
  std::vector<std::string> columns_;
  bool header_written_ = false;
};

struct Table {
  std::vector<std::string> meta;  // comment lines without '#'
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  size_t column(const std::string& name) const;
};

/// Reads a file written by Writer (comment lines, header, rows).
Table read(const std::string& path);

}  // namespace kdvlab::csv
