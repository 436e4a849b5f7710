#include "kdvlab/csv.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "kdvlab/error.hpp"

namespace kdvlab::csv {

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex(std::uint64_t value) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(value));
  return buf;
}

std::string format(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string format(long long value) { return std::to_string(value); }
std::string format(int value) { return std::to_string(value); }

Writer::Writer(const std::string& path, const std::string& schema, const std::string& config_hash,
               const std::vector<std::string>& columns)
    : path_(path), out_(path), columns_(columns) {
  if (!out_) throw Error(ErrorKind::Io, "cannot write '" + path + "'");
  out_ << "# kdvlab " << kVersion << " schema=" << schema << " config=" << config_hash << "\n";
}

void Writer::meta(const std::string& key, const std::string& value) {
  require(!header_written_, ErrorKind::InvalidArgument, "csv metadata after the first row");
  out_ << "# " << key << "=" << value << "\n";
}

void Writer::header() {
  for (size_t i = 0; i < columns_.size(); ++i) out_ << (i ? "," : "") << columns_[i];
  out_ << "\n";
  header_written_ = true;
}

void Writer::row(const std::vector<std::string>& cells) {
  require(cells.size() == columns_.size(), ErrorKind::InvalidArgument,
          "csv row has " + std::to_string(cells.size()) + " cells, expected " + std::to_string(columns_.size()));
  if (!header_written_) header();
  for (size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
  out_ << "\n";
}

void Writer::close() {
  if (!header_written_) header();
  out_.close();
  if (!out_) throw Error(ErrorKind::Io, "error writing '" + path_ + "'");
}

size_t Table::column(const std::string& name) const {
  for (size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == name) return i;
  }
  throw Error(ErrorKind::InvalidArgument, "csv column '" + name + "' not found");
}

Table read(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path + "'");
  Table t;
  std::string line;
  auto split = [](const std::string& s) {
    std::vector<std::string> cells;
    std::stringstream ss(s);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!s.empty() && s.back() == ',') cells.emplace_back();
    return cells;
  };
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      t.meta.push_back(line.substr(line.size() > 1 && line[1] == ' ' ? 2 : 1));
    } else if (t.columns.empty()) {
      t.columns = split(line);
    } else {
      auto cells = split(line);
      require(cells.size() == t.columns.size(), ErrorKind::Io, path + ": ragged row");
      t.rows.push_back(std::move(cells));
    }
  }
  require(!t.columns.empty(), ErrorKind::Io, path + ": no header");
  return t;
}

}  // namespace kdvlab::csv
