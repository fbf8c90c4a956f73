#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace uavmec::harness {

// In-memory CSV table with a fixed header. Cells holding a comma, quote or
// newline are quoted with doubled inner quotes. Doubles are written with 17
// significant digits so values round-trip exactly.
class CsvTable {
 public:
  CsvTable() = default;
  explicit CsvTable(std::vector<std::string> header);

  void add_row(std::vector<std::string> cells);

  const std::vector<std::string>& header() const { return header_; }
  std::size_t size() const { return rows_.size(); }
  std::string str() const;

  // Writes to "<path>.tmp" and renames over `path`.
  void write(const std::string& path) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

std::string format_double(double v);

inline std::string cell(double v) { return format_double(v); }
inline std::string cell(std::size_t v) { return std::to_string(v); }
inline std::string cell(std::string v) { return v; }

// Writes `text` to "<path>.tmp" and renames it over `path`, creating parent
// directories as needed.
void write_file_atomic(const std::string& path, const std::string& text);

}  // namespace uavmec::harness
