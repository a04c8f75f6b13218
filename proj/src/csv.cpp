#include "sphconv/csv.hpp"

#include <cstdio>

namespace sphconv {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& header)
    : out_(path), width_(header.size()) {
  if (!out_) throw IoError("cannot open for writing: " + path);
  for (std::size_t i = 0; i < header.size(); ++i)
    out_ << header[i] << (i + 1 == header.size() ? "\n" : ",");
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  if (cells.size() != width_) throw IoError("csv row width mismatch");
  for (std::size_t i = 0; i < cells.size(); ++i)
    out_ << cells[i] << (i + 1 == cells.size() ? "\n" : ",");
  if (!out_) throw IoError("csv write failed");
}

}  // namespace sphconv
