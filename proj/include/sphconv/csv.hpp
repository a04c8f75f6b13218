#ifndef SPHCONV_CSV_HPP
#define SPHCONV_CSV_HPP

#include <fstream>
#include <string>
#include <vector>

#include "sphconv/errors.hpp"

namespace sphconv {

/// 17-significant-digit decimal rendering; the one float format every
/// emitted table uses, so identical runs produce identical bytes.
std::string format_double(double v);

class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::string>& header);
  void row(const std::vector<std::string>& cells);
  static std::string cell(double v) { return format_double(v); }

 private:
  std::ofstream out_;
  std::size_t width_;
};

}  // namespace sphconv

#endif
