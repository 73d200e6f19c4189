#pragma once

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "rcfdtd/errors.hpp"

namespace rcfdtd {

/// Fixed %.12g formatting so identical runs emit byte-identical files.
inline std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  int column(const std::string& name) const {
    for (size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return static_cast<int>(i);
    return -1;
  }
  double num(size_t row, int col) const { return std::stod(rows[row][col]); }
};

CsvTable read_csv(const std::string& path);

class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::string>& header);
  void row(const std::vector<std::string>& cells);
  void row_numbers(const std::vector<double>& values);

 private:
  std::ofstream out_;
};

}  // namespace rcfdtd
