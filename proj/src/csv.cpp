#include "rcfdtd/csv.hpp"

#include <sstream>

namespace rcfdtd {

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open CSV file: " + path);
  CsvTable t;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (first) {
      t.header = cells;
      first = false;
    } else {
      t.rows.push_back(cells);
    }
  }
  if (first) throw ConfigError("empty CSV file: " + path);
  return t;
}

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& header)
    : out_(path) {
  if (!out_) throw ConfigError("cannot open CSV file for writing: " + path);
  for (size_t i = 0; i < header.size(); ++i) out_ << (i ? "," : "") << header[i];
  out_ << "\n";
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  for (size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
  out_ << "\n";
}

void CsvWriter::row_numbers(const std::vector<double>& values) {
  for (size_t i = 0; i < values.size(); ++i)
    out_ << (i ? "," : "") << format_number(values[i]);
  out_ << "\n";
}

}  // namespace rcfdtd
