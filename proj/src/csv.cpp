#include "tailwave/csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "tailwave/errors.hpp"

namespace tailwave {

std::string fmt_num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string csv_line(const std::vector<std::string>& cells) {
  std::string s;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) s += ',';
    s += cells[i];
  }
  return s;
}

std::string csv_line(const std::vector<double>& values) {
  std::vector<std::string> cells;
  cells.reserve(values.size());
  for (double v : values) cells.push_back(fmt_num(v));
  return csv_line(cells);
}

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& header)
    : out_(path), width_(header.size()) {
  if (!out_) throw ConfigError("cannot write '" + path + "'");
  out_ << csv_line(header) << '\n';
}

void CsvWriter::row(const std::vector<double>& values) {
  if (values.size() != width_) throw DomainError("CSV row width mismatch");
  out_ << csv_line(values) << '\n';
}

void CsvWriter::row_text(const std::vector<std::string>& cells) {
  if (cells.size() != width_) throw DomainError("CSV row width mismatch");
  out_ << csv_line(cells) << '\n';
}

int CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return static_cast<int>(i);
  return -1;
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  CsvTable t;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string c;
    while (std::getline(ss, c, ',')) cells.push_back(c);
    if (first) {
      first = false;
      t.header = cells;
      continue;
    }
    std::vector<double> row;
    for (auto& x : cells) {
      char* end = nullptr;
      const double v = std::strtod(x.c_str(), &end);
      if (end == x.c_str()) throw ConfigError("non-numeric cell '" + x + "' in " + path);
      row.push_back(v);
    }
    if (row.size() != t.header.size()) throw ConfigError("ragged row in " + path);
    t.rows.push_back(std::move(row));
  }
  if (t.header.empty()) throw ConfigError("'" + path + "' has no header");
  return t;
}

}  // namespace tailwave
