// CSV output with "%.17g" numbers and a header row.
#pragma once

#include <fstream>
#include <string>
#include <vector>

namespace tailwave {

std::string fmt_num(double x);

class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::string>& header);
  void row(const std::vector<double>& values);
  void row_text(const std::vector<std::string>& cells);

 private:
  std::ofstream out_;
  std::size_t width_;
};

std::string csv_line(const std::vector<std::string>& cells);
std::string csv_line(const std::vector<double>& values);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
  int column(const std::string& name) const;  // -1 if absent
};

CsvTable read_csv(const std::string& path);

}  // namespace tailwave
