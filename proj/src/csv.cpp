#include "pam/csv.hpp"

#include <cstdio>

#include "pam/errors.hpp"

namespace pam {

std::string fmt_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

CsvWriter::CsvWriter(const std::string& path) : path_(path) {
  f_ = std::fopen(path.c_str(), "wb");
  if (!f_) throw ConfigError("cannot open for writing: " + path);
}

CsvWriter::~CsvWriter() {
  if (f_) std::fclose(f_);
}

void CsvWriter::line(const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) std::fputc(',', f_);
    std::fputs(cells[i].c_str(), f_);
  }
  std::fputc('\n', f_);
}

void CsvWriter::header(const std::vector<std::string>& names) { line(names); }

void CsvWriter::row(const std::vector<double>& values) {
  std::vector<std::string> cells;
  cells.reserve(values.size());
  for (double v : values) cells.push_back(fmt_g17(v));
  line(cells);
}

void CsvWriter::row_cells(const std::vector<std::string>& cells) {
  line(cells);
}

} // namespace pam
