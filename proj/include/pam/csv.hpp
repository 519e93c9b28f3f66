#pragma once

// CSV output. All numbers are written with %.17g so files round-trip doubles
// exactly and re-runs are byte-comparable; '.' decimal separator, '\n' line
// ends, UTF-8.

#include <cstdio>
#include <string>
#include <vector>

namespace pam {

std::string fmt_g17(double v);

class CsvWriter {
public:
  explicit CsvWriter(const std::string& path);
  ~CsvWriter();
  CsvWriter(const CsvWriter&) = delete;
  CsvWriter& operator=(const CsvWriter&) = delete;

  void header(const std::vector<std::string>& names);
  void row(const std::vector<double>& values);
  void row_cells(const std::vector<std::string>& cells);

private:
  void line(const std::vector<std::string>& cells);

  std::FILE* f_ = nullptr;
  std::string path_;
};

} // namespace pam
