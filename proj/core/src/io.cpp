#include "spr/io.hpp"

#include <cstdio>
#include <iostream>

#include "spr/errors.hpp"

namespace spr {

std::string fmt9(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  // Guard against a surprise locale swapping the decimal separator.
  for (char* p = buf; *p; ++p)
    if (*p == ',') *p = '.';
  return buf;
}

CsvWriter::CsvWriter(const std::string& path) {
  if (path == "-") {
    out_ = &std::cout;
  } else {
    file_.open(path);
    if (!file_) throw InvalidInput("cannot open output file: " + path);
    out_ = &file_;
  }
}

CsvWriter::~CsvWriter() { out_->flush(); }

void CsvWriter::row(const std::vector<std::string>& cells) {
  for (size_t i = 0; i < cells.size(); ++i) {
    if (i) *out_ << ',';
    *out_ << cells[i];
  }
  *out_ << '\n';
}

void CsvWriter::numeric_row(const std::vector<double>& cells) {
  std::vector<std::string> s;
  s.reserve(cells.size());
  for (double v : cells) s.push_back(fmt9(v));
  row(s);
}

void CsvWriter::blank_line() { *out_ << '\n'; }

}  // namespace spr
