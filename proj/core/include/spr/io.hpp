#ifndef SPR_IO_HPP
#define SPR_IO_HPP

#include <fstream>
#include <string>
#include <vector>

namespace spr {

// All numeric output goes through here: 9 significant digits, '%g' style,
// '.' decimal separator regardless of environment. Reruns must produce
// byte-identical files.
std::string fmt9(double v);

class CsvWriter {
 public:
  // Writes to the named file, or to stdout when path is "-".
  explicit CsvWriter(const std::string& path);
  ~CsvWriter();

  void row(const std::vector<std::string>& cells);
  void numeric_row(const std::vector<double>& cells);
  void blank_line();  // gnuplot block separator

 private:
  std::ofstream file_;
  std::ostream* out_;
};

}  // namespace spr

#endif
