#include "nervecover/csv.hpp"

#include <cmath>
#include <cstdio>

#include "nervecover/version.hpp"

namespace nervecover {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buffer[40];
  for (int precision = 1; precision <= 17; ++precision) {
    std::snprintf(buffer, sizeof(buffer), "%.*g", precision, x);
    double back = 0.0;
    std::sscanf(buffer, "%lf", &back);
    if (back == x) break;
  }
  return buffer;
}

csv_writer::csv_writer(std::ostream& out, const std::string& config_echo)
    : out_(out) {
  out_ << "# nervecover " << version_string << "\n";
  out_ << "# " << config_echo << "\n";
}

void csv_writer::comment(const std::string& line) {
  out_ << "# " << line << "\n";
}

void csv_writer::header(const std::vector<std::string>& columns) {
  row(columns);
}

void csv_writer::row(const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out_ << ',';
    out_ << cells[i];
  }
  out_ << '\n';
}

}  // namespace nervecover
