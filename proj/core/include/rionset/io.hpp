#pragma once

#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace rionset {

// %.17g: round-trips every double.
std::string format_double(double x);

// Minimal CSV emitter: a fixed header and rows of numbers or strings.
class CsvWriter {
 public:
  CsvWriter(std::ostream& out, std::initializer_list<std::string_view> header);

  CsvWriter& cell(double x);
  CsvWriter& cell(long long x);
  CsvWriter& cell(unsigned long long x);
  CsvWriter& cell(std::size_t x) { return cell(static_cast<unsigned long long>(x)); }
  CsvWriter& cell(std::string_view text);
  void end_row();

 private:
  void separate();

  std::ostream& out_;
  std::size_t columns_;
  std::size_t filled_ = 0;
};

// Grid spec: "lo:hi:n" (n evenly spaced points, endpoints included) or a
// comma-separated list. Throws std::invalid_argument on malformed input.
std::vector<double> parse_grid(std::string_view spec);

// Inverse of parse_grid for an explicit list (comma separated, %.17g).
std::string format_grid(const std::vector<double>& values);

}  // namespace rionset
