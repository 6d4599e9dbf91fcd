#include "rionset/io.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace rionset {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

CsvWriter::CsvWriter(std::ostream& out,
                     std::initializer_list<std::string_view> header)
    : out_(out), columns_(header.size()) {
  bool first = true;
  for (auto name : header) {
    if (!first) out_ << ',';
    out_ << name;
    first = false;
  }
  out_ << '\n';
}

void CsvWriter::separate() {
  if (filled_ == columns_) throw std::logic_error("CSV row has too many cells");
  if (filled_ > 0) out_ << ',';
  ++filled_;
}

CsvWriter& CsvWriter::cell(double x) {
  separate();
  out_ << format_double(x);
  return *this;
}

CsvWriter& CsvWriter::cell(long long x) {
  separate();
  out_ << x;
  return *this;
}

CsvWriter& CsvWriter::cell(unsigned long long x) {
  separate();
  out_ << x;
  return *this;
}

CsvWriter& CsvWriter::cell(std::string_view text) {
  separate();
  out_ << text;
  return *this;
}

void CsvWriter::end_row() {
  if (filled_ != columns_) throw std::logic_error("CSV row is incomplete");
  out_ << '\n';
  filled_ = 0;
}

namespace {

double parse_number(std::string_view text) {
  std::string s(text);
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(s, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("not a number: '" + s + "'");
  }
  while (used < s.size() && (s[used] == ' ' || s[used] == '\t')) ++used;
  if (used != s.size() || !std::isfinite(value)) {
    throw std::invalid_argument("not a finite number: '" + s + "'");
  }
  return value;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

std::vector<double> parse_grid(std::string_view spec) {
  spec = trim(spec);
  if (spec.empty()) throw std::invalid_argument("empty grid");
  std::vector<double> out;
  if (spec.find(':') != std::string_view::npos) {
    const auto c1 = spec.find(':');
    const auto c2 = spec.find(':', c1 + 1);
    if (c2 == std::string_view::npos || spec.find(':', c2 + 1) != std::string_view::npos) {
      throw std::invalid_argument("range grid must be lo:hi:n");
    }
    const double lo = parse_number(trim(spec.substr(0, c1)));
    const double hi = parse_number(trim(spec.substr(c1 + 1, c2 - c1 - 1)));
    const double count = parse_number(trim(spec.substr(c2 + 1)));
    if (count < 1 || count != std::floor(count)) {
      throw std::invalid_argument("grid point count must be a positive integer");
    }
    const auto n = static_cast<std::size_t>(count);
    if (n == 1) return {lo};
    for (std::size_t i = 0; i < n; ++i) {
      out.push_back(i + 1 == n ? hi
                               : lo + (hi - lo) * static_cast<double>(i) /
                                          static_cast<double>(n - 1));
    }
    return out;
  }
  std::size_t start = 0;
  while (start <= spec.size()) {
    const auto comma = spec.find(',', start);
    const auto piece = trim(spec.substr(
        start, comma == std::string_view::npos ? std::string_view::npos
                                               : comma - start));
    out.push_back(parse_number(piece));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string format_grid(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += format_double(values[i]);
  }
  return out;
}

}  // namespace rionset
