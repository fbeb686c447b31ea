#include "cli/csv.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <string_view>

#include "mixem/error.hpp"

namespace mixem::cli {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

bool skip_line(std::string_view line) {
  line = trim(line);
  return line.empty() || line.front() == '#';
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    fields.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

[[noreturn]] void fail(std::size_t line, const std::string& message) {
  throw InputError("line " + std::to_string(line) + ": " + message);
}

double parse_finite(std::string_view field, std::size_t line) {
  double x = 0.0;
  const auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), x);
  if (field.empty() || ec != std::errc() || end != field.data() + field.size() ||
      !std::isfinite(x)) {
    fail(line, "expected a finite number, got '" + std::string(field) + "'");
  }
  return x;
}

}  // namespace

CensoredSample read_censored_csv(std::istream& in) {
  std::string text;
  std::size_t line = 0;
  bool header = false;
  std::vector<Observation> observations;
  while (std::getline(in, text)) {
    ++line;
    if (skip_line(text)) continue;
    const auto fields = split(text);
    if (!header) {
      if (fields.size() != 2 || fields[0] != "left" || fields[1] != "right") {
        fail(line, "expected header 'left,right'");
      }
      header = true;
      continue;
    }
    if (fields.size() != 2) fail(line, "expected 2 fields, got " + std::to_string(fields.size()));
    const double left = parse_finite(fields[0], line);
    Observation o;
    if (fields[1] == "inf") {
      o = Observation::right_censored(left);
    } else {
      o = Observation::interval(left, parse_finite(fields[1], line));
    }
    if (left < 0.0) fail(line, "left endpoint is negative");
    if (o.right && *o.right < left) fail(line, "right endpoint is below left endpoint");
    if (o.is_exact() && left == 0.0) {
      fail(line, "exact observation at 0 covers no grid time");
    }
    observations.push_back(o);
  }
  if (!header) throw InputError("censored CSV is empty (expected header 'left,right')");
  if (observations.empty()) throw InputError("censored CSV has no observations");
  return CensoredSample(std::move(observations));
}

std::vector<std::vector<double>> read_dense_csv(std::istream& in) {
  std::string text;
  std::size_t line = 0;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, text)) {
    ++line;
    if (skip_line(text)) continue;
    std::vector<double> row;
    bool positive = false;
    for (std::string_view field : split(text)) {
      const double x = parse_finite(field, line);
      if (x < 0.0) fail(line, "negative density " + std::string(field));
      positive = positive || x > 0.0;
      row.push_back(x);
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      fail(line, "expected " + std::to_string(rows.front().size()) + " fields, got " +
                     std::to_string(row.size()));
    }
    if (!positive) fail(line, "row has no positive density");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw InputError("density CSV has no rows");
  return rows;
}

std::vector<double> read_values(std::istream& in) {
  std::string text;
  std::size_t line = 0;
  std::vector<double> values;
  while (std::getline(in, text)) {
    ++line;
    if (skip_line(text)) continue;
    values.push_back(parse_finite(split(text).front(), line));
  }
  if (values.empty()) throw InputError("data file has no values");
  return values;
}

std::string format_number(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buffer[32];
  const auto [end, ec] = std::to_chars(buffer, buffer + sizeof buffer, x);
  return std::string(buffer, end);
}

}  // namespace mixem::cli
