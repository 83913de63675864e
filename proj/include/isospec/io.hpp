#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "isospec/verify.hpp"

namespace isospec {

enum class Format { Csv, Json };

/// Throws ParameterError for anything but "csv" / "json".
Format parse_format(std::string_view name);

/// Empty, real, integer or text.
using Cell = std::variant<std::monostate, double, std::int64_t, std::string>;

/// Column-named rows, written as CSV with a header or as a JSON array of
/// row objects. Empty cells become empty CSV fields / JSON null.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  std::size_t column(std::string_view name) const;  // throws ParameterError
  double number(std::size_t row, std::string_view name) const;
};

/// Shortest decimal that reads back to the same double; independent of the
/// C locale. Throws NonFiniteError for NaN and infinities.
std::string format_double(double v);
/// Parses the whole string or throws ParameterError.
double parse_double(std::string_view text);

void write_table(std::ostream& out, const Table& table, Format format);
/// Inverse of write_table. Numeric CSV fields come back as doubles (or
/// integers when written as integers); JSON keeps its own types.
Table read_table(std::string_view text, Format format);

std::string reports_to_json(std::span<const ResidualReport> reports);
std::vector<ResidualReport> reports_from_json(std::string_view text);
/// Flat table form of the reports for CSV output.
Table reports_table(std::span<const ResidualReport> reports);

}  // namespace isospec
