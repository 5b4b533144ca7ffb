#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

namespace erdos::report {

enum class Format { table, csv, json };

using Cell = std::variant<std::string, std::int64_t, std::uint64_t, double, bool>;

/// Tabular output with a free-form metadata object and a verdict string.
struct Report {
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::string verdict;

  void add_row(std::vector<Cell> row);
};

/// Shortest decimal that round-trips, as nlohmann/json prints it.
std::string format_double(double x);
std::string to_text(const Cell& cell);

/// RFC 4180 field quoting: wrap in quotes if the field holds a comma,
/// quote, CR or LF, doubling any embedded quotes.
std::string csv_field(const std::string& field);

void write(const Report& rep, Format format, std::ostream& out);

}  // namespace erdos::report
