#include "erdos/report.hpp"

#include <algorithm>
#include <stdexcept>

namespace erdos::report {

void Report::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) throw std::logic_error("row width does not match columns");
  rows.push_back(std::move(row));
}

std::string format_double(double x) { return nlohmann::json(x).dump(); }

std::string to_text(const Cell& cell) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::string>) return v;
        else if constexpr (std::is_same_v<T, bool>) return v ? "true" : "false";
        else if constexpr (std::is_same_v<T, double>) return format_double(v);
        else return std::to_string(v);
      },
      cell);
}

std::string csv_field(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

namespace {

nlohmann::ordered_json cell_json(const Cell& cell) {
  return std::visit([](const auto& v) { return nlohmann::ordered_json(v); }, cell);
}

void write_table(const Report& rep, std::ostream& out) {
  for (const auto& [key, value] : rep.meta.items())
    out << "# " << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
  std::vector<std::size_t> width(rep.columns.size());
  for (std::size_t c = 0; c < rep.columns.size(); ++c) width[c] = rep.columns[c].size();
  std::vector<std::vector<std::string>> text;
  for (const auto& row : rep.rows) {
    auto& line = text.emplace_back();
    for (std::size_t c = 0; c < row.size(); ++c) {
      line.push_back(to_text(row[c]));
      width[c] = std::max(width[c], line.back().size());
    }
  }
  auto emit = [&](const std::vector<std::string>& cells) {
    for (std::size_t c = 0; c < cells.size(); ++c) {
      out << cells[c];
      if (c + 1 < cells.size()) out << std::string(width[c] - cells[c].size() + 2, ' ');
    }
    out << '\n';
  };
  emit(rep.columns);
  for (const auto& line : text) emit(line);
  out << "verdict: " << rep.verdict << '\n';
}

void write_csv(const Report& rep, std::ostream& out) {
  auto emit = [&](const std::vector<std::string>& cells) {
    for (std::size_t c = 0; c < cells.size(); ++c) out << (c ? "," : "") << csv_field(cells[c]);
    out << "\r\n";
  };
  emit(rep.columns);
  for (const auto& row : rep.rows) {
    std::vector<std::string> cells;
    for (const auto& cell : row) cells.push_back(to_text(cell));
    emit(cells);
  }
}

void write_json(const Report& rep, std::ostream& out) {
  nlohmann::ordered_json doc;
  doc["meta"] = rep.meta;
  doc["meta"]["columns"] = rep.columns;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : rep.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t c = 0; c < row.size(); ++c) obj[rep.columns[c]] = cell_json(row[c]);
    rows.push_back(std::move(obj));
  }
  doc["rows"] = std::move(rows);
  doc["verdict"] = rep.verdict;
  out << doc.dump(2) << '\n';
}

}  // namespace

void write(const Report& rep, Format format, std::ostream& out) {
  switch (format) {
    case Format::table: write_table(rep, out); break;
    case Format::csv: write_csv(rep, out); break;
    case Format::json: write_json(rep, out); break;
  }
}

}  // namespace erdos::report
