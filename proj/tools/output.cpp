#include "output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <json.hpp>
#include <stdexcept>

#include "ampo/types.hpp"

namespace ampo::cli {

namespace {

std::string printf_double(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

nlohmann::json to_json(const Cell& cell) {
  return std::visit(
      [](const auto& v) -> nlohmann::json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>) {
          if (!std::isfinite(v)) return nullptr;
        }
        return v;
      },
      cell);
}

}  // namespace

OutputFormat parse_output_format(const std::string& text) {
  if (text == "json") return OutputFormat::Json;
  if (text == "csv") return OutputFormat::Csv;
  if (text == "table") return OutputFormat::Table;
  throw ParameterError("output must be one of json, csv, table (got '" + text + "')");
}

std::string to_string(OutputFormat format) {
  switch (format) {
    case OutputFormat::Json: return "json";
    case OutputFormat::Csv: return "csv";
    case OutputFormat::Table: return "table";
  }
  return "json";
}

std::string format_csv(const Cell& cell) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>) {
          return printf_double("%.17g", v);
        } else if constexpr (std::is_same_v<T, bool>) {
          return v ? "true" : "false";
        } else if constexpr (std::is_same_v<T, std::int64_t>) {
          return std::to_string(v);
        } else {
          return v;
        }
      },
      cell);
}

std::string format_table(const Cell& cell) {
  if (const double* d = std::get_if<double>(&cell)) return printf_double("%.6g", *d);
  return format_csv(cell);
}

void write_json(std::ostream& out, const Document& doc) {
  // nlohmann::ordered_json keeps schema order; doubles dump in shortest
  // round-trip form, so re-reading reproduces every bit.
  nlohmann::ordered_json j;
  j["command"] = doc.command;
  nlohmann::ordered_json inputs = nlohmann::ordered_json::object();
  for (const auto& [k, v] : doc.inputs) inputs[k] = to_json(v);
  j["inputs"] = inputs;
  j["columns"] = doc.columns;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : doc.rows) {
    nlohmann::ordered_json r = nlohmann::ordered_json::object();
    for (size_t i = 0; i < doc.columns.size(); ++i) r[doc.columns[i]] = to_json(row.at(i));
    rows.push_back(r);
  }
  j["rows"] = rows;
  out << j.dump(2) << '\n';
}

void write_csv(std::ostream& out, const Document& doc) {
  for (size_t i = 0; i < doc.columns.size(); ++i) out << (i ? "," : "") << doc.columns[i];
  out << '\n';
  for (const auto& row : doc.rows) {
    for (size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_csv(row[i]);
    out << '\n';
  }
}

void write_table(std::ostream& out, const Document& doc) {
  std::vector<size_t> width(doc.columns.size());
  std::vector<std::vector<std::string>> text;
  for (size_t i = 0; i < doc.columns.size(); ++i) width[i] = doc.columns[i].size();
  for (const auto& row : doc.rows) {
    std::vector<std::string> line;
    for (size_t i = 0; i < row.size(); ++i) {
      line.push_back(format_table(row[i]));
      width[i] = std::max(width[i], line.back().size());
    }
    text.push_back(std::move(line));
  }
  auto emit = [&](const std::vector<std::string>& cells) {
    for (size_t i = 0; i < cells.size(); ++i) {
      if (i) out << "  ";
      out << cells[i];
      if (i + 1 < cells.size()) out << std::string(width[i] - cells[i].size(), ' ');
    }
    out << '\n';
  };
  emit(doc.columns);
  for (const auto& line : text) emit(line);
}

void write_document(std::ostream& out, const Document& doc, OutputFormat format) {
  switch (format) {
    case OutputFormat::Json: write_json(out, doc); break;
    case OutputFormat::Csv: write_csv(out, doc); break;
    case OutputFormat::Table: write_table(out, doc); break;
  }
}

}  // namespace ampo::cli
