#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace ampo::cli {

enum class OutputFormat { Json, Csv, Table };

OutputFormat parse_output_format(const std::string& text);
std::string to_string(OutputFormat format);

using Cell = std::variant<double, std::int64_t, bool, std::string>;

/// Ordered key/value pairs; order is part of the output schema.
using Record = std::vector<std::pair<std::string, Cell>>;

/// One command result: the inputs that produced it plus a fixed-column table.
struct Document {
  std::string command;
  Record inputs;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;  // each row has columns.size() cells
};

/// Shortest text that reads back to the same double (CSV uses %.17g).
std::string format_csv(const Cell& cell);
std::string format_table(const Cell& cell);

void write_json(std::ostream& out, const Document& doc);
void write_csv(std::ostream& out, const Document& doc);
void write_table(std::ostream& out, const Document& doc);
void write_document(std::ostream& out, const Document& doc, OutputFormat format);

}  // namespace ampo::cli
