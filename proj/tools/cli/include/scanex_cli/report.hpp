#pragma once

// Command output: an echo of the inputs plus a table of records, serialized
// as CSV, JSON or an aligned markdown table.

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "scanex/table.hpp"

namespace scanex::cli {

enum class Format { csv, json, md };

/// Accepts "csv", "json" or "md"; throws DomainError otherwise.
Format parse_format(std::string_view name);

struct Report {
  std::string command;
  std::vector<std::pair<std::string, Cell>> inputs;
  Table table;
};

/// CSV: header row, comma separated, LF line ends, dashes as empty fields.
/// Inputs are not echoed; the header equals the JSON record keys.
std::string render_csv(const Report& report);

/// {"command": ..., "inputs": {...}, "records": [{column: value}, ...]}.
/// Numbers are parsed back from the same text the CSV rendering prints;
/// dashes become null.
std::string render_json(const Report& report);

/// Markdown table with columns padded to equal width in code points and
/// dashes shown as U+2212.
std::string render_md(const Report& report);

std::string render(const Report& report, Format format);

/// Number of Unicode code points in a UTF-8 string.
std::size_t display_width(std::string_view utf8);

}  // namespace scanex::cli
