#include "scanex_cli/report.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include "json.hpp"
#include "scanex/errors.hpp"

namespace scanex::cli {
namespace {

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n\r") == std::string::npos) return text;
  std::string quoted = "\"";
  for (char c : text) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

nlohmann::json json_value(const Cell& cell) {
  if (!cell.value) return nullptr;
  const std::string text = format_cell(cell, CellFlavor::plain);
  if (cell.notation == Notation::integer) return std::strtoll(text.c_str(), nullptr, 10);
  return std::strtod(text.c_str(), nullptr);
}

}  // namespace

Format parse_format(std::string_view name) {
  if (name == "csv") return Format::csv;
  if (name == "json") return Format::json;
  if (name == "md") return Format::md;
  throw DomainError("unknown format '" + std::string(name) + "' (expected csv, json or md)");
}

std::size_t display_width(std::string_view utf8) {
  return static_cast<std::size_t>(std::count_if(utf8.begin(), utf8.end(), [](char c) {
    return (static_cast<unsigned char>(c) & 0xC0u) != 0x80u;
  }));
}

std::string render_csv(const Report& report) {
  std::string out;
  const auto& cols = report.table.columns;
  for (std::size_t i = 0; i < cols.size(); ++i) {
    if (i) out += ',';
    out += csv_field(cols[i]);
  }
  out += '\n';
  for (const auto& row : report.table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += csv_field(format_cell(row[i], CellFlavor::plain));
    }
    out += '\n';
  }
  return out;
}

std::string render_json(const Report& report) {
  nlohmann::ordered_json doc;
  doc["command"] = report.command;
  doc["inputs"] = nlohmann::ordered_json::object();
  for (const auto& [key, cell] : report.inputs) doc["inputs"][key] = json_value(cell);
  doc["records"] = nlohmann::ordered_json::array();
  for (const auto& row : report.table.rows) {
    nlohmann::ordered_json record = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      record[report.table.columns[i]] = json_value(row[i]);
    }
    doc["records"].push_back(std::move(record));
  }
  return doc.dump(2) + "\n";
}

std::string render_md(const Report& report) {
  const auto& cols = report.table.columns;
  std::vector<std::vector<std::string>> text;
  std::vector<std::size_t> width(cols.size(), 3);
  for (std::size_t i = 0; i < cols.size(); ++i) {
    width[i] = std::max(width[i], display_width(cols[i]));
  }
  for (const auto& row : report.table.rows) {
    auto& line = text.emplace_back();
    for (std::size_t i = 0; i < row.size(); ++i) {
      line.push_back(format_cell(row[i], CellFlavor::typeset));
      width[i] = std::max(width[i], display_width(line.back()));
    }
  }

  const auto pad = [](const std::string& s, std::size_t w) {
    return std::string(w - display_width(s), ' ') + s;
  };
  std::string out = "|";
  for (std::size_t i = 0; i < cols.size(); ++i) out += " " + pad(cols[i], width[i]) + " |";
  out += "\n|";
  for (std::size_t i = 0; i < cols.size(); ++i) out += " " + std::string(width[i] - 1, '-') + ": |";
  out += '\n';
  for (const auto& line : text) {
    out += '|';
    for (std::size_t i = 0; i < line.size(); ++i) out += " " + pad(line[i], width[i]) + " |";
    out += '\n';
  }
  return out;
}

std::string render(const Report& report, Format format) {
  switch (format) {
    case Format::csv:
      return render_csv(report);
    case Format::json:
      return render_json(report);
    case Format::md:
      return render_md(report);
  }
  return {};
}

}  // namespace scanex::cli
