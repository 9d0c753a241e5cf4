#pragma once

#include <optional>
#include <string>
#include <vector>

namespace scanex {

/// How a numeric cell is written out.
enum class Notation {
  shortest,       ///< shortest decimal that round-trips
  fixed,          ///< printf %.{decimals}f
  scientific,     ///< printf %.{decimals}e
  integer,
  display_fixed,  ///< 6 significant digits, cut to `decimals`; "1." for 1
  display_auto,   ///< display_fixed at or above 1e-5, else one-digit scientific
};

struct Cell {
  std::optional<double> value;  ///< empty renders as a dash
  Notation notation = Notation::shortest;
  int decimals = 5;

  static Cell dash() { return Cell{}; }
};

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

/// Shortest round-trip decimal representation.
std::string format_shortest(double v);

/// Mimics a 6-significant-digit display whose leading `decimals` places were
/// kept: round to 6 significant digits, then truncate. Integral results print
/// as "1.".
std::string format_display_fixed(double v, int decimals);

/// Scientific form with one significant digit taken from the 6-digit
/// rounding, e.g. 3.97e-7 -> mantissa 3, exponent -7.
struct ScientificDigit {
  int mantissa = 0;
  int exponent = 0;
};
ScientificDigit display_scientific(double v);

/// Whether a display_auto cell is written in scientific form (magnitude below
/// 1e-5 after 6-digit rounding).
bool display_auto_is_scientific(double v);

/// plain: machine-readable text, dash as empty, scientific as "3e-7".
/// typeset: dash as U+2212, scientific as "3×10^-7".
enum class CellFlavor { plain, typeset };

std::string format_cell(const Cell& cell, CellFlavor flavor);

}  // namespace scanex
