#include "scanex/table.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "scanex/errors.hpp"

namespace scanex {
namespace {

// Decimal digits and exponent of v rounded to 6 significant digits:
// v ~ d0.d1d2d3d4d5 x 10^exp.
struct SixDigits {
  std::array<int, 6> digits{};
  int exponent = 0;
  bool negative = false;
};

SixDigits six_digits(double v) {
  SixDigits out;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.5e", v);
  const char* c = buf;
  if (*c == '-') {
    out.negative = true;
    ++c;
  }
  int i = 0;
  for (; *c != 'e' && *c != '\0'; ++c) {
    if (*c >= '0' && *c <= '9') out.digits[static_cast<std::size_t>(i++)] = *c - '0';
  }
  if (*c == 'e') out.exponent = std::atoi(c + 1);
  return out;
}

}  // namespace

std::string format_shortest(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string format_display_fixed(double v, int decimals) {
  if (!std::isfinite(v)) throw DomainError("cannot format a non-finite value");
  if (v == 0.0) return "0.";
  const auto sd = six_digits(v);
  // Integer part and fractional digits of the rounded value.
  std::string int_part;
  std::string frac;
  for (int pos = std::max(sd.exponent, 0); pos >= 0; --pos) {
    const int idx = sd.exponent - pos;
    int_part.push_back(static_cast<char>('0' + ((idx >= 0 && idx < 6) ? sd.digits[static_cast<std::size_t>(idx)] : 0)));
  }
  for (int k = 1; k <= decimals; ++k) {
    const int idx = sd.exponent + k;
    frac.push_back(static_cast<char>('0' + ((idx >= 0 && idx < 6) ? sd.digits[static_cast<std::size_t>(idx)] : 0)));
  }
  // Strip leading zeros of the integer part (keep one).
  const auto nz = int_part.find_first_not_of('0');
  int_part = (nz == std::string::npos) ? "0" : int_part.substr(nz);

  bool integral = true;
  for (int idx = std::max(sd.exponent + 1, 0); idx < 6; ++idx) {
    if (sd.digits[static_cast<std::size_t>(idx)] != 0) integral = false;
  }
  std::string out = sd.negative ? "-" : "";
  if (integral && sd.exponent >= 0) return out + int_part + ".";
  out += int_part;
  if (decimals > 0) out += "." + frac;
  return out;
}

ScientificDigit display_scientific(double v) {
  if (!(v > 0.0) || !std::isfinite(v)) throw DomainError("scientific cells must be positive");
  const auto sd = six_digits(v);
  return {sd.digits[0], sd.exponent};
}

bool display_auto_is_scientific(double v) {
  if (v == 0.0) return false;
  // Decided on the 6-digit rounding, whose leading digit is nonzero.
  return six_digits(std::abs(v)).exponent < -5;
}

std::string format_cell(const Cell& cell, CellFlavor flavor) {
  if (!cell.value) return flavor == CellFlavor::typeset ? "\u2212" : "";
  const double v = *cell.value;
  char buf[64];
  switch (cell.notation) {
    case Notation::shortest:
      return format_shortest(v);
    case Notation::fixed:
      std::snprintf(buf, sizeof buf, "%.*f", cell.decimals, v);
      return buf;
    case Notation::scientific:
      std::snprintf(buf, sizeof buf, "%.*e", cell.decimals, v);
      return buf;
    case Notation::integer:
      std::snprintf(buf, sizeof buf, "%.0f", v);
      return buf;
    case Notation::display_fixed:
      return format_display_fixed(v, cell.decimals);
    case Notation::display_auto:
      if (display_auto_is_scientific(v)) {
        const auto sci = display_scientific(v);
        const char* sep = flavor == CellFlavor::typeset ? "\u00d710^" : "e";
        return std::to_string(sci.mantissa) + sep + std::to_string(sci.exponent);
      }
      return format_display_fixed(v, cell.decimals);
  }
  return {};
}

}  // namespace scanex
