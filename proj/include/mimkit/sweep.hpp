#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace mimkit {

// Empty cells are written as an empty CSV field or JSON null.
using Cell = std::variant<std::monostate, double, std::string>;

// One record per row; every row has one cell per column.
struct SweepTable {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);
  friend bool operator==(const SweepTable&, const SweepTable&) = default;
};

inline constexpr int kDefaultPrecision = 6;

// "a:b:s" (inclusive, last point snapped to b), "x,y,z", or a single value.
std::vector<double> parse_grid(std::string_view spec);

// %.<precision>g; non-finite values have no textual form and yield "".
std::string format_number(double v, int precision);

// Numbers replaced by their value after formatting; non-finite become empty.
SweepTable rounded(const SweepTable& t, int precision);

void write_csv(std::ostream& os, const SweepTable& t, int precision = kDefaultPrecision);
SweepTable read_csv(std::istream& is);

void write_json(std::ostream& os, const SweepTable& t, int precision = kDefaultPrecision);
SweepTable read_json(std::istream& is);

}  // namespace mimkit
