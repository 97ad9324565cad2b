#include "mimkit/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>

#include "json.hpp"

#include "mimkit/common.hpp"

namespace mimkit {

namespace {

constexpr double kSnap = 1e-9;

double parse_double(std::string_view s) {
  const std::string text(s);
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size() || !std::isfinite(v)) {
    throw DomainError("not a finite number: '" + text + "'");
  }
  return v;
}

// Drops the accumulated rounding of start + k * step (0.30000000000000004 -> 0.3).
double snap_decimal(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return std::strtod(buf, nullptr);
}

bool try_parse_double(const std::string& s, double& out) {
  if (s.empty()) return false;
  char* end = nullptr;
  out = std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size() && std::isfinite(out);
}

Cell round_cell(const Cell& c, int precision) {
  if (const double* d = std::get_if<double>(&c)) {
    if (!std::isfinite(*d)) return std::monostate{};
    return std::strtod(format_number(*d, precision).c_str(), nullptr);
  }
  return c;
}

std::string csv_field(const Cell& c, int precision) {
  if (const double* d = std::get_if<double>(&c)) return format_number(*d, precision);
  if (const std::string* s = std::get_if<std::string>(&c)) {
    if (s->find_first_of(",\"\n\r") == std::string::npos) return *s;
    std::string q = "\"";
    for (char ch : *s) {
      if (ch == '"') q += '"';
      q += ch;
    }
    return q + "\"";
  }
  return "";
}

struct Field {
  std::string text;
  bool quoted = false;
};

// Splits one CSV record; quoted fields may contain separators.
std::vector<Field> split_record(const std::string& line) {
  std::vector<Field> out(1);
  bool in_quotes = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (in_quotes) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        out.back().text += '"';
        ++i;
      } else if (ch == '"') {
        in_quotes = false;
      } else {
        out.back().text += ch;
      }
    } else if (ch == '"') {
      in_quotes = true;
      out.back().quoted = true;
    } else if (ch == ',') {
      out.emplace_back();
    } else {
      out.back().text += ch;
    }
  }
  return out;
}

Cell cell_from_text(const std::string& s, bool was_quoted) {
  if (s.empty() && !was_quoted) return std::monostate{};
  double v = 0.0;
  if (!was_quoted && try_parse_double(s, v)) return v;
  return s;
}

}  // namespace

void SweepTable::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) {
    throw ShapeError("row has " + std::to_string(row.size()) + " cells for " +
                     std::to_string(columns.size()) + " columns");
  }
  rows.push_back(std::move(row));
}

std::vector<double> parse_grid(std::string_view spec) {
  if (spec.find(':') != std::string_view::npos) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
      const std::size_t at = spec.find(':', start);
      parts.push_back(spec.substr(start, at - start));
      if (at == std::string_view::npos) break;
      start = at + 1;
    }
    if (parts.size() != 3) throw DomainError("grid must look like start:stop:step");
    const double a = parse_double(parts[0]);
    const double b = parse_double(parts[1]);
    const double s = parse_double(parts[2]);
    if (!(s > 0.0)) throw DomainError("grid step must be positive");
    if (b < a) throw DomainError("grid stop must not precede start");
    std::vector<double> out;
    for (std::size_t k = 0;; ++k) {
      double x = snap_decimal(a + static_cast<double>(k) * s);
      if (x > b + kSnap * s) break;
      if (std::abs(x - b) <= kSnap * s) x = b;
      out.push_back(x);
      if (x == b) break;
    }
    return out;
  }
  std::vector<double> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t at = spec.find(',', start);
    out.push_back(parse_double(spec.substr(start, at - start)));
    if (at == std::string_view::npos) break;
    start = at + 1;
  }
  return out;
}

std::string format_number(double v, int precision) {
  if (!std::isfinite(v)) return "";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, v);
  return buf;
}

SweepTable rounded(const SweepTable& t, int precision) {
  SweepTable out;
  out.columns = t.columns;
  for (const auto& row : t.rows) {
    std::vector<Cell> r;
    r.reserve(row.size());
    for (const Cell& c : row) r.push_back(round_cell(c, precision));
    out.rows.push_back(std::move(r));
  }
  return out;
}

void write_csv(std::ostream& os, const SweepTable& t, int precision) {
  for (std::size_t j = 0; j < t.columns.size(); ++j) {
    os << (j ? "," : "") << csv_field(Cell{t.columns[j]}, precision);
  }
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      os << (j ? "," : "") << csv_field(row[j], precision);
    }
    os << '\n';
  }
}

SweepTable read_csv(std::istream& is) {
  SweepTable t;
  std::string line;
  if (!std::getline(is, line)) return t;
  for (Field& f : split_record(line)) t.columns.push_back(std::move(f.text));
  while (std::getline(is, line)) {
    if (line.empty() && t.columns.size() != 1) continue;
    std::vector<Cell> row;
    for (const Field& f : split_record(line)) row.push_back(cell_from_text(f.text, f.quoted));
    t.add_row(std::move(row));
  }
  return t;
}

void write_json(std::ostream& os, const SweepTable& t, int precision) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  const SweepTable r = rounded(t, precision);
  for (const auto& row : r.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t j = 0; j < row.size(); ++j) {
      const Cell& c = row[j];
      if (const double* d = std::get_if<double>(&c)) {
        obj[t.columns[j]] = *d;
      } else if (const std::string* s = std::get_if<std::string>(&c)) {
        obj[t.columns[j]] = *s;
      } else {
        obj[t.columns[j]] = nullptr;
      }
    }
    arr.push_back(std::move(obj));
  }
  os << arr.dump(2) << '\n';
}

SweepTable read_json(std::istream& is) {
  const nlohmann::ordered_json arr = nlohmann::ordered_json::parse(is);
  if (!arr.is_array()) throw DomainError("sweep JSON must be an array of records");
  SweepTable t;
  for (const auto& obj : arr) {
    if (!obj.is_object()) throw DomainError("sweep JSON records must be objects");
    if (t.columns.empty() && t.rows.empty()) {
      for (const auto& [key, _] : obj.items()) t.columns.push_back(key);
    }
    std::vector<Cell> row;
    for (const auto& col : t.columns) {
      if (!obj.contains(col)) throw ShapeError("record is missing column '" + col + "'");
      const auto& v = obj.at(col);
      if (v.is_null()) {
        row.emplace_back(std::monostate{});
      } else if (v.is_number()) {
        row.emplace_back(v.get<double>());
      } else if (v.is_string()) {
        row.emplace_back(v.get<std::string>());
      } else {
        throw DomainError("unsupported JSON value in column '" + col + "'");
      }
    }
    t.add_row(std::move(row));
  }
  return t;
}

}  // namespace mimkit
