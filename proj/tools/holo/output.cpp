#include "output.hpp"

#include <cstdio>

#include "holo/errors.hpp"

namespace holo::cli {

Format parse_format(const std::string& s) {
  if (s == "text") return Format::text;
  if (s == "json") return Format::json;
  if (s == "csv") return Format::csv;
  raise(ErrorKind::invalid_argument, "unknown output format \"" + s + "\" (json, csv or text)");
}

nlohmann::ordered_json matrix_json(const CMat2& m) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (int i = 0; i < 2; ++i) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (int j = 0; j < 2; ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(row);
  }
  return rows;
}

std::vector<std::string> matrix_csv(const CMat2& m) {
  std::vector<std::string> out;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      out.push_back(num(m(i, j).real()));
      out.push_back(num(m(i, j).imag()));
    }
  }
  return out;
}

std::string matrix_text(const CMat2& m, const std::string& indent) {
  std::string out;
  char cell[64];
  for (int i = 0; i < 2; ++i) {
    out += indent + "[";
    for (int j = 0; j < 2; ++j) {
      std::snprintf(cell, sizeof cell, " %+.10f%+.10fi", m(i, j).real(), m(i, j).imag());
      out += cell;
    }
    out += " ]\n";
  }
  return out;
}

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string csv_line(const std::vector<std::string>& cells) {
  std::string out;
  for (std::size_t k = 0; k < cells.size(); ++k) {
    if (k) out += ",";
    out += cells[k];
  }
  return out + "\n";
}

}  // namespace holo::cli
