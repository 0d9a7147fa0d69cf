#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace molbench::bench {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  int column(const std::string& name) const {
    for (size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return static_cast<int>(i);
    std::string avail;
    for (const auto& h : header) avail += (avail.empty() ? "" : ", ") + h;
    throw std::runtime_error("column '" + name + "' not found; available: " + avail);
  }
};

namespace detail {

// RFC-4180-ish: quoted fields may contain commas, doubled quotes, newlines.
inline std::vector<std::string> parse_csv_record(std::istream& is, bool& ok) {
  std::vector<std::string> fields;
  std::string field;
  bool in_quotes = false;
  bool any = false;
  int c;
  while ((c = is.get()) != EOF) {
    any = true;
    char ch = static_cast<char>(c);
    if (in_quotes) {
      if (ch == '"') {
        if (is.peek() == '"') {
          field.push_back('"');
          is.get();
        } else {
          in_quotes = false;
        }
      } else {
        field.push_back(ch);
      }
    } else if (ch == '"') {
      in_quotes = true;
    } else if (ch == ',') {
      fields.push_back(field);
      field.clear();
    } else if (ch == '\r') {
      if (is.peek() == '\n') is.get();
      fields.push_back(field);
      ok = true;
      return fields;
    } else if (ch == '\n') {
      fields.push_back(field);
      ok = true;
      return fields;
    } else {
      field.push_back(ch);
    }
  }
  if (any) {
    fields.push_back(field);
    ok = true;
  } else {
    ok = false;
  }
  return fields;
}

}  // namespace detail

inline CsvTable read_csv(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open: " + path);
  CsvTable t;
  bool ok = false;
  t.header = detail::parse_csv_record(is, ok);
  if (!ok) throw std::runtime_error("empty CSV file: " + path);
  while (true) {
    auto row = detail::parse_csv_record(is, ok);
    if (!ok) break;
    if (row.size() == 1 && row[0].empty()) continue;  // blank line
    t.rows.push_back(std::move(row));
  }
  return t;
}

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out += "\"";
  return out;
}

inline std::string csv_join(const std::vector<std::string>& fields) {
  std::string out;
  for (size_t i = 0; i < fields.size(); ++i) {
    if (i) out.push_back(',');
    out += csv_escape(fields[i]);
  }
  return out;
}

// Six significant digits, the float format for every emitted table.
inline std::string format_g6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

inline void write_lines(const std::string& path, const std::vector<std::string>& lines) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  for (const auto& l : lines) os << l << "\n";
}

}  // namespace molbench::bench
