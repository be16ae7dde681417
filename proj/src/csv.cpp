#include "cascade/csv.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include "cascade/common.hpp"

namespace cascade {

std::string csv_escape(std::string_view field) {
  const bool needs_quote =
      field.find_first_of(",\"\n\r") != std::string_view::npos;
  if (!needs_quote) return std::string(field);
  std::string out;
  out.reserve(field.size() + 2);
  out.push_back('"');
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

void write_csv_row(std::ostream& out, const std::vector<std::string>& fields) {
  for (size_t i = 0; i < fields.size(); ++i) {
    if (i) out.put(',');
    out << csv_escape(fields[i]);
  }
  out.put('\n');
}

void write_csv_row(std::string& out, const std::vector<std::string>& fields) {
  for (size_t i = 0; i < fields.size(); ++i) {
    if (i) out.push_back(',');
    out += csv_escape(fields[i]);
  }
  out.push_back('\n');
}

std::vector<std::string> parse_csv_line(std::string_view line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  fields.push_back(std::move(cur));
  return fields;
}

CsvTable CsvTable::read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open " + path);
  return read_stream(in, path);
}

CsvTable CsvTable::read_stream(std::istream& in, const std::string& name) {
  CsvTable t;
  t.name_ = name;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (first) {
      t.header_ = parse_csv_line(line);
      first = false;
      continue;
    }
    if (line.empty()) continue;
    auto fields = parse_csv_line(line);
    fields.resize(t.header_.size());
    t.rows_.push_back(std::move(fields));
  }
  if (first) throw io_error(name + ": empty CSV (no header)");
  return t;
}

size_t CsvTable::column(std::string_view name) const {
  for (size_t i = 0; i < header_.size(); ++i) {
    if (header_[i] == name) return i;
  }
  throw io_error(name_ + ": no column named '" + std::string(name) + "'");
}

bool CsvTable::has_column(std::string_view name) const {
  for (const auto& h : header_) {
    if (h == name) return true;
  }
  return false;
}

std::vector<double> CsvTable::numeric_column(std::string_view name) const {
  const size_t col = column(name);
  std::vector<double> out;
  out.reserve(rows_.size());
  for (size_t r = 0; r < rows_.size(); ++r) {
    const std::string& cell = rows_[r][col];
    if (cell.empty()) continue;
    const auto v = parse_double(cell);
    if (!v) {
      throw io_error(name_ + ": non-numeric value '" + cell + "' in column '" +
                     std::string(name) + "' row " + std::to_string(r + 2));
    }
    out.push_back(*v);
  }
  return out;
}

}  // namespace cascade
