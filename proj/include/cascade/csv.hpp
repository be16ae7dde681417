#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace cascade {

// Minimal RFC-4180-ish CSV: fields quoted only when they contain a comma,
// quote, or newline.
std::string csv_escape(std::string_view field);
void write_csv_row(std::ostream& out, const std::vector<std::string>& fields);
void write_csv_row(std::string& out, const std::vector<std::string>& fields);
std::vector<std::string> parse_csv_line(std::string_view line);

// Fully loaded table with a header row; column access by name.
class CsvTable {
 public:
  static CsvTable read_file(const std::string& path);
  static CsvTable read_stream(std::istream& in, const std::string& name);

  const std::vector<std::string>& header() const { return header_; }
  size_t rows() const { return rows_.size(); }
  // Throws io_error when the column is missing.
  size_t column(std::string_view name) const;
  bool has_column(std::string_view name) const;
  const std::string& cell(size_t row, size_t col) const {
    return rows_[row][col];
  }
  const std::vector<std::string>& row(size_t i) const { return rows_[i]; }

  // Numeric column; empty cells are skipped.
  std::vector<double> numeric_column(std::string_view name) const;

 private:
  std::string name_;
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace cascade
