#pragma once

// Minimal CSV dialect: comma separated, '.' decimal point, numbers with 17
// significant digits, '#'-prefixed comment lines before the header.

#include <filesystem>
#include <string>
#include <vector>

namespace isingql::csv {

struct Table {
  std::vector<std::string> comments;  // without the leading "# "
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> row) { rows.push_back(std::move(row)); }
};

std::string num(double v);
std::string num(long long v);

std::string render(const Table& table);

// Writes to a temporary sibling file and renames it into place.
void write_atomic(const std::filesystem::path& path, const std::string& content);
void write_table(const std::filesystem::path& path, const Table& table);

Table read_table(const std::filesystem::path& path);
double parse_double(const std::string& cell, std::size_t line, std::size_t column);

}  // namespace isingql::csv
