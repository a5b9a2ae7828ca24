#pragma once

// Flat `key = value` files with `[section]` headers and '#' comments.

#include <string>
#include <string_view>
#include <vector>

namespace isingql::config {

struct Entry {
  std::string section;
  std::string key;
  std::string value;
  int line = 0;
};

struct File {
  std::string source;
  std::vector<Entry> entries;

  // "source:line: message"
  std::string where(const Entry& e) const;
};

File parse(std::string_view text, std::string source);
File load(const std::string& path);

double to_double(const File& f, const Entry& e);
long long to_int(const File& f, const Entry& e);
bool to_bool(const File& f, const Entry& e);
std::vector<double> to_double_list(const File& f, const Entry& e);

}  // namespace isingql::config
