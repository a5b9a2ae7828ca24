#include "isingql/config.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "isingql/errors.hpp"

namespace isingql::config {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool valid_name(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-' && c != '.') return false;
  }
  return true;
}

Error bad_value(const File& f, const Entry& e, const char* expected) {
  return Error(ErrorKind::Parse, f.where(e) + ": " + e.key + " expects " + expected + ", found '" + e.value + "'");
}

}  // namespace

std::string File::where(const Entry& e) const { return source + ":" + std::to_string(e.line); }

File parse(std::string_view text, std::string source) {
  File f{std::move(source), {}};
  std::istringstream in{std::string(text)};
  std::string raw;
  std::string section;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string_view s = raw;
    if (const auto hash = s.find('#'); hash != std::string_view::npos) s = s.substr(0, hash);
    s = trim(s);
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') {
        throw Error(ErrorKind::Parse, f.source + ":" + std::to_string(line) + ": unterminated section header");
      }
      const auto name = trim(s.substr(1, s.size() - 2));
      if (!valid_name(name)) {
        throw Error(ErrorKind::Parse, f.source + ":" + std::to_string(line) + ": invalid section name");
      }
      section = std::string(name);
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorKind::Parse, f.source + ":" + std::to_string(line) + ": expected key = value");
    }
    const auto key = trim(s.substr(0, eq));
    if (!valid_name(key)) {
      throw Error(ErrorKind::Parse, f.source + ":" + std::to_string(line) + ": invalid key '" + std::string(key) + "'");
    }
    f.entries.push_back({section, std::string(key), std::string(trim(s.substr(eq + 1))), line});
  }
  return f;
}

File load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open config file '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return parse(os.str(), path);
}

double to_double(const File& f, const Entry& e) {
  double v = 0.0;
  const char* first = e.value.data();
  const char* last = first + e.value.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) throw bad_value(f, e, "a number");
  return v;
}

long long to_int(const File& f, const Entry& e) {
  long long v = 0;
  const char* first = e.value.data();
  const char* last = first + e.value.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) throw bad_value(f, e, "an integer");
  return v;
}

bool to_bool(const File& f, const Entry& e) {
  if (e.value == "true" || e.value == "1" || e.value == "yes") return true;
  if (e.value == "false" || e.value == "0" || e.value == "no") return false;
  throw bad_value(f, e, "true or false");
}

std::vector<double> to_double_list(const File& f, const Entry& e) {
  std::vector<double> out;
  std::istringstream is(e.value);
  std::string item;
  while (std::getline(is, item, ',')) {
    Entry one = e;
    one.value = std::string(trim(item));
    out.push_back(to_double(f, one));
  }
  if (out.empty()) throw bad_value(f, e, "a comma-separated list of numbers");
  return out;
}

}  // namespace isingql::config
