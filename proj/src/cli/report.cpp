#include "branchcov/cli.hpp"

#include <sstream>

namespace branchcov::cli {

void Report::add(std::string section, std::string key, std::string value) {
  entries_.push_back({std::move(section), std::move(key), std::nullopt, std::move(value)});
}

void Report::add(std::string section, std::string key, std::size_t index, std::string value) {
  entries_.push_back({std::move(section), std::move(key), index, std::move(value)});
}

void Report::append(const Report &other) {
  entries_.insert(entries_.end(), other.entries_.begin(), other.entries_.end());
}

std::string render_text(const Report &report) {
  std::ostringstream out;
  const std::string *section = nullptr;
  for (const Entry &e : report.entries()) {
    if (!section || *section != e.section) {
      if (section)
        out << '\n';
      out << '[' << e.section << "]\n";
      section = &e.section;
    }
    out << e.key;
    if (e.index)
      out << '[' << *e.index << ']';
    out << " = " << e.value << '\n';
  }
  return out.str();
}

namespace {

std::string csv_field(const std::string &s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos)
    return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"')
      q += '"';
    q += c;
  }
  return q + '"';
}

} // namespace

std::string csv_header() { return "section,key,index,value\n"; }

std::string render_csv_rows(const Report &report) {
  std::ostringstream out;
  for (const Entry &e : report.entries()) {
    out << csv_field(e.section) << ',' << csv_field(e.key) << ',';
    if (e.index)
      out << *e.index;
    out << ',' << csv_field(e.value) << '\n';
  }
  return out.str();
}

} // namespace branchcov::cli
