#pragma once

#include "complex.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace branchcov::cli {

/// One report line. Reports are ordered lists of entries so that text and
/// CSV renderings are byte-stable.
struct Entry {
  std::string section;
  std::string key;
  std::optional<std::size_t> index;
  std::string value;
};

class Report {
public:
  void add(std::string section, std::string key, std::string value);
  void add(std::string section, std::string key, std::size_t index, std::string value);
  const std::vector<Entry> &entries() const { return entries_; }
  void append(const Report &other);

private:
  std::vector<Entry> entries_;
};

/// "[section]" headings followed by "key = value" or "key[i] = value" lines.
std::string render_text(const Report &report);
/// Long format with header "section,key,index,value"; index is empty when unset.
std::string csv_header();
std::string render_csv_rows(const Report &report);

/// Static picture of a branch configuration.
struct Sketch {
  std::string title;
  std::vector<Complex> points;
  std::vector<std::string> labels;
  /// Draw the points joined in list order (the loop order around infinity).
  bool show_order = true;
  /// Optional polyline, e.g. a lifted path or a monodromy loop.
  std::vector<Complex> path;
  std::vector<std::string> badges;
};

std::string render_svg(const Sketch &sketch);

struct Options {
  std::string command;
  std::vector<std::string> files;
  std::optional<std::string> csv_path;
  std::optional<std::string> svg_path;
  std::optional<double> tol;
  std::size_t trunc = 500;
  bool check_paper_claims = false;
  bool strict_pointwise = false;
  bool no_timing = false;
  bool emit_normalized = false;
  std::uint64_t seed = 1;
  std::size_t count = 200;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalidSpec = 1;
inline constexpr int kExitNumerical = 2;
inline constexpr int kExitCounterexample = 3;

inline constexpr double kDefaultTolerance = 1e-10;

/// Runs one command over the options' spec files (or the randomized sweep for
/// `check-claims` without files). Reports go to `out`, diagnostics to `err`.
int run(const Options &opts, std::ostream &out, std::ostream &err);

/// Parses argv and runs; usage errors exit with 1.
int main(int argc, char **argv);

} // namespace branchcov::cli
