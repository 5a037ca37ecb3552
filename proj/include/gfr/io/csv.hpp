#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "gfr/io/io_error.hpp"
#include "gfr/types.hpp"

namespace gfr::io {

/// Two-column (t, value) series. The sample rate comes from the first time step.
struct TimeSeries {
  std::vector<double> t;
  std::vector<double> values;
  double sample_rate = 1.0;
};

/// Reads `t,value` rows. Lines starting with '#' and a non-numeric header row
/// are skipped. A single-row file gets a sample rate of 1 Hz.
TimeSeries read_time_series_csv(const std::filesystem::path& path);

/// Reads a rectangular grid of comma-separated values, one image row per line.
Image read_grid_csv(const std::filesystem::path& path);

/// Shortest-safe round-trip text for a double: 17 significant digits, '.' radix,
/// independent of the global locale.
std::string format_double(double value);

/// Column-oriented table written as
///   # comment lines
///   name1,name2,...
///   v,v,...
struct CsvTable {
  std::vector<std::string> comments;
  std::vector<std::string> names;
  std::vector<std::vector<double>> columns;

  void add_column(std::string name, std::vector<double> values);
};

void write_csv(const std::filesystem::path& path, const CsvTable& table);
/// Inverse of write_csv: '# ' comment lines, a name row, then numeric rows.
CsvTable read_csv(const std::filesystem::path& path);
void write_grid_csv(const std::filesystem::path& path, const Image& image, const std::vector<std::string>& comments);

/// Parses a whole string as a double; throws IoError naming `context` on failure.
double parse_double(std::string_view text, std::string_view context);

}  // namespace gfr::io
