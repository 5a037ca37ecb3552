#include "gfr/io/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace gfr::io {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    fields.push_back(trim(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return fields;
}

bool try_parse(std::string_view text, double& out) {
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size() && !text.empty();
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return in;
}

// Data lines of a CSV file: comments and blank lines removed.
std::vector<std::pair<std::size_t, std::string>> data_lines(const std::filesystem::path& path) {
  std::ifstream in = open_input(path);
  std::vector<std::pair<std::size_t, std::string>> lines;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    lines.emplace_back(number, std::string(t));
  }
  if (in.bad()) throw IoError("read error on " + path.string());
  return lines;
}

}  // namespace

double parse_double(std::string_view text, std::string_view context) {
  double v = 0.0;
  if (!try_parse(trim(text), v)) {
    throw IoError(std::string(context) + ": not a number: '" + std::string(text) + "'");
  }
  return v;
}

TimeSeries read_time_series_csv(const std::filesystem::path& path) {
  TimeSeries ts;
  bool first = true;
  for (const auto& [number, line] : data_lines(path)) {
    const auto fields = split(line, ',');
    double t = 0.0;
    double v = 0.0;
    const bool numeric = fields.size() >= 2 && try_parse(fields[0], t) && try_parse(fields[1], v);
    if (!numeric) {
      if (first) {  // header row
        first = false;
        continue;
      }
      throw IoError(path.string() + ":" + std::to_string(number) + ": expected two numeric columns t,value");
    }
    first = false;
    ts.t.push_back(t);
    ts.values.push_back(v);
  }
  if (ts.values.empty()) throw IoError(path.string() + ": no data rows");
  if (ts.t.size() > 1) {
    const double dt = ts.t[1] - ts.t[0];
    if (!(dt > 0.0)) throw IoError(path.string() + ": time column must be strictly increasing");
    ts.sample_rate = 1.0 / dt;
  }
  return ts;
}

Image read_grid_csv(const std::filesystem::path& path) {
  std::vector<double> values;
  std::size_t cols = 0;
  std::size_t rows = 0;
  for (const auto& [number, line] : data_lines(path)) {
    const auto fields = split(line, ',');
    if (rows == 0) cols = fields.size();
    if (fields.size() != cols) {
      throw IoError(path.string() + ":" + std::to_string(number) + ": ragged row");
    }
    for (const auto f : fields) {
      values.push_back(parse_double(f, path.string() + ":" + std::to_string(number)));
    }
    ++rows;
  }
  if (rows == 0 || cols == 0) throw IoError(path.string() + ": empty grid");
  Image image(rows, cols);
  image.data = std::move(values);
  return image;
}

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
  if (ec != std::errc()) throw IoError("format_double: buffer too small");
  return std::string(buf, ptr);
}

void CsvTable::add_column(std::string name, std::vector<double> values) {
  names.push_back(std::move(name));
  columns.push_back(std::move(values));
}

void write_csv(const std::filesystem::path& path, const CsvTable& table) {
  if (table.names.size() != table.columns.size()) throw IoError("write_csv: header/column count mismatch");
  const std::size_t rows = table.columns.empty() ? 0 : table.columns.front().size();
  for (const auto& c : table.columns) {
    if (c.size() != rows) throw IoError("write_csv: columns have different lengths");
  }

  std::ostringstream out;
  for (const auto& c : table.comments) out << "# " << c << '\n';
  for (std::size_t i = 0; i < table.names.size(); ++i) out << (i ? "," : "") << table.names[i];
  out << '\n';
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
      if (c) out << ',';
      out << format_double(table.columns[c][r]);
    }
    out << '\n';
  }

  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot write " + path.string());
  file << out.str();
  if (!file) throw IoError("write error on " + path.string());
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in = open_input(path);
  CsvTable table;
  std::string line;
  std::size_t number = 0;
  bool have_names = false;
  while (std::getline(in, line)) {
    ++number;
    const auto t = trim(line);
    if (t.empty()) continue;
    if (t.front() == '#') {
      if (!have_names) table.comments.emplace_back(trim(t.substr(1)));
      continue;
    }
    const auto fields = split(t, ',');
    if (!have_names) {
      for (const auto f : fields) table.names.emplace_back(f);
      table.columns.resize(fields.size());
      have_names = true;
      continue;
    }
    if (fields.size() != table.names.size()) {
      throw IoError(path.string() + ":" + std::to_string(number) + ": wrong number of fields");
    }
    for (std::size_t c = 0; c < fields.size(); ++c) {
      table.columns[c].push_back(parse_double(fields[c], path.string() + ":" + std::to_string(number)));
    }
  }
  if (in.bad()) throw IoError("read error on " + path.string());
  if (!have_names) throw IoError(path.string() + ": no header row");
  return table;
}

void write_grid_csv(const std::filesystem::path& path, const Image& image, const std::vector<std::string>& comments) {
  std::ostringstream out;
  for (const auto& c : comments) out << "# " << c << '\n';
  for (std::size_t r = 0; r < image.rows; ++r) {
    for (std::size_t c = 0; c < image.cols; ++c) {
      if (c) out << ',';
      out << format_double(image(r, c));
    }
    out << '\n';
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot write " + path.string());
  file << out.str();
  if (!file) throw IoError("write error on " + path.string());
}

}  // namespace gfr::io
