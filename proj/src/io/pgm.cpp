#include "gfr/io/pgm.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>
#include <string>
#include <vector>

namespace gfr::io {

namespace {

// Header token reader honoring '#' comments.
class HeaderReader {
 public:
  HeaderReader(const std::vector<unsigned char>& bytes, std::string where) : bytes_(bytes), where_(std::move(where)) {}

  std::string token() {
    skip_space_and_comments();
    std::string t;
    while (pos_ < bytes_.size() && !std::isspace(bytes_[pos_]) && bytes_[pos_] != '#') t.push_back(static_cast<char>(bytes_[pos_++]));
    if (t.empty()) throw IoError(where_ + "truncated header");
    return t;
  }

  long number() {
    const std::string t = token();
    if (!std::all_of(t.begin(), t.end(), [](unsigned char c) { return std::isdigit(c); })) {
      throw IoError(where_ + "bad header field '" + t + "'");
    }
    return std::stol(t);
  }

  // Exactly one whitespace byte separates the header from the raster.
  std::size_t raster_start() {
    if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) throw IoError(where_ + "missing raster");
    return pos_ + 1;
  }

 private:
  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      if (std::isspace(bytes_[pos_])) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  const std::vector<unsigned char>& bytes_;
  std::string where_;
  std::size_t pos_ = 0;
};

}  // namespace

Graymap read_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  const std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  const std::string where = path.string() + ": ";

  HeaderReader header(bytes, where);
  if (header.token() != "P5") throw IoError(where + "not a binary PGM (P5) file");
  const long width = header.number();
  const long height = header.number();
  const long maxval = header.number();
  if (width <= 0 || height <= 0) throw IoError(where + "empty image");
  if (maxval <= 0 || maxval > 65535) throw IoError(where + "maxval out of range");

  const std::size_t start = header.raster_start();
  const std::size_t bytes_per_sample = maxval < 256 ? 1 : 2;
  const auto count = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  if (bytes.size() < start + count * bytes_per_sample) throw IoError(where + "truncated raster");

  Graymap g{Image(static_cast<std::size_t>(height), static_cast<std::size_t>(width)), static_cast<int>(maxval), {}};
  const unsigned char* p = bytes.data() + start;
  for (std::size_t i = 0; i < count; ++i) {
    g.image.data[i] = bytes_per_sample == 1 ? p[i] : static_cast<double>((p[2 * i] << 8) | p[2 * i + 1]);
  }
  return g;
}

void write_pgm(const std::filesystem::path& path, const Graymap& graymap) {
  const Image& img = graymap.image;
  if (graymap.maxval <= 0 || graymap.maxval > 65535) throw IoError("write_pgm: maxval out of range");
  std::string out = "P5\n";
  for (const auto& c : graymap.comments) out += "# " + c + "\n";
  out += std::to_string(img.cols) + " " + std::to_string(img.rows) + "\n" +
                    std::to_string(graymap.maxval) + "\n";
  const bool wide = graymap.maxval > 255;
  for (double v : img.data) {
    const auto q = static_cast<unsigned>(std::lround(std::clamp(v, 0.0, static_cast<double>(graymap.maxval))));
    if (wide) out.push_back(static_cast<char>(q >> 8));
    out.push_back(static_cast<char>(q & 0xFF));
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot write " + path.string());
  file.write(out.data(), static_cast<std::streamsize>(out.size()));
  if (!file) throw IoError("write error on " + path.string());
}

void write_pgm_preview(const std::filesystem::path& path, const Image& image, int maxval,
                       const std::vector<std::string>& comments) {
  const auto [lo, hi] = std::minmax_element(image.data.begin(), image.data.end());
  Graymap g{Image(image.rows, image.cols), maxval, comments};
  const double span = *hi - *lo;
  for (std::size_t i = 0; i < image.size(); ++i) {
    g.image.data[i] = span > 0.0 ? (image.data[i] - *lo) / span * maxval : maxval / 2.0;
  }
  write_pgm(path, g);
}

}  // namespace gfr::io
