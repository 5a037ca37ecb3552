#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "gfr/io/io_error.hpp"
#include "gfr/types.hpp"

namespace gfr::io {

struct Graymap {
  Image image;  // raw sample values, 0..maxval
  int maxval = 255;
  /// Written as "# " lines after the magic number; not read back.
  std::vector<std::string> comments;
};

/// Binary (P5) portable graymap with 8-bit (maxval < 256) or big-endian
/// 16-bit samples.
Graymap read_pgm(const std::filesystem::path& path);
void write_pgm(const std::filesystem::path& path, const Graymap& graymap);

/// Linearly maps [min, max] of `image` onto [0, maxval] and writes it.
/// A constant image maps to mid-gray.
void write_pgm_preview(const std::filesystem::path& path, const Image& image, int maxval = 255,
                       const std::vector<std::string>& comments = {});

}  // namespace gfr::io
