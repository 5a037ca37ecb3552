#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "gfr/io/io_error.hpp"

namespace gfr::io {

enum class WavEncoding { pcm16, float32 };

struct WavData {
  std::vector<double> samples;  // normalized to [-1, 1]
  double sample_rate = 0.0;
  WavEncoding encoding = WavEncoding::pcm16;
  /// Stored in a LIST/INFO ICMT chunk placed before the sample data.
  std::string comment;
};

/// Mono RIFF/WAVE, 16-bit integer PCM or 32-bit IEEE float.
WavData read_wav(const std::filesystem::path& path);
void write_wav(const std::filesystem::path& path, const WavData& data);

}  // namespace gfr::io
