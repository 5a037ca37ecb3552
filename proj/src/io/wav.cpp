#include "gfr/io/wav.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

namespace gfr::io {

namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatFloat = 3;

std::uint32_t le32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

std::uint16_t le16(const unsigned char* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

void put32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

void put16(std::string& out, std::uint16_t v) {
  out.push_back(static_cast<char>(v & 0xFF));
  out.push_back(static_cast<char>(v >> 8));
}

}  // namespace

WavData read_wav(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  const std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  const std::string where = path.string() + ": ";
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 || std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
    throw IoError(where + "not a RIFF/WAVE file");
  }

  std::uint16_t format = 0;
  std::uint16_t channels = 0;
  std::uint16_t bits = 0;
  std::uint32_t rate = 0;
  const unsigned char* data = nullptr;
  std::size_t data_size = 0;
  std::string comment;

  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const unsigned char* chunk = bytes.data() + pos;
    const std::size_t size = le32(chunk + 4);
    const std::size_t body = pos + 8;
    if (body + size > bytes.size()) throw IoError(where + "truncated chunk");
    if (std::memcmp(chunk, "fmt ", 4) == 0) {
      if (size < 16) throw IoError(where + "short fmt chunk");
      format = le16(chunk + 8);
      channels = le16(chunk + 10);
      rate = le32(chunk + 12);
      bits = le16(chunk + 22);
    } else if (std::memcmp(chunk, "LIST", 4) == 0 && size >= 4 && std::memcmp(chunk + 8, "INFO", 4) == 0) {
      std::size_t sub = body + 4;
      while (sub + 8 <= body + size) {
        const std::size_t sub_size = le32(bytes.data() + sub + 4);
        if (sub + 8 + sub_size > body + size) break;
        if (std::memcmp(bytes.data() + sub, "ICMT", 4) == 0) {
          comment.assign(reinterpret_cast<const char*>(bytes.data() + sub + 8), sub_size);
          while (!comment.empty() && comment.back() == '\0') comment.pop_back();
        }
        sub += 8 + sub_size + (sub_size & 1);
      }
    } else if (std::memcmp(chunk, "data", 4) == 0) {
      data = chunk + 8;
      data_size = size;
    }
    pos = body + size + (size & 1);
  }

  if (channels != 1) throw IoError(where + "only mono WAV files are supported");
  if (data == nullptr) throw IoError(where + "missing data chunk");
  if (rate == 0) throw IoError(where + "zero sample rate");

  WavData out;
  out.sample_rate = rate;
  out.comment = std::move(comment);
  if (format == kFormatPcm && bits == 16) {
    out.encoding = WavEncoding::pcm16;
    out.samples.resize(data_size / 2);
    for (std::size_t i = 0; i < out.samples.size(); ++i) {
      const auto v = static_cast<std::int16_t>(le16(data + 2 * i));
      out.samples[i] = static_cast<double>(v) / 32768.0;
    }
  } else if (format == kFormatFloat && bits == 32) {
    out.encoding = WavEncoding::float32;
    out.samples.resize(data_size / 4);
    for (std::size_t i = 0; i < out.samples.size(); ++i) {
      out.samples[i] = static_cast<double>(std::bit_cast<float>(le32(data + 4 * i)));
    }
  } else {
    throw IoError(where + "unsupported encoding (need 16-bit PCM or 32-bit float)");
  }
  if (out.samples.empty()) throw IoError(where + "no samples");
  return out;
}

void write_wav(const std::filesystem::path& path, const WavData& data) {
  const bool is_float = data.encoding == WavEncoding::float32;
  const std::uint16_t bits = is_float ? 32 : 16;
  const std::uint16_t block = bits / 8;
  const auto rate = static_cast<std::uint32_t>(std::lround(data.sample_rate));
  const auto data_size = static_cast<std::uint32_t>(data.samples.size() * block);

  std::string info;
  if (!data.comment.empty()) {
    std::string text = data.comment;
    text.push_back('\0');
    if (text.size() % 2 == 1) text.push_back('\0');
    info = "LIST";
    put32(info, static_cast<std::uint32_t>(4 + 8 + text.size()));
    info += "INFOICMT";
    put32(info, static_cast<std::uint32_t>(text.size()));
    info += text;
  }

  std::string out;
  out.reserve(44 + info.size() + data_size);
  out += "RIFF";
  put32(out, static_cast<std::uint32_t>(36 + info.size()) + data_size);
  out += "WAVEfmt ";
  put32(out, 16);
  put16(out, is_float ? kFormatFloat : kFormatPcm);
  put16(out, 1);
  put32(out, rate);
  put32(out, rate * block);
  put16(out, block);
  put16(out, bits);
  out += info;
  out += "data";
  put32(out, data_size);
  for (double v : data.samples) {
    if (is_float) {
      put32(out, std::bit_cast<std::uint32_t>(static_cast<float>(v)));
    } else {
      const double clamped = std::clamp(v, -1.0, 1.0);
      const auto q = static_cast<std::int16_t>(std::lround(std::min(clamped * 32768.0, 32767.0)));
      put16(out, static_cast<std::uint16_t>(q));
    }
  }

  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot write " + path.string());
  file.write(out.data(), static_cast<std::streamsize>(out.size()));
  if (!file) throw IoError("write error on " + path.string());
}

}  // namespace gfr::io
