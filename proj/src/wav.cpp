#include "micdoa/wav.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <vector>

#include "micdoa/errors.hpp"

// Minimal RIFF/WAVE codec: fmt + data chunks, PCM16 or float32, unknown
// chunks skipped. Little-endian fields throughout.

namespace micdoa {

namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatFloat = 3;

std::uint32_t read_u32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) |
         (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) |
         (static_cast<std::uint32_t>(p[3]) << 24);
}

std::uint16_t read_u16(const unsigned char* p) {
  return static_cast<std::uint16_t>(static_cast<std::uint32_t>(p[0]) |
                                    (static_cast<std::uint32_t>(p[1]) << 8));
}

void put_u32(std::vector<unsigned char>& out, std::uint32_t v) {
  out.push_back(static_cast<unsigned char>(v & 0xFF));
  out.push_back(static_cast<unsigned char>((v >> 8) & 0xFF));
  out.push_back(static_cast<unsigned char>((v >> 16) & 0xFF));
  out.push_back(static_cast<unsigned char>((v >> 24) & 0xFF));
}

void put_u16(std::vector<unsigned char>& out, std::uint16_t v) {
  out.push_back(static_cast<unsigned char>(v & 0xFF));
  out.push_back(static_cast<unsigned char>((v >> 8) & 0xFF));
}

void put_tag(std::vector<unsigned char>& out, const char tag[4]) {
  out.insert(out.end(), tag, tag + 4);
}

}  // namespace

AudioStreams read_wav(const std::filesystem::path& path,
                      std::size_t min_channels) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open WAV file: " + path.string());
  }
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());

  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
    throw MalformedWavError("not a RIFF/WAVE file: " + path.string());
  }

  bool have_fmt = false;
  std::uint16_t format = 0, n_channels = 0, bits = 0, block_align = 0;
  std::uint32_t sample_rate = 0;
  const unsigned char* data = nullptr;
  std::uint32_t data_len = 0;

  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const unsigned char* hdr = bytes.data() + pos;
    const std::uint32_t chunk_len = read_u32(hdr + 4);
    const std::size_t body = pos + 8;
    if (body + chunk_len > bytes.size()) {
      throw MalformedWavError("truncated chunk in WAV file: " + path.string());
    }
    if (std::memcmp(hdr, "fmt ", 4) == 0) {
      if (chunk_len < 16) {
        throw MalformedWavError("fmt chunk too short: " + path.string());
      }
      const unsigned char* f = bytes.data() + body;
      format = read_u16(f);
      n_channels = read_u16(f + 2);
      sample_rate = read_u32(f + 4);
      block_align = read_u16(f + 12);
      bits = read_u16(f + 14);
      have_fmt = true;
    } else if (std::memcmp(hdr, "data", 4) == 0) {
      data = bytes.data() + body;
      data_len = chunk_len;
    }
    pos = body + chunk_len + (chunk_len & 1);  // chunks are word-aligned
  }

  if (!have_fmt || data == nullptr) {
    throw MalformedWavError("missing fmt or data chunk: " + path.string());
  }
  if (n_channels == 0 || sample_rate == 0) {
    throw MalformedWavError("fmt chunk has zero channels or rate: " +
                            path.string());
  }

  const bool pcm16 = format == kFormatPcm && bits == 16;
  const bool float32 = format == kFormatFloat && bits == 32;
  if (!pcm16 && !float32) {
    throw UnsupportedWavError("unsupported WAV codec (format tag " +
                              std::to_string(format) + ", " +
                              std::to_string(bits) + "-bit): " + path.string());
  }
  const std::size_t bytes_per_sample = bits / 8u;
  if (block_align != bytes_per_sample * n_channels ||
      data_len % block_align != 0) {
    throw MalformedWavError("inconsistent block alignment: " + path.string());
  }
  if (min_channels > 0 && n_channels < min_channels) {
    throw ChannelShortfallError(
        "WAV file has " + std::to_string(n_channels) + " channels, need " +
        std::to_string(min_channels) + ": " + path.string());
  }

  const std::size_t n_frames = data_len / block_align;
  AudioStreams out;
  out.sample_rate_hz = static_cast<double>(sample_rate);
  out.channels.assign(n_channels, std::vector<double>(n_frames));
  for (std::size_t t = 0; t < n_frames; ++t) {
    for (std::size_t c = 0; c < n_channels; ++c) {
      const unsigned char* p = data + (t * n_channels + c) * bytes_per_sample;
      if (pcm16) {
        const auto raw = static_cast<std::int16_t>(read_u16(p));
        out.channels[c][t] = static_cast<double>(raw) / 32768.0;
      } else {
        std::uint32_t u = read_u32(p);
        float f;
        std::memcpy(&f, &u, sizeof(f));
        out.channels[c][t] = std::clamp(static_cast<double>(f), -1.0, 1.0);
      }
    }
  }
  return out;
}

std::size_t write_wav(const ChannelStreams& channels, double sample_rate_hz,
                      const std::filesystem::path& path) {
  if (channels.empty() || channels.front().empty()) {
    throw std::invalid_argument("write_wav: no samples");
  }
  const std::size_t n_frames = channels.front().size();
  for (const auto& ch : channels) {
    if (ch.size() != n_frames) {
      throw std::invalid_argument("write_wav: unequal channel lengths");
    }
  }
  if (!(sample_rate_hz > 0.0)) {
    throw std::invalid_argument("write_wav: sample rate must be positive");
  }

  const auto n_channels = static_cast<std::uint16_t>(channels.size());
  const std::uint16_t block_align = n_channels * 2;
  const auto rate = static_cast<std::uint32_t>(std::llround(sample_rate_hz));
  const auto data_len = static_cast<std::uint32_t>(n_frames * block_align);

  std::vector<unsigned char> out;
  out.reserve(44 + data_len);
  put_tag(out, "RIFF");
  put_u32(out, 36 + data_len);
  put_tag(out, "WAVE");
  put_tag(out, "fmt ");
  put_u32(out, 16);
  put_u16(out, kFormatPcm);
  put_u16(out, n_channels);
  put_u32(out, rate);
  put_u32(out, rate * block_align);
  put_u16(out, block_align);
  put_u16(out, 16);
  put_tag(out, "data");
  put_u32(out, data_len);

  std::size_t saturated = 0;
  for (std::size_t t = 0; t < n_frames; ++t) {
    for (std::size_t c = 0; c < n_channels; ++c) {
      const double x = channels[c][t];
      if (x < -1.0 || x > 1.0) ++saturated;
      // Scale by 32768 and clamp: representable values k/32768 round-trip
      // exactly and quantization error stays within one LSB.
      const double scaled = std::round(x * 32768.0);
      const auto q = static_cast<std::int16_t>(
          std::clamp(scaled, -32768.0, 32767.0));
      put_u16(out, static_cast<std::uint16_t>(q));
    }
  }

  std::ofstream f(path, std::ios::binary);
  if (!f) {
    throw IoError("cannot open for writing: " + path.string());
  }
  f.write(reinterpret_cast<const char*>(out.data()),
          static_cast<std::streamsize>(out.size()));
  if (!f.good()) {
    throw IoError("write failed: " + path.string());
  }
  return saturated;
}

}  // namespace micdoa
