#pragma once

#include <cstddef>
#include <filesystem>

#include "micdoa/dsp.hpp"

namespace micdoa {

/// Deinterleaved audio with samples normalized to [-1, 1].
struct AudioStreams {
  ChannelStreams channels;
  double sample_rate_hz = 0.0;

  std::size_t channel_count() const { return channels.size(); }
  std::size_t frame_count() const {
    return channels.empty() ? 0 : channels.front().size();
  }
};

/// Read a RIFF/WAVE file holding 16-bit PCM or 32-bit IEEE-float samples.
/// Integer samples are divided by full scale (int16 -32768 maps to -1.0
/// exactly); float samples are clamped to [-1, 1]. Unknown chunks are
/// skipped. Throws IoError (missing file), MalformedWavError,
/// UnsupportedWavError, or ChannelShortfallError when the file holds fewer
/// than min_channels channels.
AudioStreams read_wav(const std::filesystem::path& path,
                      std::size_t min_channels = 0);

/// Write 16-bit PCM. Samples outside [-1, 1] saturate to full scale; the
/// return value counts them. Throws IoError on unwritable paths,
/// std::invalid_argument on empty or unequal-length channels.
std::size_t write_wav(const ChannelStreams& channels, double sample_rate_hz,
                      const std::filesystem::path& path);

}  // namespace micdoa
