#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace micdoa {

/// One stream of amplitude samples per microphone, index-aligned.
using ChannelStreams = std::vector<std::vector<double>>;

/// N consecutive amplitude samples taken from one channel.
struct SampleWindow {
  std::vector<double> samples;
  std::size_t channel_id = 0;
  std::size_t start_index = 0;
};

/// How a window's scalar power is computed from its samples.
enum class PowerMode {
  kMeanAbs,     // mean of |x|
  kRms,         // sqrt(mean of x^2)
  kMeanSquare,  // mean of x^2
};

struct TriggerConfig {
  double threshold = 0.1;  // full-scale amplitude units
  std::size_t window_len = 256;
  PowerMode power_mode = PowerMode::kMeanAbs;
};

/// Subtract the window's own arithmetic mean from every sample.
SampleWindow remove_dc(const SampleWindow& w);

/// Scalar power of a (DC-removed) window. Throws std::invalid_argument on an
/// empty window.
double average_power(const SampleWindow& w, PowerMode mode = PowerMode::kMeanAbs);

/// First sample index at which any channel's DC-removed absolute amplitude
/// exceeds cfg.threshold, where DC is each channel's whole-stream mean.
/// Returns nullopt if nothing exceeds the threshold, or if the stream ends
/// before a full window of cfg.window_len samples fits after the trigger.
std::optional<std::size_t> detect_event(const ChannelStreams& streams,
                                        const TriggerConfig& cfg);

/// Cut the aligned window [trigger_index, trigger_index + n) from every
/// channel. Throws std::out_of_range if the range does not fit.
std::vector<SampleWindow> collect_windows(const ChannelStreams& streams,
                                          std::size_t trigger_index,
                                          std::size_t n);

}  // namespace micdoa
