#include "micdoa/dsp.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace micdoa {

namespace {

double mean_of(const std::vector<double>& xs) {
  return std::accumulate(xs.begin(), xs.end(), 0.0) /
         static_cast<double>(xs.size());
}

}  // namespace

SampleWindow remove_dc(const SampleWindow& w) {
  if (w.samples.empty()) {
    throw std::invalid_argument("remove_dc: empty window");
  }
  const double dc = mean_of(w.samples);
  SampleWindow out = w;
  for (double& s : out.samples) s -= dc;
  return out;
}

double average_power(const SampleWindow& w, PowerMode mode) {
  if (w.samples.empty()) {
    throw std::invalid_argument("average_power: empty window");
  }
  const double n = static_cast<double>(w.samples.size());
  double acc = 0.0;
  switch (mode) {
    case PowerMode::kMeanAbs:
      for (double s : w.samples) acc += std::abs(s);
      return acc / n;
    case PowerMode::kRms:
      for (double s : w.samples) acc += s * s;
      return std::sqrt(acc / n);
    case PowerMode::kMeanSquare:
      for (double s : w.samples) acc += s * s;
      return acc / n;
  }
  throw std::invalid_argument("average_power: unknown mode");
}

std::optional<std::size_t> detect_event(const ChannelStreams& streams,
                                        const TriggerConfig& cfg) {
  if (streams.empty()) {
    throw std::invalid_argument("detect_event: no channels");
  }
  if (!(cfg.threshold > 0.0)) {
    throw std::invalid_argument("detect_event: threshold must be positive");
  }
  if (cfg.window_len < 1) {
    throw std::invalid_argument("detect_event: window length must be >= 1");
  }
  const std::size_t len = streams.front().size();
  for (const auto& s : streams) {
    if (s.size() != len) {
      throw std::invalid_argument("detect_event: unequal stream lengths");
    }
  }
  if (len == 0) return std::nullopt;

  std::vector<double> dc(streams.size());
  for (std::size_t c = 0; c < streams.size(); ++c) dc[c] = mean_of(streams[c]);

  for (std::size_t i = 0; i < len; ++i) {
    for (std::size_t c = 0; c < streams.size(); ++c) {
      if (std::abs(streams[c][i] - dc[c]) > cfg.threshold) {
        // Event too close to the stream end to fill a window is discarded.
        if (i + cfg.window_len > len) return std::nullopt;
        return i;
      }
    }
  }
  return std::nullopt;
}

std::vector<SampleWindow> collect_windows(const ChannelStreams& streams,
                                          std::size_t trigger_index,
                                          std::size_t n) {
  if (n == 0) {
    throw std::invalid_argument("collect_windows: window length must be >= 1");
  }
  std::vector<SampleWindow> windows;
  windows.reserve(streams.size());
  for (std::size_t c = 0; c < streams.size(); ++c) {
    const auto& s = streams[c];
    if (trigger_index + n > s.size()) {
      throw std::out_of_range("collect_windows: window exceeds stream length");
    }
    SampleWindow w;
    w.samples.assign(s.begin() + static_cast<std::ptrdiff_t>(trigger_index),
                     s.begin() + static_cast<std::ptrdiff_t>(trigger_index + n));
    w.channel_id = c;
    w.start_index = trigger_index;
    windows.push_back(std::move(w));
  }
  return windows;
}

}  // namespace micdoa
