#pragma once

#include <optional>
#include <span>
#include <vector>

#include "micdoa/dsp.hpp"
#include "micdoa/geometry.hpp"

namespace micdoa {

/// Positional-servo command range; the full bearing circle maps linearly
/// onto [min_pos, max_pos].
struct ServoRange {
  int min_pos = 0;
  int max_pos = 180;
};

struct DirectionEstimate {
  double angle_deg = 0.0;  // [0, 360)
  double magnitude = 0.0;  // norm of the summed power vector
  std::vector<double> per_channel_power;
  int servo_pos = 0;
};

/// round(angle/360 * (max - min)) + min, monotone over one revolution.
/// Angles outside [0, 360) are wrapped first.
int servo_command(double angle_deg, const ServoRange& servo = {});

/// Core direction estimate: one polar vector per microphone (bearing from the
/// array, magnitude from the channel power), summed in rectangular form and
/// read back as bearing + magnitude.
///
/// Throws IndeterminateDirectionError when the powers cancel (|sum| below
/// 1e-12 times the largest channel power), and std::invalid_argument on
/// size mismatch or negative/non-finite powers.
DirectionEstimate estimate_direction(std::span<const double> powers,
                                     const MicArray& array,
                                     const ServoRange& servo = {});

/// Full event pipeline over raw channel streams: threshold trigger, aligned
/// window collection, per-channel DC removal and power averaging, then
/// estimate_direction. Returns nullopt when no event triggers.
std::optional<DirectionEstimate> process_event(const ChannelStreams& streams,
                                               const MicArray& array,
                                               const TriggerConfig& cfg,
                                               const ServoRange& servo = {});

}  // namespace micdoa
