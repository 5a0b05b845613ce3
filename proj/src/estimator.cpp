#include "micdoa/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "micdoa/errors.hpp"

namespace micdoa {

namespace {
// Relative cancellation threshold: power units are arbitrary, so the
// indeterminate test must survive rescaling.
constexpr double kCancelEpsRel = 1e-12;
}  // namespace

int servo_command(double angle_deg, const ServoRange& servo) {
  if (servo.max_pos <= servo.min_pos) {
    throw std::invalid_argument("servo_command: empty servo range");
  }
  const double a = normalize_angle_deg(angle_deg);
  const double span = static_cast<double>(servo.max_pos - servo.min_pos);
  return static_cast<int>(std::lround(a / 360.0 * span)) + servo.min_pos;
}

DirectionEstimate estimate_direction(std::span<const double> powers,
                                     const MicArray& array,
                                     const ServoRange& servo) {
  if (powers.size() != array.size()) {
    throw std::invalid_argument(
        "estimate_direction: power count does not match microphone count");
  }
  double max_power = 0.0;
  for (double p : powers) {
    if (!std::isfinite(p) || p < 0.0) {
      throw std::invalid_argument(
          "estimate_direction: powers must be finite and non-negative");
    }
    max_power = std::max(max_power, p);
  }

  std::vector<RectVector> rects(powers.size());
  for (std::size_t i = 0; i < powers.size(); ++i) {
    rects[i] = polar_to_rect({array.angle_deg(i), powers[i]});
  }
  const RectVector sum = sum_vectors(rects);

  if (std::hypot(sum.x, sum.y) < kCancelEpsRel * max_power) {
    throw IndeterminateDirectionError(
        "estimate_direction: channel powers cancel, no direction");
  }
  const PolarVector result = rect_to_polar(sum);

  DirectionEstimate est;
  est.angle_deg = result.angle_deg;
  est.magnitude = result.magnitude;
  est.per_channel_power.assign(powers.begin(), powers.end());
  est.servo_pos = servo_command(result.angle_deg, servo);
  return est;
}

std::optional<DirectionEstimate> process_event(const ChannelStreams& streams,
                                               const MicArray& array,
                                               const TriggerConfig& cfg,
                                               const ServoRange& servo) {
  if (streams.size() != array.size()) {
    throw std::invalid_argument(
        "process_event: stream count does not match microphone count");
  }
  const auto trigger = detect_event(streams, cfg);
  if (!trigger) return std::nullopt;

  const auto windows = collect_windows(streams, *trigger, cfg.window_len);
  std::vector<double> powers(windows.size());
  for (std::size_t c = 0; c < windows.size(); ++c) {
    powers[c] = average_power(remove_dc(windows[c]), cfg.power_mode);
  }
  return estimate_direction(powers, array, servo);
}

}  // namespace micdoa
