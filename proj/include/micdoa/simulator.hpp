#pragma once

#include <optional>
#include <string>
#include <vector>

#include "micdoa/dsp.hpp"
#include "micdoa/geometry.hpp"
#include "micdoa/rng.hpp"

namespace micdoa {

enum class WaveformKind { kWhiteNoise, kSine, kClip };

struct Waveform {
  WaveformKind kind = WaveformKind::kWhiteNoise;
  double amplitude_fs = 0.04;  // sigma for white noise, peak for sine
  double freq_hz = 440.0;      // sine only
  std::vector<double> clip_samples;  // clip only, preloaded by the caller
  std::string clip_path;             // clip only, for the config echo
};

/// Acoustic scene: a single source at a planar bearing and distance, an
/// amplitude attenuation law, optional additive noise and per-channel gain
/// mismatch. No propagation delay is modeled; the estimator only ever looks
/// at power.
struct SimScene {
  double source_angle_deg = 0.0;
  double source_distance_m = 0.35;
  MicArray array = MicArray::default_array();
  double attenuation_exponent = 1.0;  // amplitude ~ 1/d^alpha
  Waveform waveform;
  double duration_s = 2.0;
  double sample_rate_hz = 8000.0;
  std::optional<double> snr_db;        // nullopt = noiseless
  std::vector<double> gain_mismatch;   // empty = all ones
};

struct MicPosition {
  double x_m = 0.0;
  double y_m = 0.0;
};

struct TrialSignals {
  ChannelStreams streams;  // one stream per microphone, index-aligned
  double true_angle_deg = 0.0;
  double sample_rate_hz = 0.0;
};

/// (radius cos θ, radius sin θ) per microphone.
std::vector<MicPosition> mic_positions(const MicArray& array);

/// Amplitude gain 1/d^exponent. Throws std::invalid_argument for d <= 0.
double attenuation(double distance_m, double exponent);

/// Throws ConfigError when the scene violates its invariants.
void validate_scene(const SimScene& scene);

/// Generate one trial's per-microphone streams:
///   channel_i(t) = gain_mismatch_i * attenuation(d_i) * s(t) + noise_i(t)
/// with d_i the source-to-microphone distance, s(t) the scene waveform and
/// noise_i white Gaussian, scaled so the strongest channel's signal-to-noise
/// power ratio equals snr_db. Same (scene, seed) always gives bit-identical
/// streams; sub-streams are seeded independently per channel.
TrialSignals synthesize_trial(const SimScene& scene, RngSeed seed);

}  // namespace micdoa
