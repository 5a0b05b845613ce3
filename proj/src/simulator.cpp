#include "micdoa/simulator.hpp"

#include <cmath>
#include <stdexcept>

#include "micdoa/errors.hpp"

namespace micdoa {

namespace {

// Sub-stream ids: 0 drives the source waveform, 1+c the per-channel noise.
constexpr std::uint64_t kWaveformStream = 0;

std::vector<double> render_waveform(const Waveform& w, std::size_t n,
                                    double sample_rate_hz, RngSeed seed) {
  std::vector<double> s(n);
  switch (w.kind) {
    case WaveformKind::kWhiteNoise: {
      NormalSampler gauss(make_engine(seed, kWaveformStream));
      for (double& x : s) x = w.amplitude_fs * gauss();
      break;
    }
    case WaveformKind::kSine: {
      const double step = 2.0 * std::numbers::pi * w.freq_hz / sample_rate_hz;
      for (std::size_t t = 0; t < n; ++t) {
        s[t] = w.amplitude_fs * std::sin(step * static_cast<double>(t));
      }
      break;
    }
    case WaveformKind::kClip: {
      if (w.clip_samples.empty()) {
        throw ConfigError("scene.waveform: clip has no samples");
      }
      // Short clips loop until the trial duration is filled.
      for (std::size_t t = 0; t < n; ++t) {
        s[t] = w.amplitude_fs * w.clip_samples[t % w.clip_samples.size()];
      }
      break;
    }
  }
  return s;
}

}  // namespace

std::vector<MicPosition> mic_positions(const MicArray& array) {
  std::vector<MicPosition> pos(array.size());
  for (std::size_t i = 0; i < array.size(); ++i) {
    const double rad = deg_to_rad(array.angle_deg(i));
    pos[i] = {array.radius_m() * std::cos(rad),
              array.radius_m() * std::sin(rad)};
  }
  return pos;
}

double attenuation(double distance_m, double exponent) {
  if (!(distance_m > 0.0)) {
    throw std::invalid_argument("attenuation: distance must be positive");
  }
  if (exponent < 0.0) {
    throw std::invalid_argument("attenuation: exponent must be >= 0");
  }
  return std::pow(distance_m, -exponent);
}

void validate_scene(const SimScene& scene) {
  if (!std::isfinite(scene.source_angle_deg) || scene.source_angle_deg < 0.0 ||
      scene.source_angle_deg >= 360.0) {
    throw ConfigError("scene.source_angle_deg must lie in [0, 360)");
  }
  if (!(scene.source_distance_m > 0.0)) {
    throw ConfigError("scene.source_distance_m must be positive");
  }
  if (!(scene.attenuation_exponent >= 0.0)) {
    throw ConfigError("scene.attenuation_exponent must be >= 0");
  }
  if (!(scene.duration_s > 0.0)) {
    throw ConfigError("scene.duration_s must be positive");
  }
  if (!(scene.sample_rate_hz > 0.0)) {
    throw ConfigError("scene.sample_rate_hz must be positive");
  }
  if (!(scene.waveform.amplitude_fs > 0.0)) {
    throw ConfigError("scene.waveform.amplitude_fs must be positive");
  }
  if (scene.waveform.kind == WaveformKind::kSine &&
      !(scene.waveform.freq_hz > 0.0)) {
    throw ConfigError("scene.waveform.freq_hz must be positive");
  }
  if (scene.snr_db && !std::isfinite(*scene.snr_db)) {
    throw ConfigError("scene.snr_db must be finite");
  }
  if (!scene.gain_mismatch.empty()) {
    if (scene.gain_mismatch.size() != scene.array.size()) {
      throw ConfigError("scene.gain_mismatch length must match the array");
    }
    for (double g : scene.gain_mismatch) {
      if (!(g > 0.0)) throw ConfigError("scene.gain_mismatch factors must be > 0");
    }
  }
  // The source may sit inside the array ring, but not on a microphone.
  const double sx = scene.source_distance_m * std::cos(deg_to_rad(scene.source_angle_deg));
  const double sy = scene.source_distance_m * std::sin(deg_to_rad(scene.source_angle_deg));
  for (const MicPosition& p : mic_positions(scene.array)) {
    if (std::hypot(sx - p.x_m, sy - p.y_m) < 1e-9) {
      throw ConfigError("scene: source coincides with a microphone position");
    }
  }
}

TrialSignals synthesize_trial(const SimScene& scene, RngSeed seed) {
  validate_scene(scene);

  const std::size_t n_samples = static_cast<std::size_t>(
      std::llround(scene.duration_s * scene.sample_rate_hz));
  if (n_samples == 0) {
    throw ConfigError("scene: duration_s * sample_rate_hz rounds to zero samples");
  }
  const std::size_t n_ch = scene.array.size();

  const double sx = scene.source_distance_m * std::cos(deg_to_rad(scene.source_angle_deg));
  const double sy = scene.source_distance_m * std::sin(deg_to_rad(scene.source_angle_deg));
  const auto positions = mic_positions(scene.array);

  std::vector<double> gain(n_ch);
  for (std::size_t c = 0; c < n_ch; ++c) {
    const double d = std::hypot(sx - positions[c].x_m, sy - positions[c].y_m);
    const double mismatch = scene.gain_mismatch.empty() ? 1.0 : scene.gain_mismatch[c];
    gain[c] = mismatch * attenuation(d, scene.attenuation_exponent);
  }

  const std::vector<double> source =
      render_waveform(scene.waveform, n_samples, scene.sample_rate_hz, seed);

  TrialSignals out;
  out.true_angle_deg = scene.source_angle_deg;
  out.sample_rate_hz = scene.sample_rate_hz;
  out.streams.assign(n_ch, std::vector<double>(n_samples));
  for (std::size_t c = 0; c < n_ch; ++c) {
    for (std::size_t t = 0; t < n_samples; ++t) {
      out.streams[c][t] = gain[c] * source[t];
    }
  }

  if (scene.snr_db) {
    // SNR is defined against the strongest channel's noiseless mean-square
    // power; every channel then gets noise of the same variance.
    double p_star = 0.0;
    for (std::size_t c = 0; c < n_ch; ++c) {
      double acc = 0.0;
      for (double x : out.streams[c]) acc += x * x;
      p_star = std::max(p_star, acc / static_cast<double>(n_samples));
    }
    const double sigma_n =
        std::sqrt(p_star * std::pow(10.0, -*scene.snr_db / 10.0));
    for (std::size_t c = 0; c < n_ch; ++c) {
      NormalSampler gauss(make_engine(seed, 1 + static_cast<std::uint64_t>(c)));
      for (double& x : out.streams[c]) x += sigma_n * gauss();
    }
  }
  return out;
}

}  // namespace micdoa
