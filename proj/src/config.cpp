#include "micdoa/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "micdoa/errors.hpp"
#include "micdoa/wav.hpp"

namespace micdoa {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw ConfigError("config field '" + field + "': " + what);
}

void expect_object(const json& v, const std::string& field) {
  if (!v.is_object()) fail(field, "expected an object");
}

void reject_unknown_keys(const json& obj, const std::string& field,
                         std::initializer_list<const char*> allowed) {
  for (const auto& [key, _] : obj.items()) {
    if (std::find_if(allowed.begin(), allowed.end(), [&](const char* a) {
          return key == a;
        }) == allowed.end()) {
      fail(field.empty() ? key : field + "." + key, "unknown key");
    }
  }
}

double get_double(const json& obj, const std::string& field,
                  const std::string& key, double fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number()) fail(field + "." + key, "expected a number");
  return v.get<double>();
}

std::uint64_t get_uint(const json& obj, const std::string& field,
                       const std::string& key, std::uint64_t fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number_unsigned()) fail(field + "." + key,
                                    "expected a non-negative integer");
  return v.get<std::uint64_t>();
}

std::string get_string(const json& obj, const std::string& field,
                       const std::string& key, const std::string& fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_string()) fail(field + "." + key, "expected a string");
  return v.get<std::string>();
}

PowerMode parse_power_mode(const std::string& s, const std::string& field) {
  if (s == "mean_abs") return PowerMode::kMeanAbs;
  if (s == "rms") return PowerMode::kRms;
  if (s == "mean_square") return PowerMode::kMeanSquare;
  fail(field, "expected one of mean_abs, rms, mean_square");
}

WaveformKind parse_waveform_kind(const std::string& s,
                                 const std::string& field) {
  if (s == "white_noise") return WaveformKind::kWhiteNoise;
  if (s == "sine") return WaveformKind::kSine;
  if (s == "clip") return WaveformKind::kClip;
  fail(field, "expected one of white_noise, sine, clip");
}

MicArray parse_array(const json& obj) {
  std::vector<double> angles = {0.0, 120.0, 240.0};
  double radius = 0.15;
  if (obj.contains("array")) {
    const json& a = obj.at("array");
    expect_object(a, "array");
    reject_unknown_keys(a, "array", {"angles_deg", "radius_m"});
    if (a.contains("angles_deg")) {
      if (!a.at("angles_deg").is_array()) fail("array.angles_deg", "expected an array");
      angles = a.at("angles_deg").get<std::vector<double>>();
    }
    radius = get_double(a, "array", "radius_m", radius);
  }
  try {
    return MicArray(angles, radius);
  } catch (const std::invalid_argument& e) {
    fail("array", e.what());
  }
}

Waveform parse_waveform(const json& scene, const std::string& config_dir) {
  Waveform w;
  if (!scene.contains("waveform")) return w;
  const json& v = scene.at("waveform");
  expect_object(v, "scene.waveform");
  reject_unknown_keys(v, "scene.waveform",
                      {"kind", "amplitude_fs", "freq_hz", "clip_path"});
  w.kind = parse_waveform_kind(
      get_string(v, "scene.waveform", "kind", "white_noise"),
      "scene.waveform.kind");
  const double default_amp = w.kind == WaveformKind::kClip ? 1.0 : 0.04;
  w.amplitude_fs = get_double(v, "scene.waveform", "amplitude_fs", default_amp);
  w.freq_hz = get_double(v, "scene.waveform", "freq_hz", 440.0);
  if (w.kind == WaveformKind::kClip) {
    w.clip_path = get_string(v, "scene.waveform", "clip_path", "");
    if (w.clip_path.empty()) {
      fail("scene.waveform.clip_path", "required for clip waveforms");
    }
    std::filesystem::path p(w.clip_path);
    if (p.is_relative() && !config_dir.empty()) {
      p = std::filesystem::path(config_dir) / p;
    }
    try {
      // Referenced files must exist at load time; mono source, first channel.
      w.clip_samples = read_wav(p, 1).channels.front();
    } catch (const IoError& e) {
      fail("scene.waveform.clip_path", e.what());
    }
  }
  return w;
}

SimScene parse_scene(const json& obj, const MicArray& array,
                     const std::string& config_dir) {
  SimScene scene;
  scene.array = array;
  if (obj.contains("scene")) {
    const json& s = obj.at("scene");
    expect_object(s, "scene");
    reject_unknown_keys(
        s, "scene",
        {"source_angle_deg", "source_distance_m", "attenuation_exponent",
         "waveform", "duration_s", "sample_rate_hz", "snr_db",
         "gain_mismatch"});
    scene.source_angle_deg =
        get_double(s, "scene", "source_angle_deg", scene.source_angle_deg);
    scene.source_distance_m =
        get_double(s, "scene", "source_distance_m", scene.source_distance_m);
    scene.attenuation_exponent = get_double(s, "scene", "attenuation_exponent",
                                            scene.attenuation_exponent);
    scene.waveform = parse_waveform(s, config_dir);
    scene.duration_s = get_double(s, "scene", "duration_s", scene.duration_s);
    scene.sample_rate_hz =
        get_double(s, "scene", "sample_rate_hz", scene.sample_rate_hz);
    if (s.contains("snr_db") && !s.at("snr_db").is_null()) {
      if (!s.at("snr_db").is_number()) fail("scene.snr_db", "expected a number or null");
      scene.snr_db = s.at("snr_db").get<double>();
    }
    if (s.contains("gain_mismatch")) {
      if (!s.at("gain_mismatch").is_array()) fail("scene.gain_mismatch", "expected an array");
      scene.gain_mismatch = s.at("gain_mismatch").get<std::vector<double>>();
    }
  }
  if (scene.gain_mismatch.empty()) {
    scene.gain_mismatch.assign(array.size(), 1.0);
  }
  return scene;
}

}  // namespace

namespace {
Config parse_config_impl(const json& doc, const std::string& source,
                         const std::string& base_dir);
}

Config parse_config(const json& doc, const std::string& source) {
  try {
    return parse_config_impl(doc, source, "");
  } catch (const json::exception& e) {
    throw ConfigError("config " + source + ": " + e.what());
  }
}

namespace {
Config parse_config_impl(const json& doc, const std::string& source,
                         const std::string& base_dir) {
  expect_object(doc, source);
  reject_unknown_keys(doc, "",
                      {"seed", "array", "trigger", "servo", "channel_map",
                       "trim_per_side", "scene"});

  Config cfg;
  cfg.seed = get_uint(doc, "", "seed", 0);
  cfg.array = parse_array(doc);

  if (doc.contains("trigger")) {
    const json& t = doc.at("trigger");
    expect_object(t, "trigger");
    reject_unknown_keys(t, "trigger",
                        {"threshold_fs", "window_len", "power_mode"});
    cfg.trigger.threshold =
        get_double(t, "trigger", "threshold_fs", cfg.trigger.threshold);
    cfg.trigger.window_len = static_cast<std::size_t>(
        get_uint(t, "trigger", "window_len", cfg.trigger.window_len));
    cfg.trigger.power_mode = parse_power_mode(
        get_string(t, "trigger", "power_mode", "mean_abs"),
        "trigger.power_mode");
  }
  if (!(cfg.trigger.threshold > 0.0)) fail("trigger.threshold_fs", "must be positive");
  if (cfg.trigger.window_len < 1) fail("trigger.window_len", "must be >= 1");

  if (doc.contains("servo")) {
    const json& s = doc.at("servo");
    expect_object(s, "servo");
    reject_unknown_keys(s, "servo", {"min_pos", "max_pos"});
    if (s.contains("min_pos")) cfg.servo.min_pos = s.at("min_pos").get<int>();
    if (s.contains("max_pos")) cfg.servo.max_pos = s.at("max_pos").get<int>();
  }
  if (cfg.servo.max_pos <= cfg.servo.min_pos) {
    fail("servo", "max_pos must exceed min_pos");
  }

  if (doc.contains("channel_map")) {
    if (!doc.at("channel_map").is_array()) fail("channel_map", "expected an array");
    cfg.channel_map = doc.at("channel_map").get<std::vector<std::size_t>>();
  } else {
    cfg.channel_map.resize(cfg.array.size());
    for (std::size_t i = 0; i < cfg.channel_map.size(); ++i) cfg.channel_map[i] = i;
  }
  if (cfg.channel_map.size() != cfg.array.size()) {
    fail("channel_map", "length must equal the microphone count");
  }
  std::vector<bool> seen(cfg.array.size(), false);
  for (std::size_t m : cfg.channel_map) {
    if (m >= cfg.array.size() || seen[m]) {
      fail("channel_map", "must be a bijection onto microphone indices");
    }
    seen[m] = true;
  }

  cfg.trim_per_side =
      static_cast<std::size_t>(get_uint(doc, "", "trim_per_side", 2));

  cfg.scene = parse_scene(doc, cfg.array, base_dir);
  validate_scene(cfg.scene);
  return cfg;
}
}  // namespace

Config load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ConfigError("cannot open config file: " + path.string());
  }
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    const std::size_t line =
        1 + static_cast<std::size_t>(
                std::count(text.begin(),
                           text.begin() + static_cast<std::ptrdiff_t>(
                                              std::min(e.byte, text.size())),
                           '\n'));
    throw ConfigError("config parse error at " + path.string() + ":" +
                      std::to_string(line) + ": " + e.what());
  }
  try {
    return parse_config_impl(doc, path.string(), path.parent_path().string());
  } catch (const json::exception& e) {
    throw ConfigError("config " + path.string() + ": " + e.what());
  }
}

const char* to_string(PowerMode mode) {
  switch (mode) {
    case PowerMode::kMeanAbs: return "mean_abs";
    case PowerMode::kRms: return "rms";
    case PowerMode::kMeanSquare: return "mean_square";
  }
  return "unknown";
}

const char* to_string(WaveformKind kind) {
  switch (kind) {
    case WaveformKind::kWhiteNoise: return "white_noise";
    case WaveformKind::kSine: return "sine";
    case WaveformKind::kClip: return "clip";
  }
  return "unknown";
}

nlohmann::json config_echo(const Config& cfg) {
  json waveform{{"kind", to_string(cfg.scene.waveform.kind)},
                {"amplitude_fs", cfg.scene.waveform.amplitude_fs}};
  if (cfg.scene.waveform.kind == WaveformKind::kSine) {
    waveform["freq_hz"] = cfg.scene.waveform.freq_hz;
  }
  if (cfg.scene.waveform.kind == WaveformKind::kClip) {
    waveform["clip_path"] = cfg.scene.waveform.clip_path;
  }
  json scene{{"source_angle_deg", cfg.scene.source_angle_deg},
             {"source_distance_m", cfg.scene.source_distance_m},
             {"attenuation_exponent", cfg.scene.attenuation_exponent},
             {"waveform", waveform},
             {"duration_s", cfg.scene.duration_s},
             {"sample_rate_hz", cfg.scene.sample_rate_hz},
             {"gain_mismatch", cfg.scene.gain_mismatch}};
  scene["snr_db"] = cfg.scene.snr_db ? json(*cfg.scene.snr_db) : json(nullptr);

  return json{{"seed", cfg.seed},
              {"rng", kRngAlgorithm},
              {"array",
               {{"angles_deg", cfg.array.angles_deg()},
                {"radius_m", cfg.array.radius_m()}}},
              {"trigger",
               {{"threshold_fs", cfg.trigger.threshold},
                {"window_len", cfg.trigger.window_len},
                {"power_mode", to_string(cfg.trigger.power_mode)}}},
              {"servo",
               {{"min_pos", cfg.servo.min_pos},
                {"max_pos", cfg.servo.max_pos}}},
              {"channel_map", cfg.channel_map},
              {"trim_per_side", cfg.trim_per_side},
              {"scene", scene}};
}

}  // namespace micdoa
