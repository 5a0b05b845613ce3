#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <string>

#include "micdoa/config.hpp"
#include "micdoa/errors.hpp"
#include "micdoa/wav.hpp"

using namespace micdoa;

namespace {

std::filesystem::path write_config(const char* name, const std::string& text) {
  const auto dir = std::filesystem::temp_directory_path() / "micdoa_cfg_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / name;
  std::ofstream out(path, std::ios::binary);
  out << text;
  return path;
}

}  // namespace

TEST_SUITE("config") {

TEST_CASE("minimal file gets full defaults") {
  const Config cfg = load_config(write_config("minimal.json", R"({"seed": 9})"));
  CHECK(cfg.seed == 9);
  CHECK(cfg.array.size() == 3);
  CHECK(cfg.array.angles_deg() == std::vector<double>{0.0, 120.0, 240.0});
  CHECK(cfg.array.radius_m() == doctest::Approx(0.15));
  CHECK(cfg.trigger.threshold == doctest::Approx(0.1));
  CHECK(cfg.trigger.window_len == 256);
  CHECK(cfg.trigger.power_mode == PowerMode::kMeanAbs);
  CHECK(cfg.servo.min_pos == 0);
  CHECK(cfg.servo.max_pos == 180);
  CHECK(cfg.channel_map == std::vector<std::size_t>{0, 1, 2});
  CHECK(cfg.trim_per_side == 2);
  CHECK(cfg.scene.source_distance_m == doctest::Approx(0.35));
  CHECK(cfg.scene.duration_s == doctest::Approx(2.0));
  CHECK(cfg.scene.sample_rate_hz == doctest::Approx(8000.0));
  CHECK(cfg.scene.attenuation_exponent == doctest::Approx(1.0));
  CHECK(!cfg.scene.snr_db.has_value());
  CHECK(cfg.scene.waveform.kind == WaveformKind::kWhiteNoise);
  CHECK(cfg.scene.gain_mismatch == std::vector<double>{1.0, 1.0, 1.0});
}

TEST_CASE("field overrides apply") {
  const Config cfg = load_config(write_config("full.json", R"({
    "seed": 3,
    "array": {"angles_deg": [0.0, 90.0, 180.0, 270.0], "radius_m": 0.2},
    "trigger": {"threshold_fs": 0.05, "window_len": 128, "power_mode": "rms"},
    "servo": {"min_pos": 0, "max_pos": 359},
    "channel_map": [3, 2, 1, 0],
    "trim_per_side": 1,
    "scene": {
      "source_angle_deg": 45.0,
      "source_distance_m": 1.0,
      "attenuation_exponent": 2.0,
      "waveform": {"kind": "sine", "freq_hz": 1000.0, "amplitude_fs": 0.1},
      "duration_s": 0.5,
      "sample_rate_hz": 16000.0,
      "snr_db": 20.0,
      "gain_mismatch": [1.0, 1.1, 0.9, 1.0]
    }
  })"));
  CHECK(cfg.array.size() == 4);
  CHECK(cfg.trigger.power_mode == PowerMode::kRms);
  CHECK(cfg.channel_map == std::vector<std::size_t>{3, 2, 1, 0});
  CHECK(cfg.scene.waveform.kind == WaveformKind::kSine);
  CHECK(cfg.scene.waveform.freq_hz == doctest::Approx(1000.0));
  REQUIRE(cfg.scene.snr_db.has_value());
  CHECK(*cfg.scene.snr_db == doctest::Approx(20.0));
}

TEST_CASE("rejections name the offending field") {
  CHECK_THROWS_WITH_AS(
      load_config(write_config("dup.json",
                               R"({"array": {"angles_deg": [0.0, 120.0, 120.0]}})")),
      doctest::Contains("array"), ConfigError);

  CHECK_THROWS_WITH_AS(
      load_config(write_config("gap.json", R"({"channel_map": [0, 0, 2]})")),
      doctest::Contains("channel_map"), ConfigError);

  CHECK_THROWS_WITH_AS(
      load_config(write_config("short_map.json", R"({"channel_map": [0, 1]})")),
      doctest::Contains("channel_map"), ConfigError);

  CHECK_THROWS_WITH_AS(
      load_config(write_config("unknown.json", R"({"sedd": 1})")),
      doctest::Contains("unknown key"), ConfigError);

  CHECK_THROWS_WITH_AS(
      load_config(write_config("badmode.json",
                               R"({"trigger": {"power_mode": "max"}})")),
      doctest::Contains("power_mode"), ConfigError);

  CHECK_THROWS_WITH_AS(
      load_config(write_config("badthresh.json",
                               R"({"trigger": {"threshold_fs": -1.0}})")),
      doctest::Contains("threshold_fs"), ConfigError);

  CHECK_THROWS_WITH_AS(
      load_config(write_config("badservo.json",
                               R"({"servo": {"min_pos": 10, "max_pos": 10}})")),
      doctest::Contains("servo"), ConfigError);
}

TEST_CASE("parse errors carry a line number") {
  try {
    load_config(write_config("broken.json", "{\n  \"seed\": 1,\n  oops\n}\n"));
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find(":3") != std::string::npos);
  }
  CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ConfigError);
}

TEST_CASE("clip waveforms load their file at config time") {
  const auto dir = std::filesystem::temp_directory_path() / "micdoa_cfg_test";
  std::filesystem::create_directories(dir);
  write_wav(ChannelStreams{{0.1, -0.1, 0.2, -0.2}}, 8000.0, dir / "clip.wav");

  const Config cfg = load_config(write_config("clip.json", R"({
    "scene": {"waveform": {"kind": "clip", "clip_path": "clip.wav"}}
  })"));
  CHECK(cfg.scene.waveform.clip_samples.size() == 4);
  CHECK(cfg.scene.waveform.amplitude_fs == doctest::Approx(1.0));

  CHECK_THROWS_WITH_AS(
      load_config(write_config("clip_missing.json", R"({
        "scene": {"waveform": {"kind": "clip", "clip_path": "nope.wav"}}
      })")),
      doctest::Contains("clip_path"), ConfigError);

  CHECK_THROWS_WITH_AS(
      load_config(write_config("clip_nopath.json", R"({
        "scene": {"waveform": {"kind": "clip"}}
      })")),
      doctest::Contains("clip_path"), ConfigError);
}

TEST_CASE("config echo is complete and replayable") {
  const Config cfg = load_config(write_config("echo.json", R"({"seed": 77})"));
  const nlohmann::json echo = config_echo(cfg);
  CHECK(echo.at("seed") == 77);
  CHECK(echo.at("rng") == "mt19937_64+box-muller");
  CHECK(echo.at("array").at("radius_m") == 0.15);
  CHECK(echo.at("trigger").at("power_mode") == "mean_abs");
  CHECK(echo.at("scene").at("snr_db").is_null());
  CHECK(echo.at("scene").at("waveform").at("kind") == "white_noise");
  CHECK(echo.at("channel_map") == nlohmann::json::array({0, 1, 2}));

  // Echo fields round-trip through the parser to the same effective config.
  nlohmann::json doc = echo;
  doc.erase("rng");  // echo-only field
  const Config replayed = parse_config(doc, "echo-roundtrip");
  CHECK(replayed.seed == cfg.seed);
  CHECK(replayed.array.angles_deg() == cfg.array.angles_deg());
  CHECK(replayed.trigger.threshold == cfg.trigger.threshold);
  CHECK(replayed.scene.duration_s == cfg.scene.duration_s);
  CHECK(config_echo(replayed) == echo);
}

}  // TEST_SUITE
