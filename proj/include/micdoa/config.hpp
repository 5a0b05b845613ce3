#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "micdoa/dsp.hpp"
#include "micdoa/estimator.hpp"
#include "micdoa/simulator.hpp"

namespace micdoa {

/// Everything a run needs, with units spelled out in the field names of the
/// on-disk JSON form (radius_m, threshold_fs, ...).
struct Config {
  std::uint64_t seed = 0;
  MicArray array = MicArray::default_array();
  TriggerConfig trigger;
  ServoRange servo;
  std::vector<std::size_t> channel_map;  // WAV channel index -> mic index
  std::size_t trim_per_side = 2;
  SimScene scene;
};

/// Parse + validate a JSON config file. Absent fields take the defaults
/// above; unknown keys, type mismatches and invariant violations are
/// rejected with the offending field named. Parse errors carry a line
/// number. A clip waveform's file is read here, so the returned scene is
/// self-contained.
Config load_config(const std::filesystem::path& path);

/// Same, from an in-memory JSON document ("source" names it in messages).
Config parse_config(const nlohmann::json& doc, const std::string& source);

/// Effective configuration, defaults included, plus the RNG identifier —
/// enough to replay the run exactly. Embedded in every CLI output.
nlohmann::json config_echo(const Config& cfg);

const char* to_string(PowerMode mode);
const char* to_string(WaveformKind kind);

}  // namespace micdoa
