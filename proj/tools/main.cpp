// micdoa command line: estimate directions from recordings, synthesize
// scenes, and run batch evaluations/sweeps.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "micdoa/config.hpp"
#include "micdoa/errors.hpp"
#include "micdoa/evaluation.hpp"
#include "micdoa/format.hpp"
#include "micdoa/wav.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitNoEvent = 3;

micdoa::ChannelStreams map_to_mics(const micdoa::AudioStreams& audio,
                                   const micdoa::Config& cfg) {
  micdoa::ChannelStreams mics(cfg.array.size());
  for (std::size_t wav_ch = 0; wav_ch < cfg.channel_map.size(); ++wav_ch) {
    mics[cfg.channel_map[wav_ch]] = audio.channels[wav_ch];
  }
  return mics;
}

json estimate_to_json(const micdoa::DirectionEstimate& est) {
  return json{{"angle_deg", est.angle_deg},
              {"magnitude", est.magnitude},
              {"servo_pos", est.servo_pos},
              {"per_channel_power", est.per_channel_power}};
}

int run_estimate(const std::string& config_path, const std::string& input,
                 bool csv) {
  const micdoa::Config cfg = micdoa::load_config(config_path);
  const micdoa::AudioStreams audio =
      micdoa::read_wav(input, cfg.array.size());
  const auto mics = map_to_mics(audio, cfg);
  const auto est =
      micdoa::process_event(mics, cfg.array, cfg.trigger, cfg.servo);

  if (csv) {
    // Config echo still goes to stderr so the run stays replayable.
    std::cerr << micdoa::config_echo(cfg).dump() << '\n';
    if (!est) {
      std::cerr << "no event\n";
      return kExitNoEvent;
    }
    std::cout << "angle_deg,magnitude,servo_pos\n"
              << micdoa::format_double(est->angle_deg) << ','
              << micdoa::format_double(est->magnitude) << ','
              << est->servo_pos << '\n';
    return kExitOk;
  }

  json out{{"input", input},
           {"event", est ? estimate_to_json(*est) : json(nullptr)},
           {"config", micdoa::config_echo(cfg)}};
  std::cout << out.dump(2) << '\n';
  if (!est) {
    std::cerr << "no event\n";
    return kExitNoEvent;
  }
  return kExitOk;
}

int run_simulate(const std::string& config_path, const std::string& out_wav,
                 std::uint64_t seed, bool seed_given) {
  micdoa::Config cfg = micdoa::load_config(config_path);
  if (seed_given) cfg.seed = seed;

  const micdoa::TrialSignals trial =
      micdoa::synthesize_trial(cfg.scene, micdoa::RngSeed{cfg.seed});

  // WAV channel i carries the microphone channel_map[i] maps it to, so a
  // later estimate run reconstructs the original order.
  micdoa::ChannelStreams wav_channels(cfg.array.size());
  for (std::size_t wav_ch = 0; wav_ch < cfg.channel_map.size(); ++wav_ch) {
    wav_channels[wav_ch] = trial.streams[cfg.channel_map[wav_ch]];
  }
  const std::size_t saturated =
      micdoa::write_wav(wav_channels, trial.sample_rate_hz, out_wav);
  if (saturated > 0) {
    std::cerr << "warning: " << saturated << " samples saturated\n";
  }

  json sidecar{{"true_angle_deg", trial.true_angle_deg},
               {"seed", cfg.seed},
               {"wav", out_wav},
               {"saturated_samples", saturated},
               {"config", micdoa::config_echo(cfg)}};
  std::filesystem::path sidecar_path(out_wav);
  sidecar_path.replace_extension(".json");
  std::ofstream side(sidecar_path, std::ios::binary);
  if (!side) throw micdoa::IoError("cannot write " + sidecar_path.string());
  side << sidecar.dump(2) << '\n';
  std::cout << sidecar.dump(2) << '\n';
  return kExitOk;
}

int run_evaluate(const std::string& config_path, double angle, bool angle_given,
                 std::size_t trials, std::uint64_t seed, bool seed_given,
                 const std::string& out_dir, bool serial) {
  micdoa::Config cfg = micdoa::load_config(config_path);
  if (angle_given) {
    cfg.scene.source_angle_deg = micdoa::normalize_angle_deg(angle);
  }
  if (seed_given) cfg.seed = seed;

  const auto mode = serial ? micdoa::ExecutionMode::kSerial
                           : micdoa::ExecutionMode::kParallel;
  const micdoa::TrialBatch batch =
      micdoa::run_trials(cfg.scene, trials, micdoa::RngSeed{cfg.seed},
                         cfg.trigger, cfg.servo, mode);
  const micdoa::TrialStats stats =
      micdoa::compute_stats(batch, cfg.trim_per_side);

  std::filesystem::create_directories(out_dir);
  const std::filesystem::path dir(out_dir);
  micdoa::export_scatter(batch, stats, dir / "scatter.csv", dir / "stats.json",
                         micdoa::config_echo(cfg));
  std::cout << micdoa::stats_to_json(stats, batch.target_angle_deg,
                                     micdoa::config_echo(cfg))
                   .dump(2)
            << '\n';
  return kExitOk;
}

std::vector<double> parse_angle_spec(const std::string& spec) {
  std::vector<double> angles;
  if (spec.find(':') != std::string::npos) {
    // start:stop:step, stop exclusive
    double start = 0, stop = 0, step = 0;
    if (std::sscanf(spec.c_str(), "%lf:%lf:%lf", &start, &stop, &step) != 3 ||
        !(step > 0.0) || stop <= start) {
      throw micdoa::ConfigError("--angles: expected start:stop:step with step > 0");
    }
    for (double a = start; a < stop; a += step) angles.push_back(a);
  } else {
    std::size_t pos = 0;
    while (pos < spec.size()) {
      std::size_t next = spec.find(',', pos);
      if (next == std::string::npos) next = spec.size();
      try {
        angles.push_back(std::stod(spec.substr(pos, next - pos)));
      } catch (const std::exception&) {
        throw micdoa::ConfigError("--angles: bad angle list");
      }
      pos = next + 1;
    }
  }
  if (angles.empty()) throw micdoa::ConfigError("--angles: empty angle set");
  return angles;
}

int run_sweep(const std::string& config_path, const std::string& angle_spec,
              std::size_t trials, std::uint64_t seed, bool seed_given,
              const std::string& out_dir, bool serial) {
  micdoa::Config cfg = micdoa::load_config(config_path);
  if (seed_given) cfg.seed = seed;
  const std::vector<double> angles = parse_angle_spec(angle_spec);

  const auto mode = serial ? micdoa::ExecutionMode::kSerial
                           : micdoa::ExecutionMode::kParallel;
  const auto rows =
      micdoa::run_sweep(cfg.scene, angles, trials, micdoa::RngSeed{cfg.seed},
                        cfg.trigger, cfg.servo, cfg.trim_per_side, mode);

  std::filesystem::create_directories(out_dir);
  const std::filesystem::path csv = std::filesystem::path(out_dir) / "sweep.csv";
  micdoa::write_sweep_csv(rows, csv);
  json out{{"n_angles", rows.size()},
           {"trials_per_angle", trials},
           {"csv", csv.string()},
           {"config", micdoa::config_echo(cfg)}};
  std::cout << out.dump(2) << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Intensity-vector sound direction estimation"};
  app.require_subcommand(1);

  std::string config_path, input, out_path, angle_spec;
  double angle = 0.0;
  std::size_t trials = 30;
  std::uint64_t seed = 0;
  bool csv = false, json_flag = false, serial = false;

  CLI::App* est = app.add_subcommand(
      "estimate", "Estimate direction from a multichannel WAV recording");
  est->add_option("--input", input, "input WAV file")->required();
  est->add_option("--config", config_path, "config file")->required();
  est->add_flag("--json", json_flag, "JSON output (default)");
  est->add_flag("--csv", csv, "CSV output");

  CLI::App* sim = app.add_subcommand(
      "simulate", "Synthesize a scene into a WAV file plus sidecar JSON");
  sim->add_option("--config", config_path, "config file")->required();
  sim->add_option("--out", out_path, "output WAV path")->required();
  CLI::Option* sim_seed = sim->add_option("--seed", seed, "trial seed");

  CLI::App* eval = app.add_subcommand(
      "evaluate", "Run repeated simulated trials and report statistics");
  eval->add_option("--config", config_path, "config file")->required();
  CLI::Option* eval_angle =
      eval->add_option("--angle", angle, "target bearing, degrees");
  eval->add_option("--trials", trials, "trial count (default 30)");
  CLI::Option* eval_seed = eval->add_option("--seed", seed, "base seed");
  eval->add_option("--out", out_path, "output directory")->required();
  eval->add_flag("--serial", serial, "disable trial parallelism");

  CLI::App* sweep = app.add_subcommand(
      "sweep", "Evaluate across many bearings, emit per-angle stats CSV");
  sweep->add_option("--config", config_path, "config file")->required();
  sweep->add_option("--angles", angle_spec,
                    "comma list or start:stop:step (stop exclusive)")
      ->required();
  sweep->add_option("--trials", trials, "trials per angle")->default_val(1);
  CLI::Option* sweep_seed = sweep->add_option("--seed", seed, "base seed");
  sweep->add_option("--out", out_path, "output directory")->required();
  sweep->add_flag("--serial", serial, "disable angle parallelism");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*est) return run_estimate(config_path, input, csv);
    if (*sim) return run_simulate(config_path, out_path, seed, !sim_seed->empty());
    if (*eval) {
      return run_evaluate(config_path, angle, !eval_angle->empty(), trials,
                          seed, !eval_seed->empty(), out_path, serial);
    }
    if (*sweep) {
      return run_sweep(config_path, angle_spec, trials, seed,
                       !sweep_seed->empty(), out_path, serial);
    }
  } catch (const micdoa::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const micdoa::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const micdoa::IndeterminateDirectionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNoEvent;
  } catch (const micdoa::InsufficientDataError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNoEvent;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
