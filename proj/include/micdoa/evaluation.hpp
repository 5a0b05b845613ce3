#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include <json.hpp>

#include "micdoa/estimator.hpp"
#include "micdoa/simulator.hpp"

namespace micdoa {

enum class ExecutionMode { kSerial, kParallel };

enum class TrialOutcome { kOk, kNoTrigger, kIndeterminate };

const char* to_string(TrialOutcome outcome);

struct TrialRecord {
  std::uint64_t seed = 0;
  TrialOutcome outcome = TrialOutcome::kNoTrigger;
  std::optional<DirectionEstimate> estimate;
};

struct TrialBatch {
  double target_angle_deg = 0.0;
  SimScene scene;
  TriggerConfig trigger;
  std::vector<TrialRecord> trials;
};

struct TrialStats {
  std::size_t n_total = 0;
  std::size_t n_trimmed = 0;
  std::size_t n_failed = 0;
  double accuracy_deg = 0.0;   // mean |wrapped error| over the trimmed set
  double precision_deg = 0.0;  // sample std dev of signed wrapped errors
  double precision_pct = 0.0;  // (1 - precision_deg/360) * 100
};

double precision_pct_from_deg(double precision_deg);

/// One simulated trial through the full pipeline. Failures (no trigger,
/// indeterminate direction) come back as outcomes, never as exceptions.
TrialRecord run_single_trial(const SimScene& scene, RngSeed seed,
                             const TriggerConfig& trigger,
                             const ServoRange& servo = {});

/// Plain sequential loop over seeds base_seed .. base_seed+n-1. Kept as the
/// reference implementation the parallel kernel is checked against.
TrialBatch run_trials_reference(const SimScene& scene, std::size_t n,
                                RngSeed base_seed,
                                const TriggerConfig& trigger,
                                const ServoRange& servo = {});

/// OpenMP kernel over independent trials. Every trial derives its own RNG
/// streams from its seed, and records land in a pre-sized slot, so the batch
/// is bit-identical to run_trials_reference for any thread count.
TrialBatch run_trials(const SimScene& scene, std::size_t n, RngSeed base_seed,
                      const TriggerConfig& trigger,
                      const ServoRange& servo = {},
                      ExecutionMode mode = ExecutionMode::kParallel);

/// Sort values ascending and drop trim_count_per_side from each end.
/// Throws std::invalid_argument when 2 * trim_count_per_side >= values.size().
std::vector<double> trim_sorted(std::vector<double> values,
                                std::size_t trim_count_per_side);

/// Wrapped-error statistics over the batch's successful trials, after
/// symmetric trimming of the sorted signed errors. Failed trials are counted
/// in n_failed and excluded. Throws InsufficientDataError when fewer than two
/// trimmed errors remain, std::invalid_argument on over-trimming.
TrialStats compute_stats(const TrialBatch& batch,
                         std::size_t trim_count_per_side);

/// Per-trial scatter rows (trial,seed,angle_deg,magnitude,x,y) as CSV plus a
/// JSON stats summary alongside. Failed trials keep their row with nan
/// fields. Throws std::invalid_argument on an empty batch, IoError when a
/// path is unwritable.
void export_scatter(const TrialBatch& batch, const TrialStats& stats,
                    const std::filesystem::path& csv_path,
                    const std::filesystem::path& json_path,
                    const nlohmann::json& config_echo);

nlohmann::json stats_to_json(const TrialStats& stats, double target_angle_deg,
                             const nlohmann::json& config_echo);

struct SweepRow {
  double target_angle_deg = 0.0;
  std::size_t n_total = 0;
  std::size_t n_failed = 0;
  double bias_deg = 0.0;       // mean signed wrapped error
  double accuracy_deg = 0.0;   // mean |wrapped error|
  double precision_deg = 0.0;  // NaN when fewer than two usable trials
};

/// Evaluate a batch per bearing; characterizes the estimator's bias across
/// the circle. Angle k draws seeds base_seed + k*trials_per_angle onward.
/// Trimming applies per angle when enough successful trials exist.
std::vector<SweepRow> run_sweep(const SimScene& base_scene,
                                const std::vector<double>& angles_deg,
                                std::size_t trials_per_angle, RngSeed base_seed,
                                const TriggerConfig& trigger,
                                const ServoRange& servo,
                                std::size_t trim_count_per_side,
                                ExecutionMode mode = ExecutionMode::kParallel);

void write_sweep_csv(const std::vector<SweepRow>& rows,
                     const std::filesystem::path& path);

}  // namespace micdoa
