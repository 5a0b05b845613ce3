#include "micdoa/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "micdoa/errors.hpp"
#include "micdoa/format.hpp"

namespace micdoa {

namespace {

double mean_of(const std::vector<double>& xs) {
  return std::accumulate(xs.begin(), xs.end(), 0.0) /
         static_cast<double>(xs.size());
}

double sample_stddev(const std::vector<double>& xs) {
  const double m = mean_of(xs);
  double acc = 0.0;
  for (double x : xs) acc += (x - m) * (x - m);
  return std::sqrt(acc / static_cast<double>(xs.size() - 1));
}

std::vector<double> signed_errors(const TrialBatch& batch) {
  std::vector<double> errors;
  errors.reserve(batch.trials.size());
  for (const TrialRecord& t : batch.trials) {
    if (t.outcome == TrialOutcome::kOk) {
      errors.push_back(
          angular_error_deg(t.estimate->angle_deg, batch.target_angle_deg));
    }
  }
  return errors;
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("cannot open for writing: " + path.string());
  }
  return out;
}

}  // namespace

const char* to_string(TrialOutcome outcome) {
  switch (outcome) {
    case TrialOutcome::kOk: return "ok";
    case TrialOutcome::kNoTrigger: return "no_trigger";
    case TrialOutcome::kIndeterminate: return "indeterminate";
  }
  return "unknown";
}

double precision_pct_from_deg(double precision_deg) {
  return (1.0 - precision_deg / 360.0) * 100.0;
}

TrialRecord run_single_trial(const SimScene& scene, RngSeed seed,
                             const TriggerConfig& trigger,
                             const ServoRange& servo) {
  TrialRecord rec;
  rec.seed = seed.value;
  const TrialSignals signals = synthesize_trial(scene, seed);
  try {
    auto est = process_event(signals.streams, scene.array, trigger, servo);
    if (!est) {
      rec.outcome = TrialOutcome::kNoTrigger;
    } else {
      rec.outcome = TrialOutcome::kOk;
      rec.estimate = std::move(est);
    }
  } catch (const IndeterminateDirectionError&) {
    rec.outcome = TrialOutcome::kIndeterminate;
  }
  return rec;
}

TrialBatch run_trials_reference(const SimScene& scene, std::size_t n,
                                RngSeed base_seed,
                                const TriggerConfig& trigger,
                                const ServoRange& servo) {
  if (n == 0) {
    throw std::invalid_argument("run_trials: need at least one trial");
  }
  validate_scene(scene);
  TrialBatch batch{scene.source_angle_deg, scene, trigger, {}};
  batch.trials.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    batch.trials[i] =
        run_single_trial(scene, RngSeed{base_seed.value + i}, trigger, servo);
  }
  return batch;
}

TrialBatch run_trials(const SimScene& scene, std::size_t n, RngSeed base_seed,
                      const TriggerConfig& trigger, const ServoRange& servo,
                      ExecutionMode mode) {
  if (n == 0) {
    throw std::invalid_argument("run_trials: need at least one trial");
  }
  validate_scene(scene);  // keep throws out of the parallel region
  TrialBatch batch{scene.source_angle_deg, scene, trigger, {}};
  batch.trials.resize(n);
  const bool parallel = mode == ExecutionMode::kParallel;
  const std::int64_t count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(static) if (parallel)
  for (std::int64_t i = 0; i < count; ++i) {
    batch.trials[static_cast<std::size_t>(i)] = run_single_trial(
        scene, RngSeed{base_seed.value + static_cast<std::uint64_t>(i)},
        trigger, servo);
  }
  return batch;
}

std::vector<double> trim_sorted(std::vector<double> values,
                                std::size_t trim_count_per_side) {
  if (2 * trim_count_per_side >= values.size()) {
    throw std::invalid_argument("trim_sorted: trim count leaves no data");
  }
  std::sort(values.begin(), values.end());
  return std::vector<double>(
      values.begin() + static_cast<std::ptrdiff_t>(trim_count_per_side),
      values.end() - static_cast<std::ptrdiff_t>(trim_count_per_side));
}

TrialStats compute_stats(const TrialBatch& batch,
                         std::size_t trim_count_per_side) {
  const std::vector<double> errors = signed_errors(batch);
  const std::size_t n_failed = batch.trials.size() - errors.size();
  if (errors.size() < 2) {
    throw InsufficientDataError("compute_stats: fewer than two usable trials");
  }
  const std::vector<double> kept = trim_sorted(errors, trim_count_per_side);
  if (kept.size() < 2) {
    throw InsufficientDataError(
        "compute_stats: fewer than two errors left after trimming");
  }

  TrialStats stats;
  stats.n_total = batch.trials.size();
  stats.n_trimmed = kept.size();
  stats.n_failed = n_failed;
  double abs_acc = 0.0;
  for (double e : kept) abs_acc += std::abs(e);
  stats.accuracy_deg = abs_acc / static_cast<double>(kept.size());
  stats.precision_deg = sample_stddev(kept);
  stats.precision_pct = precision_pct_from_deg(stats.precision_deg);
  return stats;
}

nlohmann::json stats_to_json(const TrialStats& stats, double target_angle_deg,
                             const nlohmann::json& config_echo) {
  return nlohmann::json{{"n_total", stats.n_total},
                        {"n_trimmed", stats.n_trimmed},
                        {"n_failed", stats.n_failed},
                        {"accuracy_deg", stats.accuracy_deg},
                        {"precision_deg", stats.precision_deg},
                        {"precision_pct", stats.precision_pct},
                        {"target_angle_deg", target_angle_deg},
                        {"config", config_echo}};
}

void export_scatter(const TrialBatch& batch, const TrialStats& stats,
                    const std::filesystem::path& csv_path,
                    const std::filesystem::path& json_path,
                    const nlohmann::json& config_echo) {
  if (batch.trials.empty()) {
    throw std::invalid_argument("export_scatter: empty batch");
  }
  constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

  std::ofstream csv = open_for_write(csv_path);
  csv << "trial,seed,angle_deg,magnitude,x,y\n";
  for (std::size_t i = 0; i < batch.trials.size(); ++i) {
    const TrialRecord& t = batch.trials[i];
    double angle = kNan, mag = kNan, x = kNan, y = kNan;
    if (t.outcome == TrialOutcome::kOk) {
      angle = t.estimate->angle_deg;
      mag = t.estimate->magnitude;
      const RectVector r = polar_to_rect({angle, mag});
      x = r.x;
      y = r.y;
    }
    csv << i << ',' << t.seed << ',' << format_double(angle) << ','
        << format_double(mag) << ',' << format_double(x) << ','
        << format_double(y) << '\n';
  }
  if (!csv.good()) throw IoError("write failed: " + csv_path.string());

  std::ofstream js = open_for_write(json_path);
  js << stats_to_json(stats, batch.target_angle_deg, config_echo).dump(2)
     << '\n';
  if (!js.good()) throw IoError("write failed: " + json_path.string());
}

std::vector<SweepRow> run_sweep(const SimScene& base_scene,
                                const std::vector<double>& angles_deg,
                                std::size_t trials_per_angle, RngSeed base_seed,
                                const TriggerConfig& trigger,
                                const ServoRange& servo,
                                std::size_t trim_count_per_side,
                                ExecutionMode mode) {
  if (angles_deg.empty()) {
    throw std::invalid_argument("run_sweep: no angles");
  }
  if (trials_per_angle == 0) {
    throw std::invalid_argument("run_sweep: need at least one trial per angle");
  }
  validate_scene(base_scene);
  constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

  std::vector<SweepRow> rows(angles_deg.size());
  const bool parallel = mode == ExecutionMode::kParallel;
  const std::int64_t count = static_cast<std::int64_t>(angles_deg.size());
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (std::int64_t k = 0; k < count; ++k) {
    SimScene scene = base_scene;
    scene.source_angle_deg =
        normalize_angle_deg(angles_deg[static_cast<std::size_t>(k)]);
    const RngSeed seed{base_seed.value +
                       static_cast<std::uint64_t>(k) * trials_per_angle};
    TrialBatch batch;
    batch.target_angle_deg = scene.source_angle_deg;
    batch.scene = scene;
    batch.trigger = trigger;
    batch.trials.resize(trials_per_angle);
    for (std::size_t i = 0; i < trials_per_angle; ++i) {
      batch.trials[i] =
          run_single_trial(scene, RngSeed{seed.value + i}, trigger, servo);
    }

    std::vector<double> errors = signed_errors(batch);
    SweepRow row;
    row.target_angle_deg = scene.source_angle_deg;
    row.n_total = trials_per_angle;
    row.n_failed = trials_per_angle - errors.size();
    if (errors.empty()) {
      row.bias_deg = kNan;
      row.accuracy_deg = kNan;
      row.precision_deg = kNan;
    } else {
      // Trim only when it leaves data; single-trial sweeps stay untrimmed.
      if (2 * trim_count_per_side < errors.size()) {
        errors = trim_sorted(std::move(errors), trim_count_per_side);
      }
      row.bias_deg = mean_of(errors);
      double abs_acc = 0.0;
      for (double e : errors) abs_acc += std::abs(e);
      row.accuracy_deg = abs_acc / static_cast<double>(errors.size());
      row.precision_deg = errors.size() >= 2 ? sample_stddev(errors) : kNan;
    }
    rows[static_cast<std::size_t>(k)] = row;
  }
  return rows;
}

void write_sweep_csv(const std::vector<SweepRow>& rows,
                     const std::filesystem::path& path) {
  std::ofstream out = open_for_write(path);
  out << "target_angle_deg,n_total,n_failed,bias_deg,accuracy_deg,precision_deg\n";
  for (const SweepRow& r : rows) {
    out << format_double(r.target_angle_deg) << ',' << r.n_total << ','
        << r.n_failed << ',' << format_double(r.bias_deg) << ','
        << format_double(r.accuracy_deg) << ','
        << format_double(r.precision_deg) << '\n';
  }
  if (!out.good()) throw IoError("write failed: " + path.string());
}

}  // namespace micdoa
