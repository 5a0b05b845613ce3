// Benchmark: serial reference trial loop vs the OpenMP kernel, with an
// equality check so speed never costs determinism.

#include <chrono>
#include <cstdio>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "micdoa/evaluation.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

bool same_batch(const micdoa::TrialBatch& a, const micdoa::TrialBatch& b) {
  if (a.trials.size() != b.trials.size()) return false;
  for (std::size_t i = 0; i < a.trials.size(); ++i) {
    const auto& x = a.trials[i];
    const auto& y = b.trials[i];
    if (x.seed != y.seed || x.outcome != y.outcome) return false;
    if (x.estimate.has_value() != y.estimate.has_value()) return false;
    if (x.estimate &&
        (x.estimate->angle_deg != y.estimate->angle_deg ||
         x.estimate->magnitude != y.estimate->magnitude ||
         x.estimate->servo_pos != y.estimate->servo_pos)) {
      return false;
    }
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  std::size_t trials = 256;
  double angle = 75.0;
  for (int i = 1; i + 1 < argc; i += 2) {
    const std::string flag = argv[i];
    if (flag == "--trials") trials = std::stoul(argv[i + 1]);
    if (flag == "--angle") angle = std::stod(argv[i + 1]);
  }

  micdoa::SimScene scene;
  scene.source_angle_deg = micdoa::normalize_angle_deg(angle);
  scene.snr_db = 10.0;
  micdoa::TriggerConfig trigger;
  const micdoa::RngSeed seed{20240001};

#ifdef _OPENMP
  const int threads = omp_get_max_threads();
#else
  const int threads = 1;
#endif

  auto t0 = Clock::now();
  const auto serial =
      micdoa::run_trials_reference(scene, trials, seed, trigger);
  const double t_serial = seconds_since(t0);

  t0 = Clock::now();
  const auto parallel = micdoa::run_trials(scene, trials, seed, trigger, {},
                                           micdoa::ExecutionMode::kParallel);
  const double t_parallel = seconds_since(t0);

  const bool identical = same_batch(serial, parallel);
  std::printf("trials            %zu\n", trials);
  std::printf("threads           %d\n", threads);
  std::printf("serial reference  %8.3f s  (%7.2f trials/s)\n", t_serial,
              trials / t_serial);
  std::printf("openmp kernel     %8.3f s  (%7.2f trials/s)\n", t_parallel,
              trials / t_parallel);
  std::printf("speedup           %8.2fx\n", t_serial / t_parallel);
  std::printf("outputs identical %s\n", identical ? "yes" : "NO");
  return identical ? 0 : 1;
}
