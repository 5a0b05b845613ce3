#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

// Reproducibility contract: every random stream in this project is produced
// by std::mt19937_64 (bit-exact by the C++ standard) seeded through
// splitmix64, with uniform doubles taken from the top 53 bits and Gaussians
// from the basic Box-Muller transform. std::normal_distribution is avoided
// on purpose: its algorithm is implementation-defined, so identical seeds
// could give different streams on different standard libraries.

namespace micdoa {

struct RngSeed {
  std::uint64_t value = 0;
};

/// Identifier echoed into every run's config output.
inline constexpr const char* kRngAlgorithm = "mt19937_64+box-muller";

/// splitmix64 step (Vigna's public-domain mixer).
constexpr std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Engine for sub-stream `stream` of `seed`; distinct streams are
/// statistically independent and order-free, so channels and trials can be
/// generated in parallel without changing the output.
inline std::mt19937_64 make_engine(RngSeed seed, std::uint64_t stream) {
  std::uint64_t state = seed.value + stream * 0x9E3779B97F4A7C15ULL;
  return std::mt19937_64(splitmix64(state));
}

/// Uniform double in [0, 1) from the top 53 bits of one engine draw.
inline double uniform_unit(std::mt19937_64& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

/// Standard-normal sampler, Box-Muller pairwise.
class NormalSampler {
 public:
  explicit NormalSampler(std::mt19937_64 engine) : eng_(engine) {}

  double operator()() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - uniform_unit(eng_);  // (0, 1], keeps log finite
    const double u2 = uniform_unit(eng_);
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

 private:
  std::mt19937_64 eng_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace micdoa
