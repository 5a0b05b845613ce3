#pragma once

#include <numbers>
#include <span>
#include <vector>

namespace micdoa {

constexpr double deg_to_rad(double deg) {
  return deg * (std::numbers::pi / 180.0);
}

constexpr double rad_to_deg(double rad) {
  return rad * (180.0 / std::numbers::pi);
}

/// Bearing/magnitude pair. Angle in degrees, magnitude in signal-power units.
struct PolarVector {
  double angle_deg = 0.0;
  double magnitude = 0.0;
};

struct RectVector {
  double x = 0.0;
  double y = 0.0;
};

/// Planar microphone layout: bearings on a circle of fixed radius around the
/// array center. Bearings are degrees counterclockwise from the +x axis.
class MicArray {
 public:
  /// Requires >= 2 microphones, pairwise-distinct bearings in [0, 360) and a
  /// positive radius; throws std::invalid_argument otherwise.
  MicArray(std::vector<double> angles_deg, double radius_m);

  /// Three microphones at 0/120/240 degrees, 0.15 m from the center.
  static MicArray default_array();

  std::size_t size() const { return angles_deg_.size(); }
  double angle_deg(std::size_t i) const { return angles_deg_[i]; }
  const std::vector<double>& angles_deg() const { return angles_deg_; }
  double radius_m() const { return radius_m_; }

 private:
  std::vector<double> angles_deg_;
  double radius_m_;
};

/// Wrap an angle to [0, 360).
double normalize_angle_deg(double angle_deg);

/// Minimal signed difference a - b, wrapped to (-180, 180].
double angular_error_deg(double a_deg, double b_deg);

/// (r cos θ, r sin θ) with θ in degrees.
RectVector polar_to_rect(const PolarVector& v);

/// Component-wise sum; throws std::invalid_argument on an empty list.
RectVector sum_vectors(std::span<const RectVector> vs);

/// Euclidean norm plus atan2 bearing normalized to [0, 360).
/// Throws IndeterminateDirectionError for the zero vector.
PolarVector rect_to_polar(const RectVector& v);

/// Raw atan2 bearing in (-180, 180], kept for callers that want the signed
/// form rather than the reporting range.
double bearing_signed_deg(const RectVector& v);

}  // namespace micdoa
