#include "micdoa/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "micdoa/errors.hpp"

namespace micdoa {

MicArray::MicArray(std::vector<double> angles_deg, double radius_m)
    : angles_deg_(std::move(angles_deg)), radius_m_(radius_m) {
  if (angles_deg_.size() < 2) {
    throw std::invalid_argument("MicArray: need at least 2 microphones");
  }
  if (!(radius_m_ > 0.0) || !std::isfinite(radius_m_)) {
    throw std::invalid_argument("MicArray: radius_m must be positive");
  }
  for (double a : angles_deg_) {
    if (!std::isfinite(a) || a < 0.0 || a >= 360.0) {
      throw std::invalid_argument("MicArray: bearings must lie in [0, 360)");
    }
  }
  std::vector<double> sorted = angles_deg_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("MicArray: bearings must be pairwise distinct");
  }
}

MicArray MicArray::default_array() {
  return MicArray({0.0, 120.0, 240.0}, 0.15);
}

double normalize_angle_deg(double angle_deg) {
  double r = std::fmod(angle_deg, 360.0);
  if (r < 0.0) r += 360.0;
  if (r >= 360.0) r = 0.0;  // fmod(-1e-17, 360) + 360 rounds to 360
  return r;
}

double angular_error_deg(double a_deg, double b_deg) {
  double d = std::fmod(a_deg - b_deg, 360.0);
  if (d <= -180.0) {
    d += 360.0;
  } else if (d > 180.0) {
    d -= 360.0;
  }
  return d;
}

RectVector polar_to_rect(const PolarVector& v) {
  const double rad = deg_to_rad(v.angle_deg);
  return {v.magnitude * std::cos(rad), v.magnitude * std::sin(rad)};
}

RectVector sum_vectors(std::span<const RectVector> vs) {
  if (vs.empty()) {
    throw std::invalid_argument("sum_vectors: no contributing channels");
  }
  RectVector sum;
  for (const RectVector& v : vs) {
    sum.x += v.x;
    sum.y += v.y;
  }
  return sum;
}

double bearing_signed_deg(const RectVector& v) {
  return rad_to_deg(std::atan2(v.y, v.x));
}

PolarVector rect_to_polar(const RectVector& v) {
  const double mag = std::hypot(v.x, v.y);
  if (mag == 0.0) {
    throw IndeterminateDirectionError(
        "rect_to_polar: zero-magnitude vector has no direction");
  }
  return {normalize_angle_deg(bearing_signed_deg(v)), mag};
}

}  // namespace micdoa
