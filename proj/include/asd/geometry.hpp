// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace asd {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Circular microphone array on the horizontal plane, ring mics evenly
/// spaced, optional extra mic at the center.
struct ArrayGeometry {
  double ring_radius_m = 0.0425;
  int ring_count = 6;
  bool has_center_mic = true;
  double speed_of_sound = 343.0;

  int mic_count() const { return ring_count + (has_center_mic ? 1 : 0); }
  void validate() const;
};

/// Direction + angular size of a head on the unit sphere.
/// azimuth in [0, 2pi), altitude in [-pi/2, pi/2], width > 0.
struct SphericalPos {
  double azimuth = 0.0;
  double altitude = 0.0;
  double angular_width = 0.1;
};

struct PixelBox {
  double x = 0.0;  // left, panorama px (may wrap past the right edge)
  double y = 0.0;  // top
  double w = 0.0;
  double h = 0.0;

  double cx() const { return x + 0.5 * w; }
  double cy() const { return y + 0.5 * h; }
};

/// Equirectangular panorama: width maps linearly to [0, 2pi) azimuth,
/// height linearly to [alt_min, alt_max].
struct PanoramaDims {
  int width_px = 10000;
  int height_px = 1666;
  double alt_min = -kPi / 6.0;
  double alt_max = kPi / 6.0;

  double px_per_rad_x() const { return width_px / kTwoPi; }
  double px_per_rad_y() const { return height_px / (alt_max - alt_min); }
};

struct HeadObservation {
  std::int64_t tracklet_id = -1;
  std::int64_t frame_index = 0;
  PixelBox box;
  SphericalPos pos;
};

/// Wraps an angle into [0, 2pi).
double wrap_azimuth(double a);

/// Maps a panorama box to the direction of its center; angular width is the
/// box width scaled by the panorama's horizontal px/rad.
/// Throws std::invalid_argument when the box lies outside the panorama.
SphericalPos box_to_spherical(const PixelBox& box, const PanoramaDims& pano);

/// Inverse of box_to_spherical for a head of given angular size; aspect is
/// box height / box width.
PixelBox spherical_to_box(const SphericalPos& pos, const PanoramaDims& pano,
                          double aspect = 1.3);

/// Great-circle central angle between two directions, in [0, pi].
double spherical_distance(const SphericalPos& a, const SphericalPos& b);

/// Ring mic positions by increasing azimuth, center mic (if any) last.
std::vector<std::array<double, 3>> mic_positions(const ArrayGeometry& g);

/// Unit vector pointing from the array origin toward (azimuth, altitude).
std::array<double, 3> unit_direction(double azimuth, double altitude);

}  // namespace asd
