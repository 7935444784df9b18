// SPDX-License-Identifier: Apache-2.0
#include "asd/geometry.hpp"

#include <cmath>

namespace asd {

void ArrayGeometry::validate() const {
  if (ring_radius_m <= 0.0) throw std::invalid_argument("ring_radius_m must be > 0");
  if (ring_count < 2) throw std::invalid_argument("ring_count must be >= 2");
  if (speed_of_sound <= 0.0) throw std::invalid_argument("speed_of_sound must be > 0");
}

double wrap_azimuth(double a) {
  double r = std::fmod(a, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  return r;
}

SphericalPos box_to_spherical(const PixelBox& box, const PanoramaDims& pano) {
  if (box.w <= 0.0 || box.h <= 0.0) throw std::invalid_argument("degenerate box");
  // x may wrap around the seam; y must be fully inside.
  if (box.y < 0.0 || box.y + box.h > pano.height_px)
    throw std::invalid_argument("box outside panorama (vertical)");
  if (box.x < -pano.width_px || box.x > 2.0 * pano.width_px || box.w > pano.width_px)
    throw std::invalid_argument("box outside panorama (horizontal)");
  SphericalPos p;
  double cx = box.cx();
  if (cx < 0.0) cx += pano.width_px;
  if (cx >= pano.width_px) cx -= pano.width_px;
  p.azimuth = wrap_azimuth(cx * kTwoPi / pano.width_px);
  // pixel y grows downward, altitude grows upward
  double frac = box.cy() / pano.height_px;
  p.altitude = pano.alt_max - frac * (pano.alt_max - pano.alt_min);
  p.angular_width = box.w * kTwoPi / pano.width_px;
  return p;
}

PixelBox spherical_to_box(const SphericalPos& pos, const PanoramaDims& pano, double aspect) {
  PixelBox b;
  b.w = pos.angular_width * pano.width_px / kTwoPi;
  b.h = b.w * aspect;
  double cx = wrap_azimuth(pos.azimuth) * pano.width_px / kTwoPi;
  double cy = (pano.alt_max - pos.altitude) / (pano.alt_max - pano.alt_min) * pano.height_px;
  b.x = cx - 0.5 * b.w;
  b.y = cy - 0.5 * b.h;
  return b;
}

double spherical_distance(const SphericalPos& a, const SphericalPos& b) {
  // haversine form, stable near 0 and pi
  double dphi = b.altitude - a.altitude;
  double dlam = b.azimuth - a.azimuth;
  double sp = std::sin(0.5 * dphi);
  double sl = std::sin(0.5 * dlam);
  double h = sp * sp + std::cos(a.altitude) * std::cos(b.altitude) * sl * sl;
  h = std::fmin(1.0, std::fmax(0.0, h));
  return 2.0 * std::asin(std::sqrt(h));
}

std::vector<std::array<double, 3>> mic_positions(const ArrayGeometry& g) {
  g.validate();
  std::vector<std::array<double, 3>> out;
  out.reserve(static_cast<size_t>(g.mic_count()));
  for (int m = 0; m < g.ring_count; ++m) {
    double az = kTwoPi * m / g.ring_count;
    out.push_back({g.ring_radius_m * std::cos(az), g.ring_radius_m * std::sin(az), 0.0});
  }
  if (g.has_center_mic) out.push_back({0.0, 0.0, 0.0});
  return out;
}

std::array<double, 3> unit_direction(double azimuth, double altitude) {
  double ca = std::cos(altitude);
  return {ca * std::cos(azimuth), ca * std::sin(azimuth), std::sin(altitude)};
}

}  // namespace asd
