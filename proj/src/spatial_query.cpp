// SPDX-License-Identifier: Apache-2.0
#include "asd/spatial_query.hpp"

#include <algorithm>
#include <cmath>

namespace asd {

QueryVector QueryVector::from_pos(const SphericalPos& p, double dist_to_ref) {
  QueryVector v;
  v.sin_az = std::sin(p.azimuth);
  v.cos_az = std::cos(p.azimuth);
  v.sin_alt = std::sin(p.altitude);
  v.cos_alt = std::cos(p.altitude);
  v.width = p.angular_width;
  v.dist = dist_to_ref;
  return v;
}

SpatialQuery build_query(const SphericalPos& reference, const std::vector<IdentifiedPos>& others,
                         int max_background) {
  SpatialQuery q;
  q.reference = QueryVector::from_pos(reference, 0.0);
  struct Entry {
    double dist;
    std::int64_t id;
    const SphericalPos* pos;
  };
  std::vector<Entry> entries;
  entries.reserve(others.size());
  for (const auto& o : others) entries.push_back({spherical_distance(reference, o.pos), o.id, &o.pos});
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    if (a.dist != b.dist) return a.dist < b.dist;
    return a.id < b.id;
  });
  const size_t n = std::min<size_t>(entries.size(), max_background < 0 ? 0 : max_background);
  for (size_t i = 0; i < n; ++i)
    q.background.push_back(QueryVector::from_pos(*entries[i].pos, entries[i].dist));
  return q;
}

void roll_azimuth(QueryVector& v, double offset) {
  double az = wrap_azimuth(std::atan2(v.sin_az, v.cos_az) + offset);
  v.sin_az = std::sin(az);
  v.cos_az = std::cos(az);
}

void roll_azimuth(SpatialQuery& q, double offset) {
  roll_azimuth(q.reference, offset);
  for (auto& v : q.background) roll_azimuth(v, offset);
}

}  // namespace asd
