// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "asd/geometry.hpp"

namespace asd {

/// (sin az, cos az, sin alt, cos alt, angular width, spherical distance to
/// the reference head). The reference head's own vector has distance 0.
struct QueryVector {
  double sin_az = 0.0;
  double cos_az = 1.0;
  double sin_alt = 0.0;
  double cos_alt = 1.0;
  double width = 0.0;
  double dist = 0.0;

  static QueryVector from_pos(const SphericalPos& p, double dist_to_ref);
};

struct SpatialQuery {
  QueryVector reference;
  std::vector<QueryVector> background;  // ascending distance, at most N entries
};

struct IdentifiedPos {
  std::int64_t id = 0;
  SphericalPos pos;
};

/// Background heads sorted ascending by spherical distance to the reference
/// (ties by id), truncated to the N nearest.
SpatialQuery build_query(const SphericalPos& reference, const std::vector<IdentifiedPos>& others,
                         int max_background);

/// Replaces (sin az, cos az) with values for azimuth+offset; everything else,
/// including the relative distance, is unchanged.
void roll_azimuth(QueryVector& v, double offset);
void roll_azimuth(SpatialQuery& q, double offset);

}  // namespace asd
