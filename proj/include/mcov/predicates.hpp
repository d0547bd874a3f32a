#pragma once

#include <cstdint>

#include "mcov/point_cloud.hpp"

namespace mcov {

/**
 * Sign of the orientation determinant of dim+1 sites (indices in T).
 * Zero means the sites are affinely dependent. Uses a certified
 * floating-point screen (semi-static error bound) when the cloud's double
 * mirror is exact, and exact rational arithmetic otherwise or on a
 * near-degenerate screen result. The returned sign is always exact.
 */
int orientation_sign(const PointCloud& cloud, const uint32_t* T);

/**
 * Classification of site p against the circumsphere of the dim+1 affinely
 * independent sites in T. `orient` must be orientation_sign(cloud, T).
 * Exact result via the same screen-then-fallback scheme.
 */
SphereSide circumsphere_side(const PointCloud& cloud, const uint32_t* T, int orient, uint32_t p);

}  // namespace mcov
