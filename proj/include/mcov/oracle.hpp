#pragma once

#include "mcov/bigraded.hpp"
#include "mcov/point_cloud.hpp"

namespace mcov {

/**
 * Brute-force nerve of the depth-k cover by intersections of k balls.
 *
 * Vertices are ALL k-element subsets of the sites; the critical radius of a
 * vertex is the minimum enclosing ball radius of its subset, and the
 * critical radius of a j-simplex (a set of j+1 vertices) is the minimum
 * enclosing ball radius of the union of its vertex subsets. Simplices are
 * enumerated up to dimension max_dim.
 *
 * This is an independent reference model: it never looks at any tiling and
 * is deliberately exhaustive. Complexity explodes quickly, so inputs with
 * n > 12 sites are rejected unless override_guard is set, and the total
 * simplex count is capped regardless.
 *
 * The result is a one-parameter complex embedded at depth k (every cell
 * carries the single grade (critical radius, k)), so the shared Betti /
 * barcode routines apply directly.
 */
BigradedComplex cech_multicover_nerve(const PointCloud& cloud, int k,
                                      int max_dim,
                                      bool override_guard = false);

/**
 * beta_i of the depth-k cover at radius^2 r_sq, via the brute-force nerve.
 * Builds the nerve up to dimension i+1 (the minimum needed for beta_i).
 */
int64_t oracle_betti(const PointCloud& cloud, const Rat& r_sq, int k, int i,
                     bool override_guard = false);

}  // namespace mcov
