#pragma once

#include <optional>

#include "mcov/point_cloud.hpp"

namespace mcov {

/**
 * Minimum-radius sphere passing through all sites in B (1 <= |B| <= dim+1),
 * i.e. the circumsphere with center restricted to the affine hull of B.
 * Throws GeneralPositionError when B is affinely dependent.
 */
Sphere circumsphere(const PointCloud& cloud, const SiteSet& B);

/**
 * Exact solution of the constrained smallest-sphere problem: the sphere of
 * minimum radius with every x_on site on its boundary, every x_in site
 * inside or on, and every x_out site outside or on. Returns nullopt when no
 * such sphere exists. The three sets must be pairwise disjoint and |x_on|
 * must not exceed dim+1.
 *
 * Method: at the optimum the set of touching sites has size <= dim+1 (more
 * would be dim+2 cospherical sites, excluded by general position), and the
 * optimal sphere is the minimum-radius sphere through that tight set. The
 * solver enumerates candidate tight sets B with x_on ⊆ B drawn from
 * x_on ∪ x_in plus lazily discovered x_out sites: outside constraints are
 * activated only when a tentative optimum violates them (cutting-plane
 * style), which keeps the candidate pool small even for large x_out.
 */
std::optional<Sphere> min_sphere_constrained(const PointCloud& cloud, const SiteSet& x_on,
                                             const SiteSet& x_in, const SiteSet& x_out);

/** Minimum enclosing ball: min_sphere_constrained({}, points, {}). */
Sphere miniball(const PointCloud& cloud, const SiteSet& points);

}  // namespace mcov
