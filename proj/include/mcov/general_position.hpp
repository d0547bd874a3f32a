#pragma once

#include <optional>
#include <string>

#include "mcov/point_cloud.hpp"

namespace mcov {

/** Description of a general-position violation. */
struct GeneralPositionReport {
  std::string kind;  // "duplicate", "affinely dependent", "cospherical"
  std::vector<uint32_t> subset;
};

/**
 * Exhaustive exact verification that the cloud is in general position:
 * sites are distinct, no dim+1 sites are affinely dependent, and no dim+2
 * sites are cospherical (for dim 1 distinctness covers everything).
 * Returns the first violation found, or nullopt when the cloud passes.
 * Cost is Theta(n^(dim+2)); intended for desk-scale inputs.
 */
std::optional<GeneralPositionReport> check_general_position(const PointCloud& cloud);

/** Exact duplicate-site scan only (linear-ish; used for large clouds). */
std::optional<GeneralPositionReport> check_distinct(const PointCloud& cloud);

}  // namespace mcov
