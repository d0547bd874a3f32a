#include "mcov/general_position.hpp"

#include <unordered_map>

#include "mcov/predicates.hpp"

namespace mcov {

std::optional<GeneralPositionReport> check_distinct(const PointCloud& cloud) {
  // Group by hashed double mirror, compare exactly within buckets.
  std::unordered_map<uint64_t, std::vector<uint32_t>> buckets;
  for (uint32_t i = 0; i < cloud.size(); ++i) {
    uint64_t h = 1469598103934665603ull;
    for (int c = 0; c < cloud.dim(); ++c) {
      double v = cloud.approx(i, c);
      uint64_t bits;
      static_assert(sizeof(bits) == sizeof(v));
      __builtin_memcpy(&bits, &v, sizeof(bits));
      h = (h ^ bits) * 1099511628211ull;
    }
    auto& bucket = buckets[h];
    for (uint32_t j : bucket) {
      bool equal = true;
      for (int c = 0; c < cloud.dim(); ++c)
        if (cloud.site(i)[c] != cloud.site(j)[c]) {
          equal = false;
          break;
        }
      if (equal) return GeneralPositionReport{"duplicate", {j, i}};
    }
    bucket.push_back(i);
  }
  return std::nullopt;
}

std::optional<GeneralPositionReport> check_general_position(const PointCloud& cloud) {
  const uint32_t n = cloud.size();
  const int dim = cloud.dim();
  if (n < static_cast<uint32_t>(dim) + 1)
    return GeneralPositionReport{"too few sites", {}};
  if (auto dup = check_distinct(cloud)) return dup;
  if (dim == 1) return std::nullopt;  // distinctness is the whole condition

  std::optional<GeneralPositionReport> found;
  for_each_combination(n, dim + 1, [&](const uint32_t* T) {
    if (orientation_sign(cloud, T) == 0) {
      found = GeneralPositionReport{"affinely dependent",
                                    std::vector<uint32_t>(T, T + dim + 1)};
      return false;
    }
    return true;
  });
  if (found) return found;

  // Every (dim+2)-subset is covered once: T = its dim+1 smallest members,
  // p = its maximum.
  for_each_combination(n, dim + 1, [&](const uint32_t* T) {
    int orient = orientation_sign(cloud, T);
    for (uint32_t p = T[dim] + 1; p < n; ++p) {
      if (circumsphere_side(cloud, T, orient, p) == SphereSide::on) {
        std::vector<uint32_t> subset(T, T + dim + 1);
        subset.push_back(p);
        found = GeneralPositionReport{"cospherical", subset};
        return false;
      }
    }
    return true;
  });
  return found;
}

}  // namespace mcov
