#include "mcov/oracle.hpp"

#include <algorithm>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "mcov/common.hpp"
#include "mcov/homology.hpp"
#include "mcov/minsphere.hpp"

namespace mcov {

namespace {

/** Minimum enclosing ball radius^2 of the sites in `mask`, memoized. */
class MebCache {
 public:
  explicit MebCache(const PointCloud& cloud) : cloud_(cloud) {}

  const Rat& radius_sq(uint32_t mask) {
    auto it = memo_.find(mask);
    if (it != memo_.end()) return it->second;
    SiteSet sites;
    for (uint32_t s = 0; s < cloud_.size(); ++s)
      if (mask & (1u << s)) sites.push_back(s);
    Sphere ball = miniball(cloud_, sites);
    return memo_.emplace(mask, std::move(ball.r_sq)).first->second;
  }

 private:
  const PointCloud& cloud_;
  std::unordered_map<uint32_t, Rat> memo_;
};

uint32_t mask_of(const SiteSet& sites) {
  uint32_t m = 0;
  for (uint32_t s : sites) m |= 1u << s;
  return m;
}

}  // namespace

BigradedComplex cech_multicover_nerve(const PointCloud& cloud, int k,
                                      int max_dim, bool override_guard) {
  const uint32_t n = cloud.size();
  if (k < 1 || static_cast<uint32_t>(k) > n)
    throw InputError("cover depth must be between 1 and the number of sites");
  if (max_dim < 0) throw InputError("max_dim must be nonnegative");
  if (n > 12 && !override_guard)
    throw GuardError(
        "brute-force nerve on more than 12 sites is intractable; "
        "pass the override to force it");

  // Vertices: all k-subsets, in lexicographic order.
  const uint32_t kk = static_cast<uint32_t>(k);
  std::vector<SiteSet> vertex_sets;
  for_each_combination(n, kk, [&](const uint32_t* subset) {
    vertex_sets.emplace_back(subset, subset + kk);
    return true;
  });
  const uint32_t v = static_cast<uint32_t>(vertex_sets.size());

  // Hard cap on the total number of simplices, independent of the n-guard.
  uint64_t total = 0;
  for (int j = 0; j <= max_dim; ++j) {
    total += binomial(v, static_cast<uint32_t>(j) + 1);
    if (total > (1ull << 24))
      throw GuardError(
          "brute-force nerve would exceed the simplex budget; reduce "
          "max_dim or the number of sites");
  }

  MebCache meb(cloud);
  BigradedComplex c;
  c.tag = ModelTag::cech_oracle;
  c.ambient_dim = cloud.dim();
  c.n_sites = n;
  c.max_k = k;

  // id of a simplex by its sorted list of vertex indices
  std::unordered_map<std::vector<uint32_t>, uint32_t, U32VecHash> id_of;

  for (int j = 0; j <= max_dim; ++j) {
    const uint32_t tuple = static_cast<uint32_t>(j) + 1;
    if (tuple > v) break;
    for_each_combination(v, tuple, [&](const uint32_t* vp) {
      std::vector<uint32_t> vix(vp, vp + tuple);
      BigradedCell cell;
      cell.dim = j;
      cell.max_depth = k;
      uint32_t mask = 0;
      for (uint32_t i : vix) mask |= mask_of(vertex_sets[i]);
      cell.corners.push_back(GradeCorner{meb.radius_sq(mask), k, -1});
      // Canonical key: the flattened list of vertex site-sets, matching the
      // encoding used by the simplicial model for cross-checks.
      std::vector<SiteSet> sets;
      sets.reserve(vix.size());
      for (uint32_t i : vix) sets.push_back(vertex_sets[i]);
      cell.key = flatten_sets(sets);
      if (j > 0) {
        for (uint32_t drop = 0; drop < vix.size(); ++drop) {
          std::vector<uint32_t> face;
          face.reserve(vix.size() - 1);
          for (uint32_t i = 0; i < vix.size(); ++i)
            if (i != drop) face.push_back(vix[i]);
          auto it = id_of.find(face);
          MCOV_CHECK(it != id_of.end(), "nerve facet was not enumerated");
          cell.boundary.push_back(it->second);
        }
        std::sort(cell.boundary.begin(), cell.boundary.end());
      }
      id_of.emplace(std::move(vix), static_cast<uint32_t>(c.cells.size()));
      c.cells.push_back(std::move(cell));
      return true;
    });
  }
  return c;
}

int64_t oracle_betti(const PointCloud& cloud, const Rat& r_sq, int k, int i,
                     bool override_guard) {
  BigradedComplex nerve = cech_multicover_nerve(cloud, k, i + 1, override_guard);
  return betti_at_grade(nerve, r_sq, k, i);
}

}  // namespace mcov
