#pragma once

#include <optional>
#include <unordered_map>
#include <vector>

#include "mcov/minsphere.hpp"
#include "mcov/point_cloud.hpp"

namespace mcov {

/**
 * One combinatorial rhomboid: a sphere splits the sites into the set inside
 * it (x_in), the set on it (x_on), and the rest. The cell stands for the
 * family {x_in ∪ Q : Q ⊆ x_on} of covering-degree sets it spans.
 */
struct Rhomboid {
  SiteSet x_in;
  SiteSet x_on;

  int k_min() const { return static_cast<int>(x_in.size()); }
  int k_max() const { return static_cast<int>(x_in.size() + x_on.size()); }
  int cell_dim() const { return static_cast<int>(x_on.size()); }
};

/** All faces of a rhomboid: each tri-partition of x_on into kept-on /
 *  moved-in / moved-out sites, the cell itself included. */
std::vector<Rhomboid> faces(const Rhomboid& rho);

/**
 * The rhomboid tiling of a point cloud, stored as a deduplicated,
 * face-closed cell list in a canonical order (dimension, then lexicographic
 * key). Three modes:
 *  - full: every cell (top cells are all circumsphere partitions);
 *  - support(K): cells with k_min <= K, from top cells with |x_in| <= K
 *    (enough to slice every cell of depth <= K);
 *  - truncated(K): cells with k_max <= K (boundary-closed).
 */
class RhomboidTiling {
 public:
  enum class Mode { full, support, truncated };

  const PointCloud& cloud() const { return *cloud_; }
  int dim() const { return cloud_->dim(); }
  Mode mode() const { return mode_; }
  int level() const { return level_; }  // K for support/truncated; -1 for full
  uint32_t cell_count() const { return static_cast<uint32_t>(cells_.size()); }
  const Rhomboid& cell(uint32_t id) const { return cells_[id]; }
  const std::vector<Rhomboid>& cells() const { return cells_; }

  /** Id lookup by (x_in, x_on); -1 when absent. */
  int id_of(const SiteSet& x_in, const SiteSet& x_on) const;

  /** Id of the 0-cell with the given vertex set; -1 when absent. */
  int vertex_id(const SiteSet& v) const;

  /** Smallest realizing radius (squared, exact); memoized per cell. */
  const Rat& r_val(uint32_t id) const;

  /** A minimum-radius sphere realizing the cell's partition (recomputed). */
  Sphere witness_sphere(uint32_t id) const;

  friend RhomboidTiling enumerate_rhomboids(const PointCloud&, int);
  friend RhomboidTiling truncate_tiling(const RhomboidTiling&, int);

 private:
  const PointCloud* cloud_ = nullptr;
  Mode mode_ = Mode::full;
  int level_ = -1;
  std::vector<Rhomboid> cells_;
  std::unordered_map<std::vector<uint32_t>, uint32_t, U32VecHash> index_;
  mutable std::vector<Rat> r_cache_;
  mutable std::vector<char> r_known_;

  void finalize(std::vector<Rhomboid> cells);
};

/**
 * Enumerates the tiling by brute force over all (dim+1)-subsets: each
 * affinely independent subset's circumsphere partitions the remaining sites
 * into inside/outside (an "on" site is a general-position violation), which
 * yields one top cell; faces of the tops are closed over. max_k < 0 gives
 * the full tiling; max_k >= 0 gives support(max_k): subsets are discarded
 * as soon as max_k+1 sites are certified inside, and only faces with
 * k_min <= max_k are kept.
 */
RhomboidTiling enumerate_rhomboids(const PointCloud& cloud, int max_k = -1);

/** Restriction to cells with k_max <= K (source must be full, or
 *  support/truncated at a level >= K). */
RhomboidTiling truncate_tiling(const RhomboidTiling& t, int K);

/** Facet ids (codimension-1 faces: one x_on site moved in or out). */
std::vector<uint32_t> boundary_rhomboid(const RhomboidTiling& t, uint32_t id);

/** Summary counters used by the size bounds and the CLI stats command. */
struct TilingStats {
  uint32_t n = 0;
  int dim = 0;
  uint64_t total_cells = 0;
  uint64_t top_cells = 0;
  std::vector<uint64_t> cells_per_dim;    // index = cell dimension
  std::vector<uint64_t> cells_per_k_min;  // index = k_min
  std::vector<uint64_t> v_k;              // tops whose depth range strictly contains k
  int max_depth = 0;
  uint64_t size_bound = 0;  // 2 (n+1)^(dim+1)
  bool bound_ok = false;
};

TilingStats tiling_stats(const RhomboidTiling& t);

}  // namespace mcov
