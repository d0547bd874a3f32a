#pragma once

#include <algorithm>
#include <optional>
#include <unordered_map>
#include <vector>

#include "mcov/rhomboid.hpp"

namespace mcov {

/**
 * Cells of the sliced tiling: the rhomboid tiling cut along every integer
 * depth. An m-rhomboid contributes its vertices (depth-k corners), one slab
 * per unit depth interval [k, k+1] of its range (dimension m), and one slice
 * per strictly interior integer depth (dimension m-1). Endpoint slices
 * coincide with faces of the rhomboid and are not emitted separately.
 */
enum class SlicedKind : uint8_t { vertex, slab, slice };

struct SlicedCell {
  SlicedKind kind = SlicedKind::vertex;
  uint32_t parent = 0;  // rhomboid id in the source tiling
  int k = 0;            // vertex: its depth; slab: lower depth of [k,k+1]; slice: its depth
  int dim = 0;          // geometric dimension
  std::vector<SiteSet> verts;  // sorted vertex sets (each = x_in ∪ Q)

  /** Grade component along the depth axis: the minimum vertex depth. */
  int k_val() const {
    size_t k = verts.front().size();
    for (const SiteSet& v : verts) k = std::min(k, v.size());
    return static_cast<int>(k);
  }
  /** Largest vertex depth; the cell survives truncation to K iff <= K. */
  int max_depth() const {
    size_t k = 0;
    for (const SiteSet& v : verts) k = std::max(k, v.size());
    return static_cast<int>(k);
  }
};

class SlicedTiling {
 public:
  const RhomboidTiling& source() const { return *source_; }
  int dim() const { return source_->dim(); }
  int max_k() const { return max_k_; }  // own-depth cap; -1 = unbounded
  uint32_t cell_count() const { return static_cast<uint32_t>(cells_.size()); }
  const SlicedCell& cell(uint32_t id) const { return cells_[id]; }
  const std::vector<SlicedCell>& cells() const { return cells_; }

  /** Id lookup by vertex-set list (must be sorted); -1 when absent. */
  int id_of_verts(const std::vector<SiteSet>& verts) const;

  /** Id lookup by role (kind, parent rhomboid, depth); -1 when absent. */
  int id_of_role(SlicedKind kind, uint32_t parent, int k) const;

  /** Filtration radius (squared), inherited from the parent rhomboid. */
  const Rat& r_val(uint32_t id) const { return source_->r_val(cells_[id].parent); }

  friend SlicedTiling slice_tiling(const RhomboidTiling& t, int cap);

 private:
  const RhomboidTiling* source_ = nullptr;
  int max_k_ = -1;
  std::vector<SlicedCell> cells_;
  std::unordered_map<std::vector<uint32_t>, uint32_t, U32VecHash> by_verts_;
  std::unordered_map<uint64_t, uint32_t> by_role_;
};

/**
 * Slices a full or support-mode tiling at every integer depth up to `cap`
 * (cap = -1 means the tiling's own reach: level K for a support tiling,
 * unbounded for a full one). Only cells whose vertices all have depth
 * <= cap are emitted, so the result is the depth-truncated sliced tiling
 * regardless of how deep the source happens to be. Vertex-set keys are
 * globally unique (checked).
 */
SlicedTiling slice_tiling(const RhomboidTiling& t, int cap = -1);
// The result refers back to its source tiling, so temporaries are rejected.
SlicedTiling slice_tiling(RhomboidTiling&& t, int cap = -1) = delete;

/**
 * Facets of a sliced cell of dimension >= 1, deduplicated. Derived from the
 * coordinate model of the parent rhomboid (unit cube [0,1]^m, depth = k_min
 * + sum of coordinates):
 *  - Slab(ρ,[k,k+1]): Slab(σ,[k,k+1]) for each codim-1 face σ of ρ whose
 *    depth range contains [k,k+1]; Slice(ρ,k) when k > k_min(ρ); and
 *    Slice(ρ,k+1) when k+1 < k_max(ρ). A slab of an edge has its two
 *    endpoint vertices instead.
 *  - Slice(ρ,k): the depth-k cell of each codim-1 face σ: Slice(σ,k) when
 *    k is strictly inside σ's range, and the depth-k Vertex of σ when k is
 *    an endpoint of σ's range and that vertex has dimension exactly one
 *    less than the slice (i.e. ρ is 2-dimensional).
 */
std::vector<uint32_t> boundary_sliced(const SlicedTiling& s, uint32_t id);

/**
 * The order-k mosaic at radius r (squared), nullopt = unbounded: all cells
 * lying in the depth-k hyperplane with r_val <= r, i.e. depth-k vertices
 * and depth-k slices. Requires 1 <= k <= n (and k within the support cap).
 */
std::vector<uint32_t> mosaic(const SlicedTiling& s, int k, const std::optional<Rat>& r_sq_max);

}  // namespace mcov
