#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mcov/sliced.hpp"

namespace mcov {

/**
 * A minimal grade at which a cell is present. The bifiltration order is
 * (r,k) <= (r',k') iff r <= r' and k >= k': complexes grow as the radius
 * increases and as the required covering depth decreases.
 */
struct GradeCorner {
  Rat r_sq;           // squared radius, exact
  int k = 0;          // covering depth
  int snap_index = -1;  // grid index once snap_grades has run, else -1
};

enum class ModelTag { rhomb, srhomb, sdel, cech_oracle };

std::string model_name(ModelTag tag);

struct BigradedCell {
  int dim = 0;
  int max_depth = 0;                 // deepest vertex; drives truncation
  std::vector<uint32_t> boundary;    // sorted ids of facets (always lower ids)
  std::vector<GradeCorner> corners;  // minimal corners: 1, or 2 with k differing by 1
  std::vector<uint32_t> key;         // canonical content key (flatten_sets style)

  /** Present at (r,k) iff some corner has corner.r <= r and corner.k >= k. */
  bool alive_at(const Rat& r_sq, int k) const {
    for (const GradeCorner& c : corners) {
      if (c.k >= k && c.r_sq <= r_sq) return true;
    }
    return false;
  }

  /** Radius at which the cell enters the fixed-k slice, if it ever does. */
  std::optional<Rat> entry_r(int k) const {
    std::optional<Rat> best;
    for (const GradeCorner& c : corners) {
      if (c.k >= k && (!best || c.r_sq < *best)) best = c.r_sq;
    }
    return best;
  }
};

/**
 * A bigraded GF(2) chain complex: cells ordered so that boundaries precede
 * their cofaces, each carrying its minimal grade corners. Produced by the
 * three model builders and by the brute-force nerve oracle.
 */
struct BigradedComplex {
  ModelTag tag = ModelTag::rhomb;
  int ambient_dim = 0;
  uint32_t n_sites = 0;
  int max_k = 0;  // depth cap the complex was built with (n when unbounded)
  std::vector<BigradedCell> cells;

  // Snapping metadata (set by snap_grades).
  bool snapped = false;
  uint32_t snap_n = 0;
  Rat snap_r_max_sq{0};

  int top_dim() const {
    int d = -1;
    for (const BigradedCell& c : cells) d = std::max(d, c.dim);
    return d;
  }
};

/**
 * The unsliced model: one cell per rhomboid, graded (r_val, k_min), boundary
 * from boundary_rhomboid. The source must be full or truncated (support mode
 * lacks some facets).
 */
BigradedComplex build_rhomb(const RhomboidTiling& t);

/**
 * Depth-truncated rhomboid model straight from a full or support tiling:
 * keeps the cells with k_max <= max_k (the same cell set a truncated tiling
 * would hold) without copying the tiling, so exact radius values stay
 * memoized in `t` and are shared with a sliced model built from the same
 * tiling. Cells are ordered by (dimension, enumeration id).
 */
BigradedComplex build_rhomb(const RhomboidTiling& t, int max_k);

/**
 * Rhomboid model for depth queries k <= window. Dropping every cell with
 * k_max > window (what build_rhomb(t, window) does) leaves no cell that
 * spans more than window - k depth levels alive at depth k, so near the cap
 * the alive subcomplex degenerates to its low-dimensional skeleton: at
 * k = window only vertices survive, and spurious cycles appear one depth
 * level per homology dimension below that. Keeping cells down to vertex
 * depth min(n, window + dim) restores, at every k <= window, enough of the
 * deep neighborhood that removing the rest collapses away cleanly (each
 * discarded depth layer is a union of open stars of deepest-corner
 * vertices). The result is graded like build_rhomb and reports
 * max_k = window, the depth range its homology is good for. The source must
 * be full mode or a support tiling of level >= min(n, window + dim).
 */
BigradedComplex build_rhomb_depth_window(const RhomboidTiling& t, int window);

/** The sliced model: one cell per sliced cell, graded (r_val, min vertex
 *  depth), boundary from boundary_sliced. */
BigradedComplex build_srhomb(const SlicedTiling& s);

/**
 * The simplicial model: simplices are all nonempty subsets of sliced-cell
 * vertex sets. A simplex spanning depths {j, j+1} is 1-critical at
 * (min r over slabs containing it, j). A single-depth-j simplex enters layer
 * j at r_j = min r over containing cells with min vertex depth j, and layer
 * j-1 at r_{j-1} = min(r_j, min r over [j-1,j] slabs containing it); the
 * corner (r_{j-1}, j-1) is stored only when r_{j-1} < r_j.
 * `work_guard` bounds the number of subset visits (GuardError beyond it).
 */
BigradedComplex build_sdel(const SlicedTiling& s, uint64_t work_guard = uint64_t(1) << 26);

/** Restriction to cells whose vertices all have depth <= K (K >= 1). */
BigradedComplex truncate_complex(const BigradedComplex& c, int K);

/**
 * Snaps every corner radius onto a grid of N evenly spaced radius values
 * from 0 to the maximum corner radius inclusive, rounding up (presence is
 * never early). Corner radii become exact grid values with snap_index set.
 */
BigradedComplex snap_grades(const BigradedComplex& c, uint32_t N);

/** Index of a cell by canonical key; -1 when absent. */
int find_cell(const BigradedComplex& c, const std::vector<uint32_t>& key);

}  // namespace mcov
