#include "mcov/sliced.hpp"

#include <algorithm>

namespace mcov {

namespace {

/** Canonical key of a vertex-set list (shared encoding). */
std::vector<uint32_t> verts_key(const std::vector<SiteSet>& verts) { return flatten_sets(verts); }

uint64_t role_key(SlicedKind kind, uint32_t parent, int k) {
  return (static_cast<uint64_t>(parent) << 18) |
         (static_cast<uint64_t>(static_cast<uint32_t>(k)) << 2) |
         static_cast<uint64_t>(kind);
}

/** Vertex sets {x_in ∪ Q : Q ⊆ x_on, |Q| = t}, sorted. */
void append_depth_vertices(const Rhomboid& rho, int t, std::vector<SiteSet>& out) {
  for_each_combination(static_cast<uint32_t>(rho.x_on.size()), static_cast<uint32_t>(t),
                       [&](const uint32_t* idx) {
                         SiteSet v = rho.x_in;
                         for (int i = 0; i < t; ++i) v.push_back(rho.x_on[idx[i]]);
                         std::sort(v.begin(), v.end());
                         out.push_back(std::move(v));
                         return true;
                       });
}

bool sliced_less(const SlicedCell& a, const SlicedCell& b) {
  if (a.dim != b.dim) return a.dim < b.dim;
  return verts_key(a.verts) < verts_key(b.verts);
}

}  // namespace

int SlicedTiling::id_of_verts(const std::vector<SiteSet>& verts) const {
  auto it = by_verts_.find(verts_key(verts));
  return it == by_verts_.end() ? -1 : static_cast<int>(it->second);
}

int SlicedTiling::id_of_role(SlicedKind kind, uint32_t parent, int k) const {
  auto it = by_role_.find(role_key(kind, parent, k));
  return it == by_role_.end() ? -1 : static_cast<int>(it->second);
}

SlicedTiling slice_tiling(const RhomboidTiling& t, int cap) {
  MCOV_CHECK(t.mode() != RhomboidTiling::Mode::truncated,
             "slice a full or support tiling; depth-truncate the sliced complex instead");
  MCOV_CHECK(cap < 0 || t.mode() == RhomboidTiling::Mode::full || t.level() >= cap,
             "slicing cap exceeds the support tiling's level");
  SlicedTiling s;
  s.source_ = &t;
  const int own = t.mode() == RhomboidTiling::Mode::support ? t.level() : -1;
  s.max_k_ = cap >= 0 ? cap : own;
  const int K = s.max_k_;

  std::vector<SlicedCell> cells;
  for (uint32_t id = 0; id < t.cell_count(); ++id) {
    const Rhomboid& rho = t.cell(id);
    const int m = rho.cell_dim();
    if (m == 0) {
      if (K >= 0 && rho.k_min() > K) continue;
      SlicedCell c;
      c.kind = SlicedKind::vertex;
      c.parent = id;
      c.k = rho.k_min();
      c.dim = 0;
      c.verts = {rho.x_in};
      cells.push_back(std::move(c));
      continue;
    }
    for (int k = rho.k_min(); k < rho.k_max(); ++k) {
      if (K >= 0 && k + 1 > K) break;  // slab [k,k+1] reaches depth k+1
      SlicedCell c;
      c.kind = SlicedKind::slab;
      c.parent = id;
      c.k = k;
      c.dim = m;
      append_depth_vertices(rho, k - rho.k_min(), c.verts);
      append_depth_vertices(rho, k + 1 - rho.k_min(), c.verts);
      std::sort(c.verts.begin(), c.verts.end());
      cells.push_back(std::move(c));
    }
    for (int k = rho.k_min() + 1; k < rho.k_max(); ++k) {
      if (K >= 0 && k > K) break;
      SlicedCell c;
      c.kind = SlicedKind::slice;
      c.parent = id;
      c.k = k;
      c.dim = m - 1;
      append_depth_vertices(rho, k - rho.k_min(), c.verts);
      std::sort(c.verts.begin(), c.verts.end());
      cells.push_back(std::move(c));
    }
  }

  std::sort(cells.begin(), cells.end(), sliced_less);
  s.cells_ = std::move(cells);
  s.by_verts_.reserve(s.cells_.size() * 2);
  s.by_role_.reserve(s.cells_.size() * 2);
  for (uint32_t id = 0; id < s.cells_.size(); ++id) {
    const SlicedCell& c = s.cells_[id];
    bool fresh = s.by_verts_.emplace(verts_key(c.verts), id).second;
    MCOV_CHECK(fresh, "two sliced cells share a vertex set");
    fresh = s.by_role_.emplace(role_key(c.kind, c.parent, c.k), id).second;
    MCOV_CHECK(fresh, "two sliced cells share a role key");
  }
  return s;
}

std::vector<uint32_t> boundary_sliced(const SlicedTiling& s, uint32_t id) {
  const SlicedCell& c = s.cell(id);
  MCOV_CHECK(c.dim >= 1, "boundary_sliced needs a cell of dimension >= 1");
  const RhomboidTiling& t = s.source();
  const Rhomboid& rho = t.cell(c.parent);
  const int m = rho.cell_dim();
  std::vector<uint32_t> out;

  auto require = [&](int sid, const char* what) {
    MCOV_CHECK(sid >= 0, std::string("missing sliced facet: ") + what);
    out.push_back(static_cast<uint32_t>(sid));
  };

  if (c.kind == SlicedKind::slab && m == 1) {
    // A slab of an edge is a segment between the edge's two lattice points.
    const uint32_t site = rho.x_on[0];
    int lo = t.vertex_id(rho.x_in);
    int hi = t.vertex_id(set_with(rho.x_in, site));
    MCOV_CHECK(lo >= 0 && hi >= 0, "edge endpoints missing from tiling");
    require(s.id_of_role(SlicedKind::vertex, static_cast<uint32_t>(lo), rho.k_min()),
            "edge slab lower vertex");
    require(s.id_of_role(SlicedKind::vertex, static_cast<uint32_t>(hi), rho.k_min() + 1),
            "edge slab upper vertex");
    std::sort(out.begin(), out.end());
    return out;
  }

  // Codim-1 faces of the parent: each x_on site moved inside or outside.
  auto for_codim1 = [&](auto&& visit) {
    for (uint32_t site : rho.x_on) {
      SiteSet on = set_without(rho.x_on, site);
      int moved_in = t.id_of(set_with(rho.x_in, site), on);
      int moved_out = t.id_of(rho.x_in, on);
      visit(moved_in, rho.k_min() + 1, rho.k_max());      // range of the moved-in face
      visit(moved_out, rho.k_min(), rho.k_max() - 1);     // range of the moved-out face
    }
  };

  if (c.kind == SlicedKind::slab) {
    const int k = c.k;
    for_codim1([&](int face, int f_kmin, int f_kmax) {
      if (f_kmin <= k && k + 1 <= f_kmax) {
        MCOV_CHECK(face >= 0, "codim-1 face missing from tiling");
        require(s.id_of_role(SlicedKind::slab, static_cast<uint32_t>(face), k), "face slab");
      }
    });
    if (k > rho.k_min()) {
      require(s.id_of_role(SlicedKind::slice, c.parent, k), "lower slice");
    }
    if (k + 1 < rho.k_max()) {
      require(s.id_of_role(SlicedKind::slice, c.parent, k + 1), "upper slice");
    }
  } else if (c.kind == SlicedKind::slice) {
    const int k = c.k;
    for_codim1([&](int face, int f_kmin, int f_kmax) {
      if (f_kmin < k && k < f_kmax) {
        MCOV_CHECK(face >= 0, "codim-1 face missing from tiling");
        require(s.id_of_role(SlicedKind::slice, static_cast<uint32_t>(face), k), "face slice");
      } else if ((k == f_kmin || k == f_kmax) && c.dim == 1) {
        // The depth-k cell of the face is a single lattice vertex; it is a
        // facet only when it has dimension exactly one below the slice.
        MCOV_CHECK(face >= 0, "codim-1 face missing from tiling");
        const Rhomboid& sigma = t.cell(face);
        SiteSet v = k == f_kmin ? sigma.x_in : set_union(sigma.x_in, sigma.x_on);
        int vid = t.vertex_id(v);
        MCOV_CHECK(vid >= 0, "lattice vertex missing from tiling");
        require(s.id_of_role(SlicedKind::vertex, static_cast<uint32_t>(vid), k), "endpoint vertex");
      }
    });
  }

  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<uint32_t> mosaic(const SlicedTiling& s, int k, const std::optional<Rat>& r_sq_max) {
  const uint32_t n = s.source().cloud().size();
  if (k < 1 || static_cast<uint32_t>(k) > n) {
    throw InputError("mosaic depth must be between 1 and the number of sites");
  }
  MCOV_CHECK(s.max_k() < 0 || k <= s.max_k(), "mosaic depth exceeds the support cap");
  std::vector<uint32_t> out;
  for (uint32_t id = 0; id < s.cell_count(); ++id) {
    const SlicedCell& c = s.cell(id);
    if (c.kind == SlicedKind::slab || c.k != k) continue;
    if (r_sq_max && s.r_val(id) > *r_sq_max) continue;
    out.push_back(id);
  }
  return out;
}

}  // namespace mcov
