#include "mcov/bigraded.hpp"

#include <algorithm>
#include <unordered_map>

namespace mcov {

std::string model_name(ModelTag tag) {
  switch (tag) {
    case ModelTag::rhomb: return "rhomb";
    case ModelTag::srhomb: return "srhomb";
    case ModelTag::sdel: return "sdel";
    case ModelTag::cech_oracle: return "cech-oracle";
  }
  return "?";
}

namespace {

std::vector<uint32_t> rhomboid_key(const Rhomboid& rho) {
  std::vector<uint32_t> key;
  key.reserve(1 + rho.x_in.size() + rho.x_on.size());
  key.push_back(static_cast<uint32_t>(rho.x_in.size()));
  key.insert(key.end(), rho.x_in.begin(), rho.x_in.end());
  key.insert(key.end(), rho.x_on.begin(), rho.x_on.end());
  return key;
}

}  // namespace

BigradedComplex build_rhomb(const RhomboidTiling& t) {
  MCOV_CHECK(t.mode() != RhomboidTiling::Mode::support,
             "build_rhomb needs a full or truncated tiling");
  BigradedComplex c;
  c.tag = ModelTag::rhomb;
  c.ambient_dim = t.dim();
  c.n_sites = t.cloud().size();
  c.max_k = t.mode() == RhomboidTiling::Mode::truncated ? t.level()
                                                        : static_cast<int>(c.n_sites);
  c.cells.resize(t.cell_count());
  for (uint32_t id = 0; id < t.cell_count(); ++id) {
    const Rhomboid& rho = t.cell(id);
    BigradedCell& cell = c.cells[id];
    cell.dim = rho.cell_dim();
    cell.max_depth = rho.k_max();
    if (cell.dim >= 1) cell.boundary = boundary_rhomboid(t, id);
    cell.corners = {GradeCorner{t.r_val(id), rho.k_min(), -1}};
    cell.key = rhomboid_key(rho);
    for (uint32_t f : cell.boundary) MCOV_CHECK(f < id, "boundary id must precede the cell");
  }
  return c;
}

BigradedComplex build_rhomb(const RhomboidTiling& t, int max_k) {
  MCOV_CHECK(max_k >= 1, "depth cap must be >= 1");
  MCOV_CHECK(t.mode() != RhomboidTiling::Mode::truncated, "tiling is already truncated");
  MCOV_CHECK(t.mode() != RhomboidTiling::Mode::support || t.level() >= max_k,
             "support tiling level is below the requested depth cap");
  std::vector<uint32_t> keep;
  for (uint32_t id = 0; id < t.cell_count(); ++id) {
    if (t.cell(id).k_max() <= max_k) keep.push_back(id);
  }
  std::stable_sort(keep.begin(), keep.end(), [&](uint32_t a, uint32_t b) {
    return t.cell(a).cell_dim() < t.cell(b).cell_dim();
  });
  std::vector<int> remap(t.cell_count(), -1);
  for (uint32_t pos = 0; pos < keep.size(); ++pos) remap[keep[pos]] = static_cast<int>(pos);

  BigradedComplex c;
  c.tag = ModelTag::rhomb;
  c.ambient_dim = t.dim();
  c.n_sites = t.cloud().size();
  c.max_k = max_k;
  c.cells.resize(keep.size());
  for (uint32_t pos = 0; pos < keep.size(); ++pos) {
    const uint32_t id = keep[pos];
    const Rhomboid& rho = t.cell(id);
    BigradedCell& cell = c.cells[pos];
    cell.dim = rho.cell_dim();
    cell.max_depth = rho.k_max();
    if (cell.dim >= 1) {
      cell.boundary = boundary_rhomboid(t, id);
      for (uint32_t& f : cell.boundary) {
        MCOV_CHECK(remap[f] >= 0, "facet of a kept cell was dropped by the depth cap");
        f = static_cast<uint32_t>(remap[f]);
      }
      std::sort(cell.boundary.begin(), cell.boundary.end());
    }
    cell.corners = {GradeCorner{t.r_val(id), rho.k_min(), -1}};
    cell.key = rhomboid_key(rho);
    for (uint32_t f : cell.boundary) MCOV_CHECK(f < pos, "boundary id must precede the cell");
  }
  return c;
}

BigradedComplex build_rhomb_depth_window(const RhomboidTiling& t, int window) {
  MCOV_CHECK(window >= 1, "depth window must be >= 1");
  const int n = static_cast<int>(t.cloud().size());
  const int keep = std::min(n, window + t.dim());
  BigradedComplex c = build_rhomb(t, keep);
  c.max_k = window;
  return c;
}

BigradedComplex build_srhomb(const SlicedTiling& s) {
  BigradedComplex c;
  c.tag = ModelTag::srhomb;
  c.ambient_dim = s.dim();
  c.n_sites = s.source().cloud().size();
  c.max_k = s.max_k() < 0 ? static_cast<int>(c.n_sites) : s.max_k();
  c.cells.resize(s.cell_count());
  for (uint32_t id = 0; id < s.cell_count(); ++id) {
    const SlicedCell& sc = s.cell(id);
    BigradedCell& cell = c.cells[id];
    cell.dim = sc.dim;
    cell.max_depth = sc.max_depth();
    if (cell.dim >= 1) cell.boundary = boundary_sliced(s, id);
    cell.corners = {GradeCorner{s.r_val(id), sc.k_val(), -1}};
    cell.key = flatten_sets(sc.verts);
    for (uint32_t f : cell.boundary) MCOV_CHECK(f < id, "boundary id must precede the cell");
  }
  return c;
}

namespace {

/** Accumulator for one simplex while scanning the sliced cells. */
struct SimplexAcc {
  std::vector<SiteSet> verts;  // sorted
  int j = 0;                   // layer of the own corner (lowest vertex depth)
  bool spanning = false;
  bool has_own = false;
  Rat r_own{0};
  bool has_below = false;
  Rat r_below{0};
};

}  // namespace

BigradedComplex build_sdel(const SlicedTiling& s, uint64_t work_guard) {
  // Guard the total subset count before doing any work.
  uint64_t work = 0;
  for (const SlicedCell& sc : s.cells()) {
    MCOV_CHECK(sc.verts.size() < 63, "sliced cell vertex count out of range");
    work += (uint64_t(1) << sc.verts.size()) - 1;
    if (work > work_guard) {
      throw GuardError(
          "simplicial model too large (subset enumeration guard); truncate to a smaller K");
    }
  }

  std::unordered_map<std::vector<uint32_t>, SimplexAcc, U32VecHash> acc;
  acc.reserve(1024);
  std::vector<SiteSet> sigma;
  for (uint32_t id = 0; id < s.cell_count(); ++id) {
    const SlicedCell& sc = s.cell(id);
    const Rat& r = s.r_val(id);
    const int cell_kval = sc.k_val();
    const size_t nv = sc.verts.size();
    for (uint64_t mask = 1; mask < (uint64_t(1) << nv); ++mask) {
      sigma.clear();
      size_t lo = SIZE_MAX, hi = 0;
      for (size_t i = 0; i < nv; ++i) {
        if (mask & (uint64_t(1) << i)) {
          sigma.push_back(sc.verts[i]);
          lo = std::min(lo, sc.verts[i].size());
          hi = std::max(hi, sc.verts[i].size());
        }
      }
      SimplexAcc& a = acc[flatten_sets(sigma)];
      if (a.verts.empty()) {
        a.verts = sigma;
        a.j = static_cast<int>(lo);
        a.spanning = hi > lo;
      }
      if (hi > lo) {
        // Spanning simplex: lives only in layer lo; witness is this slab.
        if (!a.has_own || r < a.r_own) {
          a.r_own = r;
          a.has_own = true;
        }
      } else if (cell_kval == static_cast<int>(lo)) {
        if (!a.has_own || r < a.r_own) {
          a.r_own = r;
          a.has_own = true;
        }
      } else {
        // This cell is a slab over [j-1, j] containing the depth-j simplex.
        if (!a.has_below || r < a.r_below) {
          a.r_below = r;
          a.has_below = true;
        }
      }
    }
  }

  BigradedComplex c;
  c.tag = ModelTag::sdel;
  c.ambient_dim = s.dim();
  c.n_sites = s.source().cloud().size();
  c.max_k = s.max_k() < 0 ? static_cast<int>(c.n_sites) : s.max_k();

  // Deterministic order: dimension, then canonical key.
  std::vector<const SimplexAcc*> order;
  order.reserve(acc.size());
  for (auto& [key, a] : acc) {
    MCOV_CHECK(a.has_own, "simplex lacks a same-layer witness cell");
    order.push_back(&a);
  }
  std::sort(order.begin(), order.end(), [](const SimplexAcc* x, const SimplexAcc* y) {
    if (x->verts.size() != y->verts.size()) return x->verts.size() < y->verts.size();
    return x->verts < y->verts;
  });

  std::unordered_map<std::vector<uint32_t>, uint32_t, U32VecHash> ids;
  ids.reserve(order.size() * 2);
  c.cells.reserve(order.size());
  for (const SimplexAcc* a : order) {
    BigradedCell cell;
    cell.dim = static_cast<int>(a->verts.size()) - 1;
    cell.key = flatten_sets(a->verts);
    int max_depth = 0;
    for (const SiteSet& v : a->verts) max_depth = std::max<int>(max_depth, v.size());
    cell.max_depth = max_depth;
    cell.corners = {GradeCorner{a->r_own, a->j, -1}};
    if (!a->spanning && a->j >= 1 && a->has_below && a->r_below < a->r_own) {
      cell.corners.push_back(GradeCorner{a->r_below, a->j - 1, -1});
    }
    if (cell.dim >= 1) {
      std::vector<SiteSet> facet;
      for (size_t drop = 0; drop < a->verts.size(); ++drop) {
        facet.clear();
        for (size_t i = 0; i < a->verts.size(); ++i) {
          if (i != drop) facet.push_back(a->verts[i]);
        }
        auto it = ids.find(flatten_sets(facet));
        MCOV_CHECK(it != ids.end(), "simplex facet missing");
        cell.boundary.push_back(it->second);
      }
      std::sort(cell.boundary.begin(), cell.boundary.end());
    }
    uint32_t id = static_cast<uint32_t>(c.cells.size());
    ids.emplace(cell.key, id);
    c.cells.push_back(std::move(cell));
  }
  return c;
}

BigradedComplex truncate_complex(const BigradedComplex& c, int K) {
  if (K < 1) throw InputError("truncation depth must be >= 1");
  BigradedComplex out;
  out.tag = c.tag;
  out.ambient_dim = c.ambient_dim;
  out.n_sites = c.n_sites;
  out.max_k = std::min(c.max_k, K);
  out.snapped = c.snapped;
  out.snap_n = c.snap_n;
  out.snap_r_max_sq = c.snap_r_max_sq;
  std::vector<int> remap(c.cells.size(), -1);
  for (uint32_t id = 0; id < c.cells.size(); ++id) {
    if (c.cells[id].max_depth > K) continue;
    BigradedCell cell = c.cells[id];
    for (uint32_t& f : cell.boundary) {
      MCOV_CHECK(remap[f] >= 0, "truncation dropped a facet of a kept cell");
      f = static_cast<uint32_t>(remap[f]);
    }
    remap[id] = static_cast<int>(out.cells.size());
    out.cells.push_back(std::move(cell));
  }
  return out;
}

BigradedComplex snap_grades(const BigradedComplex& c, uint32_t N) {
  if (N < 2) throw InputError("snap grid needs at least 2 values");
  BigradedComplex out = c;
  Rat r_max(0);
  for (const BigradedCell& cell : out.cells) {
    for (const GradeCorner& g : cell.corners) r_max = std::max(r_max, g.r_sq);
  }
  out.snapped = true;
  out.snap_n = N;
  out.snap_r_max_sq = r_max;
  const mpz_class steps(N - 1);
  for (BigradedCell& cell : out.cells) {
    for (GradeCorner& g : cell.corners) {
      if (r_max == 0) {
        g.r_sq = 0;
        g.snap_index = 0;
        continue;
      }
      // Smallest grid index i with (i * r_max / (N-1))^2 >= r_sq.
      Rat scaled = g.r_sq * Rat(steps * steps);
      mpz_class num = scaled.get_num() * r_max.get_den();
      mpz_class den = scaled.get_den() * r_max.get_num();
      unsigned long i = ceil_sqrt_ratio(num, den);
      g.snap_index = static_cast<int>(i);
      g.r_sq = r_max * Rat(mpz_class(i) * mpz_class(i)) / Rat(steps * steps);
    }
    // Snapping can merge the two corners of a two-corner cell; keep minimal.
    if (cell.corners.size() == 2 && cell.corners[1].r_sq >= cell.corners[0].r_sq) {
      cell.corners.pop_back();
    }
  }
  return out;
}

int find_cell(const BigradedComplex& c, const std::vector<uint32_t>& key) {
  for (uint32_t id = 0; id < c.cells.size(); ++id) {
    if (c.cells[id].key == key) return static_cast<int>(id);
  }
  return -1;
}

}  // namespace mcov
