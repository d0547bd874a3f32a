// Acceptance gate for the multicover models: twelve self-contained checks,
// each printing one [PASS]/[FAIL] line with its wall time. Checks that carry
// a wall-clock budget fail when they exceed it.
//
//   mcov_acceptance                runs every check
//   mcov_acceptance --criterion N  runs a single check (N in 1..12)
//   mcov_acceptance --list         prints the table of checks
//
// Exit status is 0 iff every executed check passed.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "mcov/bigraded.hpp"
#include "mcov/common.hpp"
#include "mcov/firep.hpp"
#include "mcov/generators.hpp"
#include "mcov/homology.hpp"
#include "mcov/minsphere.hpp"
#include "mcov/oracle.hpp"
#include "mcov/rational.hpp"
#include "mcov/rhomboid.hpp"
#include "mcov/sliced.hpp"

using namespace mcov;

namespace {

using Clock = std::chrono::steady_clock;

// ---------------------------------------------------------------------------
// Shared helpers
// ---------------------------------------------------------------------------

uint64_t binom_u64(uint64_t n, uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  uint64_t r = 1;
  for (uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

uint64_t ipow_u64(uint64_t base, int exp) {
  uint64_t r = 1;
  while (exp-- > 0) r *= base;
  return r;
}

PointCloud square_cloud(uint32_t n, uint64_t seed) {
  GeneratorSpec spec;
  spec.kind = GenKind::uniform_square;
  spec.n = n;
  spec.seed = seed;
  return generate(spec);
}

PointCloud cube_cloud(uint32_t n, uint64_t seed) {
  GeneratorSpec spec;
  spec.kind = GenKind::uniform_cube;
  spec.n = n;
  spec.seed = seed;
  return generate(spec);
}

/** Distinct uniform sites on the unit segment (there is no 1-d generator kind). */
PointCloud line_cloud(uint32_t n, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::set<double> used;
  std::vector<Point> pts;
  while (pts.size() < n) {
    double u = (rng() >> 11) * 0x1p-53;
    if (!used.insert(u).second) continue;
    pts.push_back({rat_from_double(u), Rat(0), Rat(0)});
  }
  return PointCloud(1, pts);
}

struct NamedCloud {
  std::string name;
  PointCloud cloud;
};

/** The five frozen planar clouds shared by several checks (5..8 sites). */
std::vector<NamedCloud> planar_test_clouds() {
  std::vector<NamedCloud> out;
  const std::pair<uint32_t, uint64_t> cfg[5] = {{5, 21}, {6, 22}, {7, 23}, {8, 24}, {6, 25}};
  for (const auto& [n, seed] : cfg) {
    out.push_back({"n=" + std::to_string(n) + "/seed=" + std::to_string(seed),
                   square_cloud(n, seed)});
  }
  return out;
}

/** Betti number at one radius from a fixed-depth barcode (bar counting). */
int64_t bars_at(const Barcode& bc, size_t i, const Rat& r_sq) {
  if (i >= bc.size()) return 0;
  int64_t c = 0;
  for (const Bar& b : bc[i]) {
    if (b.birth_sq <= r_sq && (!b.death_sq || r_sq < *b.death_sq)) ++c;
  }
  return c;
}

Rat enclosing_radius_sq(const PointCloud& cloud) {
  SiteSet all(cloud.size());
  for (uint32_t i = 0; i < cloud.size(); ++i) all[i] = i;
  return miniball(cloud, all).r_sq;
}

/** count evenly spaced radii from 0 to the enclosing radius, squared exactly. */
std::vector<Rat> radius_grid_sq(const Rat& r_max_sq, int count) {
  std::vector<Rat> out;
  const long m = count - 1;
  for (long j = 0; j < count; ++j) {
    Rat v = r_max_sq * Rat(j * j, m * m);
    v.canonicalize();
    out.push_back(v);
  }
  return out;
}

bool barcode_rows_equal(const std::vector<Bar>& a, const std::vector<Bar>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].birth_sq != b[i].birth_sq) return false;
    if (a[i].death_sq.has_value() != b[i].death_sq.has_value()) return false;
    if (a[i].death_sq && *a[i].death_sq != *b[i].death_sq) return false;
  }
  return true;
}

/** GF(2) boundary-of-boundary: symmetric difference of facet boundaries. */
bool dd_vanishes(const BigradedComplex& c) {
  for (const BigradedCell& cell : c.cells) {
    if (cell.dim < 2) continue;
    std::set<uint32_t> acc;
    for (uint32_t f : cell.boundary) {
      for (uint32_t g : c.cells[f].boundary) {
        auto it = acc.find(g);
        if (it == acc.end()) acc.insert(g);
        else acc.erase(it);
      }
    }
    if (!acc.empty()) return false;
  }
  return true;
}

/** Alternating alive-cell count at one grade. */
int64_t euler_cells(const BigradedComplex& c, const Rat& r_sq, int k) {
  int64_t chi = 0;
  for (const BigradedCell& cell : c.cells) {
    if (cell.alive_at(r_sq, k)) chi += (cell.dim % 2 == 0) ? 1 : -1;
  }
  return chi;
}

std::string grade_str(const Rat& r_sq, int k) {
  return "(r^2=" + r_sq.get_str() + ", k=" + std::to_string(k) + ")";
}

// ---------------------------------------------------------------------------
// Check 1: five collinear sites.
// The rhomboid with one site inside and two on the boundary exists, carries
// squared radius exactly 1, its four combinatorial vertices are tiling
// vertices, and the full tiling has binom(5,2) = 10 top cells.
// ---------------------------------------------------------------------------
std::string c1_collinear_sites() {
  std::vector<Point> pts;
  for (int i = 0; i < 5; ++i) pts.push_back({Rat(i), Rat(0), Rat(0)});
  PointCloud cloud(1, pts);
  RhomboidTiling t = enumerate_rhomboids(cloud);
  int id = t.id_of({2}, {1, 3});
  if (id < 0) return "rhomboid (in={2}, on={1,3}) is not a cell of the tiling";
  if (t.r_val(static_cast<uint32_t>(id)) != Rat(1))
    return "rhomboid (in={2}, on={1,3}) has r^2 = " +
           t.r_val(static_cast<uint32_t>(id)).get_str() + ", expected 1";
  const std::vector<SiteSet> verts = {{2}, {1, 2}, {2, 3}, {1, 2, 3}};
  for (const SiteSet& v : verts) {
    if (t.vertex_id(v) < 0) {
      std::string s;
      for (uint32_t x : v) s += std::to_string(x) + " ";
      return "vertex {" + s + "} of the rhomboid is missing from the tiling";
    }
  }
  TilingStats st = tiling_stats(t);
  if (st.top_cells != 10)
    return "expected 10 top cells, found " + std::to_string(st.top_cells);
  return "";
}

// ---------------------------------------------------------------------------
// Check 2: one triangle.
// The sliced model has the six-vertex slab between depths 1 and 2 graded at
// (circumradius^2, 1); the simplicial model has the 5-simplex on the same
// six vertex sets entering depth 1 at the same radius.
// ---------------------------------------------------------------------------
std::string c2_triangle_slab() {
  PointCloud cloud(2, {{Rat(0), Rat(0), Rat(0)},
                       {Rat(2), Rat(0), Rat(0)},
                       {Rat(0), Rat(2), Rat(0)}});
  const Rat circum_sq(2);  // circumcenter (1,1)
  RhomboidTiling t = enumerate_rhomboids(cloud);
  SlicedTiling s = slice_tiling(t);
  int top = t.id_of({}, {0, 1, 2});
  if (top < 0) return "the full-triangle top rhomboid is missing";
  int slab = s.id_of_role(SlicedKind::slab, static_cast<uint32_t>(top), 1);
  if (slab < 0) return "the depth-[1,2] slab of the top rhomboid is missing";
  const SlicedCell& sc = s.cell(static_cast<uint32_t>(slab));
  if (sc.verts.size() != 6)
    return "the depth-[1,2] slab has " + std::to_string(sc.verts.size()) +
           " vertices, expected 6";

  BigradedComplex sr = build_srhomb(s);
  int cid = find_cell(sr, flatten_sets(sc.verts));
  if (cid < 0) return "the slab is missing from the sliced model";
  const BigradedCell& cell = sr.cells[static_cast<size_t>(cid)];
  if (cell.corners.size() != 1 || cell.corners[0].r_sq != circum_sq ||
      cell.corners[0].k != 1)
    return "the slab is not graded at (circumradius^2, depth 1)";

  BigradedComplex sd = build_sdel(s);
  int sid = find_cell(sd, flatten_sets(sc.verts));
  if (sid < 0) return "the 5-simplex on the slab vertices is missing from the simplicial model";
  const BigradedCell& simplex = sd.cells[static_cast<size_t>(sid)];
  if (simplex.dim != 5)
    return "expected a 5-simplex, found dimension " + std::to_string(simplex.dim);
  std::optional<Rat> entry = simplex.entry_r(1);
  if (!entry || *entry != circum_sq)
    return "the 5-simplex does not enter depth 1 at the circumradius";
  return "";
}

// ---------------------------------------------------------------------------
// Check 3: Betti agreement of all four models on a radius/depth grid.
// Five planar clouds (5..8 sites); 20 radii spanning 0 to the enclosing
// radius, depths 1..min(n,4), homology dimensions 0 and 1. Budget 60 s.
// ---------------------------------------------------------------------------
std::string c3_grid_agreement() {
  for (const NamedCloud& nc : planar_test_clouds()) {
    const PointCloud& cloud = nc.cloud;
    const int n = static_cast<int>(cloud.size());
    RhomboidTiling t = enumerate_rhomboids(cloud);
    SlicedTiling s = slice_tiling(t);
    const BigradedComplex models[3] = {build_rhomb(t), build_srhomb(s), build_sdel(s)};
    const std::vector<Rat> grid = radius_grid_sq(enclosing_radius_sq(cloud), 20);
    for (int k = 1; k <= std::min(n, 4); ++k) {
      Barcode bars[4];
      for (int m = 0; m < 3; ++m) bars[m] = barcode_fixed_k(models[m], k, 1);
      BigradedComplex nerve = cech_multicover_nerve(cloud, k, 2);
      bars[3] = barcode_fixed_k(nerve, k, 1);
      for (const Rat& r_sq : grid) {
        for (size_t i = 0; i <= 1; ++i) {
          const int64_t want = bars_at(bars[3], i, r_sq);
          for (int m = 0; m < 3; ++m) {
            if (bars_at(bars[m], i, r_sq) != want) {
              return "cloud " + nc.name + ": beta_" + std::to_string(i) + " at " +
                     grade_str(r_sq, k) + " differs from the nerve (model " +
                     model_name(models[m].tag) + ")";
            }
          }
        }
      }
    }
  }
  return "";
}

// ---------------------------------------------------------------------------
// Check 4: fixed-depth barcodes equal the brute-force nerve barcodes as
// multisets, at every depth k <= n, dimensions 0 and 1. Budget 60 s.
// ---------------------------------------------------------------------------
std::string c4_barcode_agreement() {
  for (const NamedCloud& nc : planar_test_clouds()) {
    const PointCloud& cloud = nc.cloud;
    const int n = static_cast<int>(cloud.size());
    RhomboidTiling t = enumerate_rhomboids(cloud);
    BigradedComplex rhomb = build_rhomb(t);
    for (int k = 1; k <= n; ++k) {
      Barcode a = barcode_fixed_k(rhomb, k, 1);
      BigradedComplex nerve = cech_multicover_nerve(cloud, k, 2);
      Barcode b = barcode_fixed_k(nerve, k, 1);
      for (size_t i = 0; i <= 1; ++i) {
        const std::vector<Bar> empty;
        const std::vector<Bar>& ra = i < a.size() ? a[i] : empty;
        const std::vector<Bar>& rb = i < b.size() ? b[i] : empty;
        if (!barcode_rows_equal(ra, rb)) {
          return "cloud " + nc.name + ": dimension-" + std::to_string(i) +
                 " barcode at depth " + std::to_string(k) +
                 " differs from the nerve (" + std::to_string(ra.size()) + " vs " +
                 std::to_string(rb.size()) + " bars)";
        }
      }
    }
  }
  return "";
}

// ---------------------------------------------------------------------------
// Check 5: a frozen seven-point cloud whose depth-3 cover has a hole that is
// absent at depth 2, at one frozen radius, under both the nerve oracle and
// the rhomboid model.
// ---------------------------------------------------------------------------
std::string c5_depth3_hole() {
  const std::vector<Point> pts = {
      {Rat(163, 200), Rat(457, 1000), Rat(0)},  {Rat(659, 1000), Rat(191, 250), Rat(0)},
      {Rat(163, 500), Rat(211, 250), Rat(0)},   {Rat(187, 1000), Rat(503, 1000), Rat(0)},
      {Rat(327, 1000), Rat(91, 500), Rat(0)},   {Rat(629, 1000), Rat(17, 100), Rat(0)},
      {Rat(517, 1000), Rat(483, 1000), Rat(0)},
  };
  PointCloud cloud(2, pts);
  const Rat r_sq(107, 1000);
  struct Want {
    int k;
    int64_t beta1;
  } wants[2] = {{2, 0}, {3, 1}};
  for (const Want& w : wants) {
    int64_t got = oracle_betti(cloud, r_sq, w.k, 1);
    if (got != w.beta1)
      return "nerve oracle: beta_1 at depth " + std::to_string(w.k) + " is " +
             std::to_string(got) + ", expected " + std::to_string(w.beta1);
  }
  RhomboidTiling t = enumerate_rhomboids(cloud);
  BigradedComplex rhomb = build_rhomb(t);
  for (const Want& w : wants) {
    int64_t got = betti_at_grade(rhomb, r_sq, w.k, 1);
    if (got != w.beta1)
      return "rhomboid model: beta_1 at depth " + std::to_string(w.k) + " is " +
             std::to_string(got) + ", expected " + std::to_string(w.beta1);
  }
  return "";
}

// ---------------------------------------------------------------------------
// Check 6: across dimensions 1..3, twenty clouds each: the full tiling has
// at most 2 (n+1)^(d+1) cells and exactly binom(n, d+1) top cells.
// Budget 120 s.
// ---------------------------------------------------------------------------
std::string c6_size_bounds() {
  for (int d = 1; d <= 3; ++d) {
    const uint32_t n_max = d == 3 ? 15 : 25;
    for (int j = 0; j < 20; ++j) {
      const uint32_t n = 6 + static_cast<uint32_t>(j) % (n_max - 5);
      const uint64_t seed = 1000 * static_cast<uint64_t>(d) + static_cast<uint64_t>(j);
      PointCloud cloud = d == 1   ? line_cloud(n, seed)
                         : d == 2 ? square_cloud(n, seed)
                                  : cube_cloud(n, seed);
      RhomboidTiling t = enumerate_rhomboids(cloud);
      TilingStats st = tiling_stats(t);
      const uint64_t bound = 2 * ipow_u64(n + 1, d + 1);
      if (st.total_cells > bound)
        return "d=" + std::to_string(d) + " n=" + std::to_string(n) + " seed=" +
               std::to_string(seed) + ": " + std::to_string(st.total_cells) +
               " cells exceed the bound " + std::to_string(bound);
      if (st.top_cells != binom_u64(n, static_cast<uint64_t>(d) + 1))
        return "d=" + std::to_string(d) + " n=" + std::to_string(n) + " seed=" +
               std::to_string(seed) + ": " + std::to_string(st.top_cells) +
               " top cells, expected binom(n, d+1) = " +
               std::to_string(binom_u64(n, static_cast<uint64_t>(d) + 1));
    }
  }
  return "";
}

// ---------------------------------------------------------------------------
// Check 7: simplicial-model bounds on depth-truncated tilings.
// top dimension <= 2 binom(d+1, floor((d+1)/2)); every depth slice has
// dimension <= binom(d+1, floor((d+1)/2)); in each layer k the number of
// maximal simplices is at most V_k + V_{k+1}, where V_k counts top rhomboids
// whose depth range strictly contains k.
// ---------------------------------------------------------------------------
std::string c7_simplicial_bounds() {
  struct Case {
    int d;
    uint32_t n;
    uint64_t seed;
    int K;
  };
  const Case cases[] = {{1, 10, 71, 4}, {1, 18, 72, 4}, {1, 25, 73, 4},
                        {2, 10, 74, 4}, {2, 18, 75, 4}, {2, 25, 76, 4},
                        {3, 8, 77, 3},  {3, 12, 78, 3}, {3, 15, 79, 3}};
  for (const Case& cs : cases) {
    PointCloud cloud = cs.d == 1   ? line_cloud(cs.n, cs.seed)
                       : cs.d == 2 ? square_cloud(cs.n, cs.seed)
                                   : cube_cloud(cs.n, cs.seed);
    const std::string tag =
        "d=" + std::to_string(cs.d) + " n=" + std::to_string(cs.n) + " K=" + std::to_string(cs.K);
    RhomboidTiling sup = enumerate_rhomboids(cloud, cs.K);
    SlicedTiling s = slice_tiling(sup);
    BigradedComplex sd = build_sdel(s);
    const int half = binom_u64(static_cast<uint64_t>(cs.d) + 1,
                               static_cast<uint64_t>(cs.d + 1) / 2);
    if (sd.top_dim() > 2 * half)
      return tag + ": simplicial model has dimension " + std::to_string(sd.top_dim()) +
             " > " + std::to_string(2 * half);
    for (uint32_t id = 0; id < s.cell_count(); ++id) {
      const SlicedCell& sc = s.cell(id);
      if (sc.kind == SlicedKind::slice && sc.dim > half)
        return tag + ": a depth-" + std::to_string(sc.k) + " slice has dimension " +
               std::to_string(sc.dim) + " > " + std::to_string(half);
    }

    TilingStats st = tiling_stats(sup);
    auto v_of = [&st](int k) -> uint64_t {
      return (k >= 0 && static_cast<size_t>(k) < st.v_k.size()) ? st.v_k[k] : 0;
    };
    for (int k = 1; k + 1 <= cs.K; ++k) {
      // Layer k: every nonempty subset of the vertex set of a depth-[k,k+1]
      // slab, deduplicated; all of them must be cells of the model.
      std::unordered_map<std::vector<uint32_t>, std::vector<SiteSet>, U32VecHash> layer;
      for (uint32_t id = 0; id < s.cell_count(); ++id) {
        const SlicedCell& sc = s.cell(id);
        if (sc.kind != SlicedKind::slab || sc.k != k) continue;
        const size_t nv = sc.verts.size();
        for (uint64_t mask = 1; mask < (uint64_t(1) << nv); ++mask) {
          std::vector<SiteSet> sigma;
          for (size_t i = 0; i < nv; ++i)
            if (mask & (uint64_t(1) << i)) sigma.push_back(sc.verts[i]);
          layer.emplace(flatten_sets(sigma), std::move(sigma));
        }
      }
      std::unordered_set<std::vector<uint32_t>, U32VecHash> non_maximal;
      for (const auto& [key, sigma] : layer) {
        if (find_cell(sd, key) < 0)
          return tag + ": a layer-" + std::to_string(k) +
                 " simplex is missing from the simplicial model";
        if (sigma.size() < 2) continue;
        for (size_t omit = 0; omit < sigma.size(); ++omit) {
          std::vector<SiteSet> facet;
          facet.reserve(sigma.size() - 1);
          for (size_t i = 0; i < sigma.size(); ++i)
            if (i != omit) facet.push_back(sigma[i]);
          non_maximal.insert(flatten_sets(facet));
        }
      }
      uint64_t maximal = 0;
      for (const auto& [key, sigma] : layer)
        if (!non_maximal.count(key)) ++maximal;
      const uint64_t bound = v_of(k) + v_of(k + 1);
      if (maximal > bound)
        return tag + ": layer " + std::to_string(k) + " has " + std::to_string(maximal) +
               " maximal simplices > V_k + V_{k+1} = " + std::to_string(bound);
    }
  }
  return "";
}

// ---------------------------------------------------------------------------
// Check 8: structural sanity of all three models on the test clouds:
// boundary-of-boundary vanishes; at every depth k >= 1 no homology appears
// in dimensions >= d; the alternating alive-cell count equals the
// alternating Betti sum at sampled radii.
// ---------------------------------------------------------------------------
std::string c8_structural() {
  std::vector<NamedCloud> clouds = planar_test_clouds();
  clouds.push_back({"line n=10", line_cloud(10, 801)});
  clouds.push_back({"cube n=7", cube_cloud(7, 802)});
  for (const NamedCloud& nc : clouds) {
    const PointCloud& cloud = nc.cloud;
    const int n = static_cast<int>(cloud.size());
    const int d = cloud.dim();
    RhomboidTiling t = enumerate_rhomboids(cloud);
    SlicedTiling s = slice_tiling(t);
    const BigradedComplex models[3] = {build_rhomb(t), build_srhomb(s), build_sdel(s)};
    for (const BigradedComplex& c : models) {
      if (!dd_vanishes(c))
        return "cloud " + nc.name + ": boundary-of-boundary is nonzero in model " +
               model_name(c.tag);
      for (int k = 1; k <= n; ++k) {
        Barcode bc = barcode_fixed_k(c, k, c.top_dim());
        for (size_t i = static_cast<size_t>(d); i < bc.size(); ++i) {
          if (!bc[i].empty())
            return "cloud " + nc.name + ", model " + model_name(c.tag) + ": beta_" +
                   std::to_string(i) + " is nonzero at depth " + std::to_string(k);
        }
        // Radii where something changes at this depth: the entry radii.
        std::vector<Rat> radii;
        for (const BigradedCell& cell : c.cells) {
          std::optional<Rat> e = cell.entry_r(k);
          if (e) radii.push_back(*e);
        }
        std::sort(radii.begin(), radii.end());
        radii.erase(std::unique(radii.begin(), radii.end()), radii.end());
        if (!radii.empty()) radii.push_back(radii.back() + 1);
        const size_t step = std::max<size_t>(1, radii.size() / 24);
        for (size_t ri = 0; ri < radii.size(); ri += step) {
          const Rat& r_sq = radii[ri];
          int64_t chi_bars = 0;
          for (size_t i = 0; i < bc.size(); ++i) {
            const int64_t b = bars_at(bc, i, r_sq);
            chi_bars += (i % 2 == 0) ? b : -b;
          }
          if (euler_cells(c, r_sq, k) != chi_bars)
            return "cloud " + nc.name + ", model " + model_name(c.tag) +
                   ": Euler characteristic mismatch at " + grade_str(r_sq, k);
        }
      }
    }
  }
  return "";
}

// ---------------------------------------------------------------------------
// Check 9: at n = 500, K = 4, the depth-truncated rhomboid model yields a
// strictly smaller dimension-1 presentation than the sliced model, by at
// least 10%. Budget 120 s.
// ---------------------------------------------------------------------------
std::string c9_presentation_size() {
  PointCloud cloud = square_cloud(500, 907);
  RhomboidTiling sup = enumerate_rhomboids(cloud, 4);
  SlicedTiling s = slice_tiling(sup);
  BigradedComplex srhomb = build_srhomb(s);
  BigradedComplex rhomb = build_rhomb(sup, 4);
  FirepDocument fr = assemble_firep(rhomb, 1);
  FirepDocument fs = assemble_firep(srhomb, 1);
  const uint64_t gr = fr.degrees[0].size() + fr.degrees[1].size() + fr.degrees[2].size();
  const uint64_t gs = fs.degrees[0].size() + fs.degrees[1].size() + fs.degrees[2].size();
  if (gr >= gs)
    return "rhomboid presentation (" + std::to_string(gr) +
           " generators) is not smaller than the sliced one (" + std::to_string(gs) + ")";
  if (10 * gr > 9 * gs)
    return "generator ratio " + std::to_string(gr) + "/" + std::to_string(gs) +
           " exceeds 0.9";
  return "";
}

// ---------------------------------------------------------------------------
// Check 10: the depth-4 tiling grows linearly in n: across n = 250, 500,
// 1000 the per-site cell count varies by less than a factor 1.5.
// Budget 180 s.
// ---------------------------------------------------------------------------
std::string c10_linear_growth() {
  const uint32_t ns[3] = {250, 500, 1000};
  uint64_t cells[3] = {0, 0, 0};
  for (int i = 0; i < 3; ++i) {
    PointCloud cloud = square_cloud(ns[i], 1200 + ns[i]);
    RhomboidTiling sup = enumerate_rhomboids(cloud, 4);
    cells[i] = sup.cell_count();
  }
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      // per-site ratio comparison: cells[a]/ns[a] < 1.5 * cells[b]/ns[b]
      if (2 * cells[a] * ns[b] >= 3 * cells[b] * ns[a])
        return "per-site size at n=" + std::to_string(ns[a]) + " (" +
               std::to_string(cells[a]) + " cells) is >= 1.5x the one at n=" +
               std::to_string(ns[b]) + " (" + std::to_string(cells[b]) + " cells)";
    }
  }
  return "";
}

// ---------------------------------------------------------------------------
// Check 11: evaluating a presentation at a grade reproduces the model's
// Betti number, at 20 random grades per cloud, model and dimension. Radii
// are sampled between consecutive printed values (printing rounds to the
// nearest double, so the printed radius may sit one ulp below the exact
// one; midpoints of gaps wider than two ulps are unambiguous).
// ---------------------------------------------------------------------------
std::string c11_presentation_eval() {
  std::mt19937_64 rng(4711);
  for (const NamedCloud& nc : planar_test_clouds()) {
    const PointCloud& cloud = nc.cloud;
    RhomboidTiling t = enumerate_rhomboids(cloud);
    SlicedTiling s = slice_tiling(t);
    const BigradedComplex models[2] = {build_rhomb(t), build_srhomb(s)};
    for (const BigradedComplex& c : models) {
      for (int i = 0; i <= 1; ++i) {
        FirepDocument doc = assemble_firep(c, i);
        std::vector<Rat> xs;
        for (const auto& deg : doc.degrees)
          for (const FirepGen& g : deg) xs.push_back(g.x);
        std::sort(xs.begin(), xs.end());
        xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
        std::vector<Rat> pool;
        if (!xs.empty() && xs.front() > 0) pool.push_back(xs.front() / 2);
        for (size_t j = 0; j + 1 < xs.size(); ++j) {
          const double lo = rat_to_double(xs[j]), hi = rat_to_double(xs[j + 1]);
          if (hi - lo < 2 * std::ldexp(1.0, std::ilogb(hi) - 52)) continue;
          pool.push_back((xs[j] + xs[j + 1]) / 2);
        }
        if (!xs.empty()) pool.push_back(xs.back() + 1);
        if (pool.empty()) return "cloud " + nc.name + ": empty radius pool";
        for (int probe = 0; probe < 20; ++probe) {
          const Rat& x = pool[rng() % pool.size()];
          const int k = 1 + static_cast<int>(rng() % static_cast<uint64_t>(doc.k_max));
          const int64_t want = betti_at_grade(c, x * x, k, i);
          const int64_t got = firep_eval(doc, x, k);
          if (got != want)
            return "cloud " + nc.name + ", model " + model_name(c.tag) + ": presentation eval " +
                   std::to_string(got) + " != beta_" + std::to_string(i) + " = " +
                   std::to_string(want) + " at (x=" + x.get_str() + ", k=" + std::to_string(k) +
                   ")";
        }
      }
    }
  }
  return "";
}

// ---------------------------------------------------------------------------
// Check 12: k-nearest-neighbor sets of sampled query points appear among the
// tiling's combinatorial vertices (over 10^4 sets in total). Budget 60 s.
// ---------------------------------------------------------------------------
std::string c12_knn_vertices() {
  std::mt19937_64 rng(2026);
  uint64_t total = 0;
  for (const NamedCloud& nc : planar_test_clouds()) {
    const PointCloud& cloud = nc.cloud;
    const uint32_t n = cloud.size();
    RhomboidTiling t = enumerate_rhomboids(cloud);
    uint32_t done = 0;
    while (done < 500) {
      Point q{rat_from_double(1.4 * ((rng() >> 11) * 0x1p-53) - 0.2),
              rat_from_double(1.4 * ((rng() >> 11) * 0x1p-53) - 0.2), Rat(0)};
      std::vector<std::pair<Rat, uint32_t>> order;
      for (uint32_t i = 0; i < n; ++i) order.emplace_back(cloud.dist_sq(i, q), i);
      std::sort(order.begin(), order.end());
      bool tie = false;
      for (uint32_t i = 0; i + 1 < n; ++i) tie |= order[i].first == order[i + 1].first;
      if (tie) continue;  // ambiguous neighbor set; resample
      ++done;
      SiteSet prefix;
      for (uint32_t k = 1; k <= n; ++k) {
        prefix.push_back(order[k - 1].second);
        SiteSet sorted = prefix;
        std::sort(sorted.begin(), sorted.end());
        if (t.vertex_id(sorted) < 0)
          return "cloud " + nc.name + ": the " + std::to_string(k) +
                 "-nearest-neighbor set of a sampled query is not a tiling vertex";
        ++total;
      }
    }
  }
  if (total < 10000)
    return "only " + std::to_string(total) + " neighbor sets sampled (need 10^4)";
  return "";
}

// ---------------------------------------------------------------------------

struct Check {
  int id;
  const char* title;
  double budget;  // seconds; 0 = no wall-clock requirement
  std::string (*run)();
};

const Check kChecks[] = {
    {1, "five collinear sites: depth-range rhomboid, its vertices, top-cell count", 0,
     c1_collinear_sites},
    {2, "triangle: six-vertex slab and matching 5-simplex at the circumradius grade", 0,
     c2_triangle_slab},
    {3, "Betti agreement of all four models on a radius/depth grid", 60, c3_grid_agreement},
    {4, "fixed-depth barcodes match the brute-force nerve at every depth", 60,
     c4_barcode_agreement},
    {5, "frozen seven-point cloud: depth-3 hole invisible at depth 2", 0, c5_depth3_hole},
    {6, "tiling size bound and exact top-cell count across dimensions 1..3", 120,
     c6_size_bounds},
    {7, "simplicial model: dimension and per-layer maximal-simplex bounds", 0,
     c7_simplicial_bounds},
    {8, "boundary-of-boundary, Euler characteristic, vanishing high Betti numbers", 0,
     c8_structural},
    {9, "n=500, K=4: rhomboid presentation beats the sliced one by >= 10%", 120,
     c9_presentation_size},
    {10, "depth-4 tiling size scales linearly in n (250..1000)", 180, c10_linear_growth},
    {11, "presentation evaluation matches Betti numbers at random grades", 0,
     c11_presentation_eval},
    {12, "sampled k-nearest-neighbor sets appear among tiling vertices", 60,
     c12_knn_vertices},
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--list") == 0) {
      for (const Check& c : kChecks) std::printf("%2d  %s\n", c.id, c.title);
      return 0;
    }
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      only = std::atoi(argv[++i]);
      if (only < 1 || only > 12) {
        std::fprintf(stderr, "criterion must be in 1..12\n");
        return 2;
      }
      continue;
    }
    std::fprintf(stderr, "usage: %s [--criterion N] [--list]\n", argv[0]);
    return 2;
  }

  bool all_ok = true;
  for (const Check& c : kChecks) {
    if (only && c.id != only) continue;
    const auto start = Clock::now();
    std::string err;
    try {
      err = c.run();
    } catch (const std::exception& e) {
      err = std::string("exception: ") + e.what();
    }
    const double dt = std::chrono::duration<double>(Clock::now() - start).count();
    if (err.empty() && c.budget > 0 && dt > c.budget) {
      std::ostringstream os;
      os << "exceeded the " << c.budget << " s budget";
      err = os.str();
    }
    const bool ok = err.empty();
    all_ok = all_ok && ok;
    std::printf("[%s] criterion %2d: %s (%.1f s%s%s%s)\n", ok ? "PASS" : "FAIL", c.id, c.title,
                dt, c.budget > 0 ? ", budget " : "",
                c.budget > 0 ? (std::to_string(static_cast<int>(c.budget)) + " s").c_str() : "",
                ok ? "" : (" — " + err).c_str());
    std::fflush(stdout);
  }
  return all_ok ? 0 : 1;
}
