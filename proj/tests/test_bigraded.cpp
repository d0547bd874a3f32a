#include <doctest.h>

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <vector>

#include "mcov/bigraded.hpp"

using namespace mcov;

namespace {

PointCloud make_cloud(int dim, const std::vector<std::array<double, 3>>& pts) {
  std::vector<Point> sites;
  for (const auto& p : pts) {
    sites.push_back({rat_from_double(p[0]), rat_from_double(p[1]), rat_from_double(p[2])});
  }
  return PointCloud(dim, std::move(sites));
}

/** Right isoceles triangle used throughout: circumradius^2 = 2. */
PointCloud triangle() { return make_cloud(2, {{0, 0, 0}, {2, 0, 0}, {0, 2, 0}}); }

std::vector<int> fvec_at(const BigradedComplex& c, const Rat& r_sq, int k) {
  std::vector<int> f(static_cast<size_t>(c.top_dim()) + 1, 0);
  for (const BigradedCell& cell : c.cells) {
    if (cell.alive_at(r_sq, k)) f[cell.dim] += 1;
  }
  return f;
}

/** alive(cell) must imply alive(face) at every probed grade. */
void check_alive_closure(const BigradedComplex& c, const std::vector<Rat>& radii_sq,
                         int k_lo, int k_hi) {
  for (const Rat& r : radii_sq) {
    for (int k = k_lo; k <= k_hi; ++k) {
      for (const BigradedCell& cell : c.cells) {
        if (!cell.alive_at(r, k)) continue;
        for (uint32_t f : cell.boundary) {
          CAPTURE(k);
          REQUIRE(c.cells[f].alive_at(r, k));
        }
      }
    }
  }
}

std::vector<Rat> corner_radii(const BigradedComplex& c) {
  std::set<Rat> rs;
  for (const BigradedCell& cell : c.cells)
    for (const GradeCorner& g : cell.corners) rs.insert(g.r_sq);
  return std::vector<Rat>(rs.begin(), rs.end());
}

/** Key -> (sorted corner list) map, for comparing complexes structurally. */
std::map<std::vector<uint32_t>, std::vector<std::pair<Rat, int>>> grade_map(
    const BigradedComplex& c) {
  std::map<std::vector<uint32_t>, std::vector<std::pair<Rat, int>>> m;
  for (const BigradedCell& cell : c.cells) {
    std::vector<std::pair<Rat, int>> corners;
    for (const GradeCorner& g : cell.corners) corners.emplace_back(g.r_sq, g.k);
    std::sort(corners.begin(), corners.end());
    bool inserted = m.emplace(cell.key, std::move(corners)).second;
    REQUIRE(inserted);  // keys must be unique within a complex
  }
  return m;
}

}  // namespace

TEST_CASE("unsliced model of a triangle: grades and depth restrictions") {
  PointCloud c = triangle();
  RhomboidTiling t = enumerate_rhomboids(c);
  BigradedComplex rhomb = build_rhomb(t);

  CHECK(rhomb.cells.size() == 27);
  CHECK(rhomb.max_k == 3);
  CHECK(rhomb.top_dim() == 3);
  CHECK(model_name(rhomb.tag) == "rhomb");

  Rat big(100);
  SUBCASE("restriction sizes at full radius") {
    CHECK(fvec_at(rhomb, big, 1) == std::vector<int>{7, 9, 3, 0});
    CHECK(fvec_at(rhomb, big, 2) == std::vector<int>{4, 3, 0, 0});
    CHECK(fvec_at(rhomb, big, 3) == std::vector<int>{1, 0, 0, 0});
  }

  SUBCASE("restriction sizes at intermediate radii") {
    // At r = 0 and depth 1 only the three singleton vertices are present.
    CHECK(fvec_at(rhomb, Rat(0), 1) == std::vector<int>{3, 0, 0, 0});
    // At r^2 = 1 two of the three two-site vertices and four edges joined.
    CHECK(fvec_at(rhomb, Rat(1), 1) == std::vector<int>{5, 4, 0, 0});
    CHECK(fvec_at(rhomb, Rat(1), 2) == std::vector<int>{2, 0, 0, 0});
  }

  SUBCASE("every cell carries exactly one grade corner") {
    for (const BigradedCell& cell : rhomb.cells) {
      REQUIRE(cell.corners.size() == 1);
      CHECK(cell.corners[0].snap_index == -1);
    }
  }

  SUBCASE("faces are alive whenever their cofaces are") {
    check_alive_closure(rhomb, corner_radii(rhomb), 0, 4);
  }
}

TEST_CASE("sliced model of a triangle: grades and depth restrictions") {
  PointCloud c = triangle();
  RhomboidTiling t = enumerate_rhomboids(c);
  SlicedTiling s = slice_tiling(t);
  BigradedComplex srhomb = build_srhomb(s);

  CHECK(srhomb.cells.size() == 43);
  CHECK(srhomb.top_dim() == 3);

  Rat big(100);
  SUBCASE("restriction sizes at full radius") {
    CHECK(fvec_at(srhomb, big, 1) == std::vector<int>{7, 15, 11, 2});
    CHECK(fvec_at(srhomb, big, 2) == std::vector<int>{4, 6, 4, 1});
    CHECK(fvec_at(srhomb, big, 3) == std::vector<int>{1, 0, 0, 0});
  }

  SUBCASE("the middle slab of the top cell enters at the circumradius, depth 1") {
    // Its six vertices: the three singletons and the three pairs.
    std::vector<SiteSet> verts = {{0}, {0, 1}, {0, 2}, {1}, {1, 2}, {2}};
    int id = find_cell(srhomb, flatten_sets(verts));
    REQUIRE(id >= 0);
    const BigradedCell& slab = srhomb.cells[static_cast<size_t>(id)];
    CHECK(slab.dim == 3);
    CHECK(slab.max_depth == 2);
    REQUIRE(slab.corners.size() == 1);
    CHECK(slab.corners[0].r_sq == Rat(2));
    CHECK(slab.corners[0].k == 1);
  }

  SUBCASE("every cell carries exactly one grade corner") {
    for (const BigradedCell& cell : srhomb.cells) REQUIRE(cell.corners.size() == 1);
  }

  SUBCASE("faces are alive whenever their cofaces are") {
    check_alive_closure(srhomb, corner_radii(srhomb), 0, 4);
  }
}

TEST_CASE("simplicial model of a triangle") {
  PointCloud c = triangle();
  RhomboidTiling t = enumerate_rhomboids(c);
  SlicedTiling s = slice_tiling(t);
  BigradedComplex sdel = build_sdel(s);
  BigradedComplex srhomb = build_srhomb(s);

  SUBCASE("corner shapes: one corner, or two on adjacent depths") {
    for (const BigradedCell& cell : sdel.cells) {
      REQUIRE(cell.corners.size() >= 1);
      REQUIRE(cell.corners.size() <= 2);
      if (cell.corners.size() == 2) {
        CHECK(cell.corners[1].k == cell.corners[0].k - 1);
        CHECK(cell.corners[1].r_sq < cell.corners[0].r_sq);
      }
    }
  }

  SUBCASE("in practice every simplex here is single-corner") {
    // The lower-layer radius never beats the own-layer radius on this input;
    // the builder still computes both honestly.
    for (const BigradedCell& cell : sdel.cells) CHECK(cell.corners.size() == 1);
  }

  SUBCASE("boundary of boundary vanishes over GF(2)") {
    for (const BigradedCell& cell : sdel.cells) {
      if (cell.dim < 2) continue;
      std::map<uint32_t, int> parity;
      for (uint32_t f : cell.boundary)
        for (uint32_t g : sdel.cells[f].boundary) parity[g] ^= 1;
      for (auto& [g, p] : parity) {
        CAPTURE(g);
        CHECK(p == 0);
      }
    }
  }

  SUBCASE("facet counts follow the simplex dimension") {
    for (const BigradedCell& cell : sdel.cells) {
      if (cell.dim >= 1)
        CHECK(cell.boundary.size() == static_cast<size_t>(cell.dim) + 1);
    }
  }

  SUBCASE("each sliced cell injects as a simplex at a grade at most its own") {
    for (uint32_t id = 0; id < s.cell_count(); ++id) {
      const SlicedCell& sc = s.cell(id);
      int sid = find_cell(sdel, flatten_sets(sc.verts));
      REQUIRE(sid >= 0);
      const BigradedCell& simplex = sdel.cells[static_cast<size_t>(sid)];
      CHECK(simplex.dim == static_cast<int>(sc.verts.size()) - 1);
      CHECK(simplex.corners[0].k == sc.k_val());
      CHECK(simplex.corners[0].r_sq <= s.r_val(id));
    }
  }

  SUBCASE("the simplicial model is larger than the sliced one") {
    CHECK(sdel.cells.size() > srhomb.cells.size());
    CHECK(sdel.top_dim() == 5);  // the middle slab of the top cell has 6 vertices
  }

  SUBCASE("faces are alive whenever their cofaces are") {
    check_alive_closure(sdel, corner_radii(sdel), 0, 4);
  }

  SUBCASE("the subset-enumeration guard rejects oversized work") {
    CHECK_THROWS_AS(build_sdel(s, 10), GuardError);
  }
}

TEST_CASE("depth truncation of bigraded complexes") {
  PointCloud c = triangle();
  RhomboidTiling t = enumerate_rhomboids(c);
  BigradedComplex rhomb = build_rhomb(t);

  SUBCASE("invalid depth") {
    CHECK_THROWS_AS(truncate_complex(rhomb, 0), InputError);
  }

  SUBCASE("truncating at the site count is the identity") {
    BigradedComplex same = truncate_complex(rhomb, 3);
    CHECK(same.cells.size() == rhomb.cells.size());
    CHECK(grade_map(same) == grade_map(rhomb));
  }

  SUBCASE("truncating the complex matches building from the truncated tiling") {
    for (int K = 1; K <= 2; ++K) {
      BigradedComplex a = truncate_complex(rhomb, K);
      BigradedComplex b = build_rhomb(truncate_tiling(t, K));
      CAPTURE(K);
      CHECK(a.max_k == K);
      CHECK(grade_map(a) == grade_map(b));
    }
    CHECK(truncate_complex(rhomb, 1).cells.size() == 7);   // 4 vertices + 3 edges
    CHECK(truncate_complex(rhomb, 2).cells.size() == 19);  // 7 + 9 + 3
  }

  SUBCASE("truncated sliced and simplicial models stay face-closed") {
    SlicedTiling s = slice_tiling(t);
    for (int K = 1; K <= 3; ++K) {
      for (BigradedComplex whole : {build_srhomb(s), build_sdel(s)}) {
        BigradedComplex cut = truncate_complex(whole, K);
        for (const BigradedCell& cell : cut.cells) {
          CHECK(cell.max_depth <= K);
          for (uint32_t f : cell.boundary) REQUIRE(f < cut.cells.size());
        }
        check_alive_closure(cut, corner_radii(cut), 0, K + 1);
      }
    }
  }
}

TEST_CASE("snapping radii onto a uniform grid") {
  SUBCASE("two-value grid rounds 0.3 up to 0.9") {
    BigradedComplex c;
    c.tag = ModelTag::rhomb;
    for (const char* r : {"0", "0.09", "0.81"}) {  // squared radii 0, 0.3^2, 0.9^2
      BigradedCell cell;
      cell.dim = 0;
      cell.max_depth = 1;
      cell.corners = {GradeCorner{parse_decimal(r), 1, -1}};
      cell.key = {static_cast<uint32_t>(c.cells.size())};
      c.cells.push_back(cell);
    }
    BigradedComplex snapped = snap_grades(c, 2);
    CHECK(snapped.snapped);
    CHECK(snapped.snap_n == 2);
    CHECK(snapped.snap_r_max_sq == parse_decimal("0.81"));
    CHECK(snapped.cells[0].corners[0].r_sq == Rat(0));
    CHECK(snapped.cells[0].corners[0].snap_index == 0);
    CHECK(snapped.cells[1].corners[0].r_sq == parse_decimal("0.81"));
    CHECK(snapped.cells[1].corners[0].snap_index == 1);
    CHECK(snapped.cells[2].corners[0].r_sq == parse_decimal("0.81"));
    CHECK(snapped.cells[2].corners[0].snap_index == 1);
  }

  SUBCASE("ten-value grid on the triangle model") {
    PointCloud c = triangle();
    BigradedComplex rhomb = build_rhomb(enumerate_rhomboids(c));
    BigradedComplex snapped = snap_grades(rhomb, 10);
    CHECK(snapped.snap_r_max_sq == Rat(2));
    // Radii^2 in the model are {0, 1, 2}; grid values are (i * sqrt(2) / 9)^2.
    // r^2 = 1 needs the smallest i with 2 i^2 / 81 >= 1, i.e. i = 7.
    for (size_t id = 0; id < rhomb.cells.size(); ++id) {
      const Rat& orig = rhomb.cells[id].corners[0].r_sq;
      const GradeCorner& g = snapped.cells[id].corners[0];
      if (orig == Rat(0)) {
        CHECK(g.snap_index == 0);
        CHECK(g.r_sq == Rat(0));
      } else if (orig == Rat(1)) {
        CHECK(g.snap_index == 7);
        CHECK(g.r_sq == Rat(98, 81));
      } else {
        REQUIRE(orig == Rat(2));
        CHECK(g.snap_index == 9);
        CHECK(g.r_sq == Rat(2));
      }
    }
  }

  SUBCASE("cells never enter earlier after snapping") {
    PointCloud c = triangle();
    RhomboidTiling t = enumerate_rhomboids(c);
    SlicedTiling s = slice_tiling(t);
    BigradedComplex sdel = build_sdel(s);
    BigradedComplex snapped = snap_grades(sdel, 4);
    REQUIRE(snapped.cells.size() == sdel.cells.size());
    for (size_t id = 0; id < sdel.cells.size(); ++id) {
      for (int k = 0; k <= 3; ++k) {
        auto before = sdel.cells[id].entry_r(k);
        auto after = snapped.cells[id].entry_r(k);
        REQUIRE(before.has_value() == after.has_value());
        if (before) CHECK(*after >= *before);
      }
    }
  }

  SUBCASE("snapping can merge a two-corner cell into one corner") {
    BigradedComplex c;
    c.tag = ModelTag::sdel;
    BigradedCell cell;
    cell.dim = 0;
    cell.max_depth = 2;
    cell.corners = {GradeCorner{parse_decimal("0.81"), 2, -1},
                    GradeCorner{parse_decimal("0.09"), 1, -1}};
    cell.key = {0};
    c.cells.push_back(cell);
    BigradedComplex snapped = snap_grades(c, 2);
    REQUIRE(snapped.cells[0].corners.size() == 1);
    CHECK(snapped.cells[0].corners[0].k == 2);
    CHECK(snapped.cells[0].corners[0].r_sq == parse_decimal("0.81"));
  }

  SUBCASE("a grid needs at least two values") {
    PointCloud c = triangle();
    BigradedComplex rhomb = build_rhomb(enumerate_rhomboids(c));
    CHECK_THROWS_AS(snap_grades(rhomb, 1), InputError);
    CHECK_THROWS_AS(snap_grades(rhomb, 0), InputError);
  }
}
