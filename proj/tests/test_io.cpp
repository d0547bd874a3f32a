#include <doctest.h>

#include <filesystem>

#include "mcov/bigraded.hpp"
#include "mcov/homology.hpp"
#include "mcov/io.hpp"

using namespace mcov;

namespace {

PointCloud make_cloud(int dim, std::vector<std::vector<int>> coords) {
  std::vector<Point> pts;
  for (const auto& c : coords) {
    Point p{Rat(0), Rat(0), Rat(0)};
    for (size_t i = 0; i < c.size(); ++i) p[i] = Rat(c[i]);
    pts.emplace_back(std::move(p));
  }
  return PointCloud(dim, std::move(pts));
}

PointCloud triangle() { return make_cloud(2, {{0, 0}, {2, 0}, {0, 2}}); }

}  // namespace

TEST_CASE("point files parse to exact rationals") {
  SUBCASE("one coordinate per line") {
    PointCloud c = parse_points("0\n1\n2\n3\n4\n", 1);
    REQUIRE(c.size() == 5);
    CHECK(c.dim() == 1);
    CHECK(c.site(3)[0] == 3);
  }
  SUBCASE("comma separated") {
    PointCloud c = parse_points("0,0\n2,0\n0,2\n", 2);
    REQUIRE(c.size() == 3);
    CHECK(c.site(1)[0] == 2);
    CHECK(c.site(2)[1] == 2);
  }
  SUBCASE("decimals, exponents, rationals, comments, blank lines") {
    PointCloud c = parse_points("# header\n0.3, -1e-3\n\n  1/3\t2.5 # tail\n", 2);
    REQUIRE(c.size() == 2);
    CHECK(c.site(0)[0] == Rat(3, 10));
    CHECK(c.site(0)[1] == Rat(-1, 1000));
    CHECK(c.site(1)[0] == Rat(1, 3));
    CHECK(c.site(1)[1] == Rat(5, 2));
  }
  SUBCASE("errors name the line") {
    CHECK_THROWS_WITH_AS(parse_points("a,b\n", 2), doctest::Contains("line 1"), InputError);
    CHECK_THROWS_WITH_AS(parse_points("0,0\n1\n", 2), doctest::Contains("line 2"), InputError);
    CHECK_THROWS_WITH_AS(parse_points("0,0\n1,2,3\n", 2), doctest::Contains("line 2"),
                         InputError);
    CHECK_THROWS_AS(parse_points("# nothing\n", 2), InputError);
    CHECK_THROWS_AS(parse_points("1/0\n", 1), InputError);
    CHECK_THROWS_AS(parse_points("0,0\n", 4), InputError);
  }
}

TEST_CASE("written points read back exactly") {
  PointCloud c = parse_points("0.125 7\n-3.25 0.0001\n1/3 2\n", 2);
  std::string text = write_points(c);
  PointCloud back = parse_points(text, 2);
  REQUIRE(back.size() == c.size());
  for (uint32_t i = 0; i < c.size(); ++i)
    for (int x = 0; x < 2; ++x) CHECK(back.site(i)[x] == c.site(i)[x]);
  // Dyadic and decimal coordinates serialize as plain decimals.
  CHECK(text.find("0.125") != std::string::npos);
  // A non-decimal rational falls back to p/q, which the parser accepts.
  CHECK(text.find("1/3") != std::string::npos);
}

TEST_CASE("tiling JSON round-trips") {
  PointCloud cloud = triangle();
  RhomboidTiling t = enumerate_rhomboids(cloud);
  std::string text = write_tiling_json(t);
  CHECK(text == write_tiling_json(t));  // byte determinism

  TilingRecord parsed = parse_tiling_json(text);
  TilingRecord direct = tiling_record(t);
  CHECK(parsed == direct);
  REQUIRE(parsed.cells.size() == 27);
  CHECK(parsed.n == 3);
  CHECK(parsed.dim == 2);
  CHECK(parsed.mode == "full");

  // Spot-check content: every facet id points below the cell, the unique
  // top cell has x_on = {0,1,2}, and its squared radius is the circumradius
  // squared (the triangle (0,0),(2,0),(0,2) has circumradius sqrt(2)).
  const TilingCellRecord& top = parsed.cells.back();
  CHECK(top.dim == 3);
  CHECK(top.x_on == SiteSet{0, 1, 2});
  CHECK(top.k_min == 0);
  CHECK(top.k_max == 3);
  CHECK(top.facets.size() == 6);
  for (const TilingCellRecord& cell : parsed.cells)
    for (uint32_t f : cell.facets) CHECK(f < cell.id);
  bool saw_sqrt2 = false;
  for (const TilingCellRecord& cell : parsed.cells)
    if (cell.r_sq == Rat(2) && cell.dim == 0) saw_sqrt2 = true;
  CHECK(saw_sqrt2);
}

TEST_CASE("tiling JSON rejects malformed documents") {
  PointCloud cloud = triangle();
  RhomboidTiling t = enumerate_rhomboids(cloud);
  std::string good = write_tiling_json(t);
  CHECK_THROWS_AS(parse_tiling_json("{"), InputError);
  CHECK_THROWS_AS(parse_tiling_json("{}"), InputError);
  std::string bad_marker = good;
  bad_marker.replace(bad_marker.find("rhomboid-tiling"), 15, "something-else!");
  CHECK_THROWS_AS(parse_tiling_json(bad_marker), InputError);
  std::string bad_field = good;
  bad_field.replace(bad_field.find("\"k_min\""), 7, "\"kxmin\"");
  CHECK_THROWS_AS(parse_tiling_json(bad_field), InputError);
}

TEST_CASE("support-mode tilings serialize with the facets they have") {
  PointCloud cloud = make_cloud(1, {{0}, {2}, {5}, {9}});
  RhomboidTiling support = enumerate_rhomboids(cloud, 1);
  TilingRecord rec = parse_tiling_json(write_tiling_json(support));
  REQUIRE(rec.mode == "support");
  // Depth-truncated enumeration drops some deep faces, so cells may list
  // fewer than 2*dim facets — but never an id at or above their own.
  for (const TilingCellRecord& cell : rec.cells) {
    CHECK(static_cast<int>(cell.facets.size()) <= 2 * cell.dim);
    for (uint32_t f : cell.facets) CHECK(f < cell.id);
  }
}

TEST_CASE("Hilbert CSV round-trips") {
  PointCloud cloud = triangle();
  RhomboidTiling t = enumerate_rhomboids(cloud);
  BigradedComplex c = build_rhomb(t);
  HilbertGrid grid = hilbert(c, {Rat(0), Rat(1), Rat(4)}, {1, 2, 3}, {0, 1});
  std::string text = write_hilbert_csv(grid);
  CHECK(text.substr(0, 15) == "r,k,dim,betti\n0");

  std::vector<HilbertRow> rows = parse_hilbert_csv(text);
  REQUIRE(rows.size() == 3 * 3 * 2);
  CHECK(write_hilbert_csv(rows) == text);  // parse -> write is the identity
  // r=0, k=1, dim=0 row: the three singleton vertices stand alone.
  CHECK(rows[0].r == "0");
  CHECK(rows[0].k == 1);
  CHECK(rows[0].dim == 0);
  CHECK(rows[0].betti == 3);
  // r=2 (squared 4), k=1: everything merged.
  CHECK(rows.back().r == "2");
  CHECK(rows.back().k == 3);
  CHECK(rows.back().dim == 1);
  CHECK(rows.back().betti == 0);

  CHECK_THROWS_WITH_AS(parse_hilbert_csv("radius,k,dim,betti\n"), doctest::Contains("header"),
                       InputError);
  CHECK_THROWS_WITH_AS(parse_hilbert_csv("r,k,dim,betti\n1,2\n"), doctest::Contains("line 2"),
                       InputError);
  CHECK_THROWS_AS(parse_hilbert_csv("r,k,dim,betti\n1,0,0,5\n"), InputError);
  CHECK_THROWS_AS(parse_hilbert_csv(""), InputError);
}

TEST_CASE("barcode text round-trips") {
  PointCloud cloud = triangle();
  RhomboidTiling t = enumerate_rhomboids(cloud);
  BigradedComplex c = build_rhomb(t);
  Barcode bc = barcode_fixed_k(c, 1, 1);
  std::string text = write_barcode(bc);
  // Three components at depth 1: two merge at radius 1, one lives forever.
  CHECK(text == "0 0 1\n0 0 1\n0 0 inf\n");
  std::vector<BarcodeLine> lines = parse_barcode(text);
  REQUIRE(lines.size() == 3);
  CHECK(write_barcode(lines) == text);
  CHECK(lines[2].death == "inf");

  CHECK_THROWS_WITH_AS(parse_barcode("0 0\n"), doctest::Contains("line 1"), InputError);
  CHECK_THROWS_AS(parse_barcode("0 0 1 7\n"), InputError);
  CHECK_THROWS_AS(parse_barcode("-1 0 1\n"), InputError);
  CHECK_THROWS_AS(parse_barcode("0 zero inf\n"), InputError);
  CHECK(parse_barcode("").empty());
}

TEST_CASE("PGM images encode ranks as darkness") {
  SUBCASE("shading rule") {
    PgmImage img = rank_image({{0, 1}, {2, 4}}, 4);
    REQUIRE(img.width == 2);
    REQUIRE(img.height == 2);
    CHECK(img.samples == std::vector<int>{255, 191, 128, 0});
  }
  SUBCASE("zero grid is all white") {
    PgmImage img = rank_image({{0, 0, 0}, {0, 0, 0}}, 1);
    for (int s : img.samples) CHECK(s == 255);
  }
  SUBCASE("rank 1 never bleaches to white") {
    PgmImage img = rank_image({{1}}, 1000);
    CHECK(img.samples[0] == 254);
  }
  SUBCASE("saturation clamps") {
    PgmImage img = rank_image({{9, 100}}, 3);
    CHECK(img.samples == std::vector<int>{0, 0});
  }
  SUBCASE("text round-trip and line discipline") {
    std::vector<std::vector<int64_t>> wide(3, std::vector<int64_t>(40));
    for (size_t y = 0; y < wide.size(); ++y)
      for (size_t x = 0; x < wide[y].size(); ++x) wide[y][x] = (x + y) % 7;
    std::string text = write_pgm(wide, 6);
    PgmImage back = parse_pgm(text);
    CHECK(back == rank_image(wide, 6));
    size_t start = 0;
    while (start < text.size()) {
      size_t end = text.find('\n', start);
      REQUIRE(end != std::string::npos);
      CHECK(end - start <= 70);
      start = end + 1;
    }
  }
  SUBCASE("malformed documents are rejected") {
    CHECK_THROWS_AS(parse_pgm("P5\n1 1\n255\n0\n"), InputError);
    CHECK_THROWS_AS(parse_pgm("P2\n2 1\n255\n0\n"), InputError);
    CHECK_THROWS_AS(parse_pgm("P2\n1 1\n255\n256\n"), InputError);
    CHECK_THROWS_AS(rank_image({{0}, {0, 1}}, 1), InputError);
    CHECK_THROWS_AS(rank_image({{-1}}, 1), InputError);
    CHECK_THROWS_AS(rank_image({{1}}, 0), InputError);
  }
}

TEST_CASE("text files write and read back") {
  namespace fs = std::filesystem;
  fs::path p = fs::temp_directory_path() / "mcov_io_test.txt";
  write_text_file(p.string(), "hello\n");
  CHECK(read_text_file(p.string()) == "hello\n");
  fs::remove(p);
  CHECK_THROWS_AS(read_text_file(p.string()), InputError);
}
