#include <doctest.h>

#include <filesystem>

#include "mcov/firep.hpp"
#include "mcov/pipeline.hpp"

using namespace mcov;
namespace fs = std::filesystem;

namespace {

std::string fresh_dir(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("mcov_pipe_" + name);
  fs::remove_all(p);
  return p.string();
}

RunConfig gen_config(Command cmd, GenKind kind, uint32_t n, uint64_t seed,
                     const std::string& out) {
  RunConfig cfg;
  cfg.cmd = cmd;
  GeneratorSpec gen;
  gen.kind = kind;
  gen.n = n;
  gen.seed = seed;
  cfg.gen = gen;
  cfg.dim = kind == GenKind::uniform_cube ? 3 : 2;
  cfg.out_dir = out;
  return cfg;
}

std::string triangle_file(const std::string& dir) {
  fs::create_directories(dir);
  std::string path = (fs::path(dir) / "tri.txt").string();
  write_text_file(path, "0,0\n2,0\n0,2\n");
  return path;
}

}  // namespace

TEST_CASE("generate writes a reproducible point file") {
  std::string out = fresh_dir("gen");
  RunConfig cfg = gen_config(Command::generate, GenKind::uniform_square, 12, 5, out);
  RunResult r1 = run_pipeline(cfg);
  REQUIRE(r1.files.size() == 1);
  CHECK(r1.files[0].ends_with("points.txt"));
  std::string first = read_text_file(r1.files[0]);
  PointCloud cloud = parse_points(first, 2);
  CHECK(cloud.size() == 12);
  // Same config, same bytes.
  RunResult r2 = run_pipeline(cfg);
  CHECK(read_text_file(r2.files[0]) == first);
  fs::remove_all(out);
}

TEST_CASE("tiling and stats commands describe the triangle") {
  std::string out = fresh_dir("tistats");
  std::string points = triangle_file(out);
  RunConfig cfg;
  cfg.cmd = Command::tiling;
  cfg.points_path = points;
  cfg.dim = 2;
  cfg.out_dir = out;
  RunResult rt = run_pipeline(cfg);
  TilingRecord rec = parse_tiling_json(read_text_file(rt.files[0]));
  CHECK(rec.cells.size() == 27);

  cfg.cmd = Command::stats;
  RunResult rs = run_pipeline(cfg);
  CHECK(rs.report.find("total cells: 27") != std::string::npos);
  CHECK(rs.report.find("top cells: 1") != std::string::npos);
  std::string json = read_text_file(rs.files[0]);
  CHECK(json.find("\"total_cells\": 27") != std::string::npos);
  CHECK(json.find("\"bound_ok\": true") != std::string::npos);
  fs::remove_all(out);
}

TEST_CASE("betti grids agree with the frozen triangle profile") {
  std::string out = fresh_dir("betti");
  std::string points = triangle_file(out);
  RunConfig cfg;
  cfg.cmd = Command::betti;
  cfg.points_path = points;
  cfg.dim = 2;
  cfg.out_dir = out;
  cfg.r_grid = RGridSpec{Rat(0), Rat(2), 3};  // radii 0, 1, 2
  cfg.k_range = {{1, 3}};
  cfg.hom_dims = {0, 1};
  RunResult r = run_pipeline(cfg);
  auto rows = parse_hilbert_csv(read_text_file(r.files[0]));
  REQUIRE(rows.size() == 3 * 3 * 2);
  auto betti_at = [&](const std::string& radius, int k, int dim) {
    for (const HilbertRow& row : rows)
      if (row.r == radius && row.k == k && row.dim == dim) return row.betti;
    REQUIRE(false);
    return int64_t(-1);
  };
  CHECK(betti_at("0", 1, 0) == 3);
  CHECK(betti_at("1", 1, 0) == 1);
  CHECK(betti_at("1", 2, 0) == 2);
  CHECK(betti_at("2", 3, 0) == 1);
  CHECK(betti_at("2", 1, 1) == 0);

  SUBCASE("the nerve oracle model produces the same grid") {
    cfg.model = ModelTag::cech_oracle;
    cfg.out_dir = out + "_oracle";
    RunResult ro = run_pipeline(cfg);
    CHECK(read_text_file(ro.files[0]) == read_text_file(r.files[0]));
    fs::remove_all(cfg.out_dir);
  }
  fs::remove_all(out);
}

TEST_CASE("hilbert command writes a CSV and one PGM per dimension") {
  std::string out = fresh_dir("hilb");
  std::string points = triangle_file(out);
  RunConfig cfg;
  cfg.cmd = Command::hilbert;
  cfg.points_path = points;
  cfg.dim = 2;
  cfg.out_dir = out;
  cfg.snap = 10;
  cfg.hom_dims = {0, 1};
  cfg.r_grid = RGridSpec{Rat(0), Rat(2), 8};
  RunResult r = run_pipeline(cfg);
  REQUIRE(r.files.size() == 3);
  CHECK(r.files[0].ends_with("hilbert.csv"));
  CHECK(r.files[1].ends_with("hilbert_dim0.pgm"));
  CHECK(r.files[2].ends_with("hilbert_dim1.pgm"));
  PgmImage img = parse_pgm(read_text_file(r.files[1]));
  CHECK(img.width == 8);   // radii
  CHECK(img.height == 3);  // depths 1..3
  // beta_1 of a triangle is 0 at every grade: its image is pure white.
  PgmImage flat = parse_pgm(read_text_file(r.files[2]));
  for (int s : flat.samples) CHECK(s == 255);
  // Determinism, byte for byte.
  RunResult again = run_pipeline(cfg);
  CHECK(read_text_file(again.files[1]) == read_text_file(r.files[1]));
  fs::remove_all(out);
}

TEST_CASE("barcode command writes one file per depth") {
  std::string out = fresh_dir("bars");
  std::string points = triangle_file(out);
  RunConfig cfg;
  cfg.cmd = Command::barcode;
  cfg.points_path = points;
  cfg.dim = 2;
  cfg.out_dir = out;
  cfg.hom_dims = {0, 1};
  RunResult r = run_pipeline(cfg);
  REQUIRE(r.files.size() == 3);
  CHECK(read_text_file(r.files[0]) == "0 0 1\n0 0 1\n0 0 inf\n");
  CHECK(read_text_file(r.files[1]) == "0 1 1.4142135623730951\n0 1 inf\n");
  CHECK(read_text_file(r.files[2]) == "0 1.4142135623730951 inf\n");
  fs::remove_all(out);
}

TEST_CASE("firep command emits the documented generator counts") {
  std::string out = fresh_dir("firep");
  std::string points = triangle_file(out);
  RunConfig cfg;
  cfg.cmd = Command::firep;
  cfg.points_path = points;
  cfg.dim = 2;
  cfg.out_dir = out;
  cfg.hom_dims = {1};
  cfg.snap = 0;
  RunResult r = run_pipeline(cfg);
  REQUIRE(r.files.size() == 1);
  FirepDocument doc = parse_firep(read_text_file(r.files[0]));
  CHECK(doc.degrees[0].size() == 3);
  CHECK(doc.degrees[1].size() == 9);
  CHECK(doc.degrees[2].size() == 7);
  CHECK(r.report.find("3 9 7") != std::string::npos);

  SUBCASE("multi-critical models are refused") {
    cfg.model = ModelTag::sdel;
    try {
      run_pipeline(cfg);
      REQUIRE(false);
    } catch (const PipelineError& e) {
      CHECK(e.category() == PipelineError::Category::input);
      CHECK(std::string(e.what()).find("unsupported model") != std::string::npos);
    }
  }
  fs::remove_all(out);
}

TEST_CASE("validate cross-checks the models on a random cloud") {
  std::string out = fresh_dir("val");
  RunConfig cfg = gen_config(Command::validate, GenKind::uniform_square, 6, 11, out);
  RunResult r = run_pipeline(cfg);
  CHECK(r.report.find("checks passed") != std::string::npos);
  CHECK(r.report.find("nerve oracle included") != std::string::npos);
  REQUIRE(r.files.size() == 1);
  CHECK(read_text_file(r.files[0]) == r.report);
  fs::remove_all(out);
}

TEST_CASE("validate agrees across models under a depth cap") {
  // Regression: the depth-capped rhomboid model once kept only cells with
  // all vertex depths <= K, whose homology degenerates near the cap (a
  // spurious 1-cycle at k = 2 on exactly this annulus); queries now come
  // from the padded window. The oracle keeps this check honest.
  std::string out = fresh_dir("val_capped");
  RunConfig cfg = gen_config(Command::validate, GenKind::annulus, 12, 7, out);
  cfg.gen->err = Rat(1, 100);
  cfg.max_k = 3;
  RunResult r = run_pipeline(cfg);
  CHECK(r.report.find("depths 1..3") != std::string::npos);
  CHECK(r.report.find("nerve oracle included") != std::string::npos);
  CHECK(r.report.find("checks passed") != std::string::npos);
  fs::remove_all(out);
}

TEST_CASE("pipeline failures name their stage and clean up") {
  SUBCASE("missing input file") {
    RunConfig cfg;
    cfg.cmd = Command::betti;
    cfg.points_path = "/nonexistent/points.txt";
    try {
      run_pipeline(cfg);
      REQUIRE(false);
    } catch (const PipelineError& e) {
      CHECK(e.stage() == "input");
      CHECK(e.category() == PipelineError::Category::input);
    }
  }
  SUBCASE("k-range beyond the depth cap") {
    std::string out = fresh_dir("krange");
    std::string points = triangle_file(out);
    RunConfig cfg;
    cfg.cmd = Command::betti;
    cfg.points_path = points;
    cfg.out_dir = out;
    cfg.k_range = {{1, 7}};
    CHECK_THROWS_AS(run_pipeline(cfg), PipelineError);
    fs::remove_all(out);
  }
  SUBCASE("full tiling of a large cloud trips the guard") {
    std::string out = fresh_dir("guard");
    RunConfig cfg = gen_config(Command::betti, GenKind::uniform_square, 300, 1, out);
    try {
      run_pipeline(cfg);
      REQUIRE(false);
    } catch (const PipelineError& e) {
      CHECK(e.category() == PipelineError::Category::guard);
      CHECK(std::string(e.what()).find("--max-k") != std::string::npos);
    }
    fs::remove_all(out);
  }
  SUBCASE("unwritable output directory removes partial artifacts") {
    std::string out = fresh_dir("clobber");
    fs::create_directories(out);
    std::string blocker = (fs::path(out) / "blocked").string();
    write_text_file(blocker, "file, not a directory\n");
    RunConfig cfg = gen_config(Command::generate, GenKind::uniform_square, 5, 2, blocker);
    try {
      run_pipeline(cfg);
      REQUIRE(false);
    } catch (const PipelineError& e) {
      CHECK(e.stage() == "output");
    }
    CHECK(fs::is_regular_file(blocker));  // untouched
    fs::remove_all(out);
  }
}

TEST_CASE("truncated pipelines use the depth cap consistently") {
  std::string out = fresh_dir("trunc");
  RunConfig cfg = gen_config(Command::stats, GenKind::uniform_square, 30, 3, out);
  cfg.max_k = 2;
  RunResult r = run_pipeline(cfg);
  CHECK(r.report.find("mode=truncated level=2") != std::string::npos);

  cfg.cmd = Command::betti;
  cfg.model = ModelTag::srhomb;
  cfg.hom_dims = {0};
  cfg.r_grid = RGridSpec{Rat(0), Rat(1, 10), 2};
  RunResult rb = run_pipeline(cfg);
  auto rows = parse_hilbert_csv(read_text_file(rb.files[rb.files.size() - 1]));
  // Depths 1..2 only: the cap bounds the k range.
  for (const HilbertRow& row : rows) CHECK(row.k <= 2);
  CHECK(rows[0].betti == 30);  // r=0, k=1: every site its own component
  fs::remove_all(out);
}
