#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mcov/bigraded.hpp"
#include "mcov/homology.hpp"
#include "mcov/rhomboid.hpp"

namespace mcov {

// ---------------------------------------------------------------------------
// Point lists
// ---------------------------------------------------------------------------

/**
 * Parses a point list: one point per line, coordinates separated by
 * whitespace or commas, `#` starts a comment, blank lines skipped. Numbers
 * are decimal literals converted exactly to rationals; a `p/q` rational is
 * also accepted. Every point must have exactly `dim` coordinates. Errors
 * name the offending line.
 */
PointCloud parse_points(const std::string& text, int dim);
PointCloud parse_points_file(const std::string& path, int dim);

/**
 * Writes one point per line, coordinates space-separated, as exact decimals
 * when the denominator allows one (always true for parsed or generated
 * clouds) and as `p/q` otherwise. parse_points reads the output back
 * exactly.
 */
std::string write_points(const PointCloud& cloud);

// ---------------------------------------------------------------------------
// Tiling JSON
// ---------------------------------------------------------------------------

struct TilingCellRecord {
  uint32_t id = 0;
  SiteSet x_in;
  SiteSet x_on;
  int dim = 0;
  std::string r;  // radius, 17 significant digits
  Rat r_sq;       // exact squared radius
  int k_min = 0;
  int k_max = 0;
  std::vector<uint32_t> facets;

  bool operator==(const TilingCellRecord&) const = default;
};

struct TilingRecord {
  uint32_t n = 0;
  int dim = 0;
  std::string mode;  // "full" | "support" | "truncated"
  int level = -1;
  std::vector<TilingCellRecord> cells;

  bool operator==(const TilingRecord&) const = default;
};

/** The record write_tiling_json serializes (facet ids that fall outside a
 *  support-mode tiling are omitted; full/truncated tilings list all). */
TilingRecord tiling_record(const RhomboidTiling& t);

std::string write_tiling_json(const RhomboidTiling& t);
TilingRecord parse_tiling_json(const std::string& text);

// ---------------------------------------------------------------------------
// Hilbert-function CSV
// ---------------------------------------------------------------------------

struct HilbertRow {
  std::string r;  // radius as printed
  int k = 0;
  int dim = 0;
  int64_t betti = 0;

  bool operator==(const HilbertRow&) const = default;
};

/** CSV with header `r,k,dim,betti`, rows ordered radius -> k -> dim. */
std::string write_hilbert_csv(const HilbertGrid& grid);
std::string write_hilbert_csv(const std::vector<HilbertRow>& rows);
std::vector<HilbertRow> parse_hilbert_csv(const std::string& text);

// ---------------------------------------------------------------------------
// Barcode text
// ---------------------------------------------------------------------------

struct BarcodeLine {
  int dim = 0;
  std::string birth;
  std::string death;  // "inf" for an unbounded bar

  bool operator==(const BarcodeLine&) const = default;
};

/** One line per bar: `<dim> <birth> <death|inf>`, radii with 17 significant
 *  digits, dimensions ascending. */
std::string write_barcode(const Barcode& barcode);
std::string write_barcode(const std::vector<BarcodeLine>& lines);
std::vector<BarcodeLine> parse_barcode(const std::string& text);

// ---------------------------------------------------------------------------
// PGM rank images
// ---------------------------------------------------------------------------

struct PgmImage {
  int width = 0;
  int height = 0;
  int maxval = 255;
  std::vector<int> samples;  // row-major

  bool operator==(const PgmImage&) const = default;
};

/**
 * Renders a grid of ranks (rows[y][x], all rows equal length) as an ASCII
 * PGM: rank 0 is white, darkness grows with the rank, ranks at or above
 * `saturate` are black, and any positive rank stays visibly non-white.
 */
PgmImage rank_image(const std::vector<std::vector<int64_t>>& rows, int64_t saturate);
std::string write_pgm(const PgmImage& img);
std::string write_pgm(const std::vector<std::vector<int64_t>>& rows, int64_t saturate);
PgmImage parse_pgm(const std::string& text);

// ---------------------------------------------------------------------------
// Small file helpers
// ---------------------------------------------------------------------------

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace mcov
