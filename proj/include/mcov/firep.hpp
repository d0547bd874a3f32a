#pragma once

#include <array>
#include <string>
#include <vector>

#include "mcov/bigraded.hpp"

namespace mcov {

/** One generator line of a FIREP document. */
struct FirepGen {
  std::string x_text;              // exactly as printed in the file
  Rat x;                           // exact value of x_text (radius, or grid index)
  int y = 0;                       // k_max - k, nonnegative
  std::vector<uint32_t> boundary;  // sorted indices into the next-lower degree
};

/**
 * A free implicit representation of homology in one dimension i: generator
 * lists in degrees i+1, i, i-1 with bigrades and boundary matrices. The x
 * axis is the radius (or the grid index once snapped); the y axis is
 * k_max - k so that both axes increase along the bifiltration order.
 */
struct FirepDocument {
  std::string x_label;  // "radius" or "radius-index"
  std::string y_label;  // "codepth (K_max=<k_max>)"
  int k_max = 0;
  bool snapped = false;
  std::array<std::vector<FirepGen>, 3> degrees;  // [0]: i+1, [1]: i, [2]: i-1
};

/**
 * Extracts the dimension-i FIREP from a 1-critical complex: generators are
 * the cells of dimensions i+1, i, i-1 whose grade has depth >= 1 (cells
 * graded at depth 0 are never present at a queryable grade, and faces never
 * sit at a lower depth than their cofaces, so the restriction stays closed).
 *
 * The multi-critical simplicial model is rejected; 0 <= i < top dimension.
 */
FirepDocument assemble_firep(const BigradedComplex& c, int i);

/** Serializes a document in the exact line grammar (parse round-trips it). */
std::string write_firep(const FirepDocument& f);

/**
 * Parses a document, validating the grammar strictly (header lines, counts,
 * sorted in-range boundary indices). Throws InputError with a line number.
 */
FirepDocument parse_firep(const std::string& text);

/**
 * dim H_i at the grade (x, k): number of middle-degree generators alive at
 * (x, k) minus the GF(2) ranks of the two boundary matrices restricted to
 * alive generators. x is measured on the document's own axis: a radius for
 * plain documents, a grid index for snapped ones.
 */
int64_t firep_eval(const FirepDocument& f, const Rat& x, int k);

}  // namespace mcov
