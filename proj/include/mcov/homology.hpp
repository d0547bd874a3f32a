#pragma once

#include <optional>
#include <vector>

#include "mcov/bigraded.hpp"

namespace mcov {

/**
 * Rank of a GF(2) matrix given as columns of strictly increasing row
 * indices. Standard left-to-right column reduction on the lowest entry.
 */
uint32_t gf2_rank(std::vector<std::vector<uint32_t>> columns);

/**
 * Betti number beta_i of the subcomplex alive at (r^2, k):
 * #alive i-cells − rank(∂_i over alive cells) − rank(∂_{i+1} over alive cells).
 */
int64_t betti_at_grade(const BigradedComplex& c, const Rat& r_sq, int k, int i);

/** One persistence interval, radii squared; no death = infinite bar. */
struct Bar {
  Rat birth_sq;
  std::optional<Rat> death_sq;
};

/** Bars grouped by homology dimension (index = dimension). */
using Barcode = std::vector<std::vector<Bar>>;

/**
 * Standard 1-parameter persistence of the r-filtration at fixed depth k,
 * for dimensions 0..max_i. Cells enter at their layer-k radius; ties are
 * ordered by (radius, dimension, canonical key). Empty bars are dropped;
 * within each dimension bars are sorted by (birth, death), finite first.
 */
Barcode barcode_fixed_k(const BigradedComplex& c, int k, int max_i);

/** Betti numbers on a product grid, evaluated independently per grade. */
struct HilbertGrid {
  std::vector<Rat> r_grid_sq;  // ascending squared radii
  std::vector<int> k_values;   // ascending depths
  std::vector<int> dims;       // homology dimensions
  std::vector<int64_t> values; // [ri * |k| * |d| + ki * |d| + di]

  int64_t at(size_t ri, size_t ki, size_t di) const {
    return values[(ri * k_values.size() + ki) * dims.size() + di];
  }
};

HilbertGrid hilbert(const BigradedComplex& c, std::vector<Rat> r_grid_sq,
                    std::vector<int> k_values, std::vector<int> dims);

}  // namespace mcov
