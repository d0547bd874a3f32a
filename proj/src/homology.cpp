#include "mcov/homology.hpp"

#include <algorithm>
#include <cstdint>
#include <unordered_map>

#include "mcov/common.hpp"

namespace mcov {

namespace {

/** XOR (symmetric difference) of two sorted index lists. */
std::vector<uint32_t> xor_columns(const std::vector<uint32_t>& a,
                                  const std::vector<uint32_t>& b) {
  std::vector<uint32_t> out;
  out.reserve(a.size() + b.size());
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(),
                                std::back_inserter(out));
  return out;
}

}  // namespace

uint32_t gf2_rank(std::vector<std::vector<uint32_t>> columns) {
  // pivot row -> index into `reduced` of the column owning that pivot
  std::unordered_map<uint32_t, size_t> pivot_owner;
  std::vector<std::vector<uint32_t>> reduced;
  reduced.reserve(columns.size());
  uint32_t rank = 0;
  for (auto& col : columns) {
    while (!col.empty()) {
      auto it = pivot_owner.find(col.back());
      if (it == pivot_owner.end()) break;
      col = xor_columns(col, reduced[it->second]);
    }
    if (!col.empty()) {
      pivot_owner.emplace(col.back(), reduced.size());
      reduced.push_back(std::move(col));
      ++rank;
    }
  }
  return rank;
}

int64_t betti_at_grade(const BigradedComplex& c, const Rat& r_sq, int k, int i) {
  if (i < 0) throw InputError("homology dimension must be nonnegative");
  std::vector<char> alive(c.cells.size(), 0);
  for (size_t id = 0; id < c.cells.size(); ++id)
    alive[id] = c.cells[id].alive_at(r_sq, k) ? 1 : 0;

  int64_t count_i = 0;
  std::vector<std::vector<uint32_t>> cols_i;    // boundaries of alive i-cells
  std::vector<std::vector<uint32_t>> cols_ip1;  // boundaries of alive (i+1)-cells
  for (size_t id = 0; id < c.cells.size(); ++id) {
    if (!alive[id]) continue;
    const BigradedCell& cell = c.cells[id];
    if (cell.dim == i) {
      ++count_i;
      if (i > 0) cols_i.push_back(cell.boundary);
    } else if (cell.dim == i + 1) {
      cols_ip1.push_back(cell.boundary);
    }
  }
  int64_t rank_i = gf2_rank(std::move(cols_i));
  int64_t rank_ip1 = gf2_rank(std::move(cols_ip1));
  return count_i - rank_i - rank_ip1;
}

Barcode barcode_fixed_k(const BigradedComplex& c, int k, int max_i) {
  if (max_i < 0) throw InputError("homology dimension must be nonnegative");
  // Collect the cells present anywhere in the fixed-k slice, with their
  // entry radii, and order them as a valid filtration.
  struct Entry {
    Rat r_sq;
    uint32_t id;
  };
  std::vector<Entry> order;
  order.reserve(c.cells.size());
  for (size_t id = 0; id < c.cells.size(); ++id) {
    std::optional<Rat> r = c.cells[id].entry_r(k);
    if (r) order.push_back({std::move(*r), static_cast<uint32_t>(id)});
  }
  std::sort(order.begin(), order.end(), [&c](const Entry& a, const Entry& b) {
    if (a.r_sq != b.r_sq) return a.r_sq < b.r_sq;
    const BigradedCell& ca = c.cells[a.id];
    const BigradedCell& cb = c.cells[b.id];
    if (ca.dim != cb.dim) return ca.dim < cb.dim;
    return ca.key < cb.key;
  });

  std::vector<uint32_t> pos_of(c.cells.size(), UINT32_MAX);
  for (uint32_t p = 0; p < order.size(); ++p) pos_of[order[p].id] = p;

  // Standard reduction over the ordered cells.
  std::vector<std::vector<uint32_t>> reduced(order.size());
  std::vector<uint32_t> owner_of_pivot(order.size(), UINT32_MAX);
  std::vector<char> is_paired(order.size(), 0);  // positive cell got killed
  Barcode bars(static_cast<size_t>(max_i) + 1);

  for (uint32_t p = 0; p < order.size(); ++p) {
    const BigradedCell& cell = c.cells[order[p].id];
    std::vector<uint32_t> col;
    col.reserve(cell.boundary.size());
    for (uint32_t fid : cell.boundary) {
      MCOV_CHECK(pos_of[fid] != UINT32_MAX,
                 "face of a present cell is missing from the slice");
      MCOV_CHECK(pos_of[fid] < p, "filtration order violates face order");
      col.push_back(pos_of[fid]);
    }
    std::sort(col.begin(), col.end());
    while (!col.empty() && owner_of_pivot[col.back()] != UINT32_MAX)
      col = xor_columns(col, reduced[owner_of_pivot[col.back()]]);
    if (col.empty()) continue;  // positive cell: creates a class

    uint32_t birth_pos = col.back();
    owner_of_pivot[birth_pos] = p;
    reduced[p] = std::move(col);
    is_paired[birth_pos] = 1;
    const BigradedCell& birth_cell = c.cells[order[birth_pos].id];
    if (birth_cell.dim <= max_i && order[birth_pos].r_sq != order[p].r_sq) {
      bars[birth_cell.dim].push_back(
          Bar{order[birth_pos].r_sq, order[p].r_sq});
    }
  }
  // Unpaired positive cells (empty reduced column, never used as a birth)
  // yield infinite bars.
  for (uint32_t p = 0; p < order.size(); ++p) {
    const BigradedCell& cell = c.cells[order[p].id];
    if (reduced[p].empty() && !is_paired[p] && cell.dim <= max_i)
      bars[cell.dim].push_back(Bar{order[p].r_sq, std::nullopt});
  }
  for (auto& v : bars) {
    std::sort(v.begin(), v.end(), [](const Bar& a, const Bar& b) {
      if (a.birth_sq != b.birth_sq) return a.birth_sq < b.birth_sq;
      if (a.death_sq.has_value() != b.death_sq.has_value())
        return a.death_sq.has_value();  // finite bars before infinite
      if (a.death_sq && b.death_sq && *a.death_sq != *b.death_sq)
        return *a.death_sq < *b.death_sq;
      return false;
    });
  }
  return bars;
}

HilbertGrid hilbert(const BigradedComplex& c, std::vector<Rat> r_grid_sq,
                    std::vector<int> k_values, std::vector<int> dims) {
  MCOV_CHECK(std::is_sorted(r_grid_sq.begin(), r_grid_sq.end()),
             "radius grid must be ascending");
  MCOV_CHECK(std::is_sorted(k_values.begin(), k_values.end()),
             "depth grid must be ascending");
  HilbertGrid grid;
  grid.r_grid_sq = std::move(r_grid_sq);
  grid.k_values = std::move(k_values);
  grid.dims = std::move(dims);
  grid.values.reserve(grid.r_grid_sq.size() * grid.k_values.size() *
                      grid.dims.size());
  for (const Rat& r : grid.r_grid_sq)
    for (int k : grid.k_values)
      for (int d : grid.dims) grid.values.push_back(betti_at_grade(c, r, k, d));
  return grid;
}

}  // namespace mcov
