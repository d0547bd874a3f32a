#include "mcov/firep.hpp"

#include <algorithm>
#include <sstream>

#include "mcov/common.hpp"
#include "mcov/homology.hpp"

namespace mcov {

FirepDocument assemble_firep(const BigradedComplex& c, int i) {
  if (c.tag == ModelTag::sdel)
    throw InputError(
        "the simplicial model is multi-critical and has no free implicit "
        "representation; use the rhomb or srhomb model");
  int top = c.top_dim();
  if (i < 0 || i >= top)
    throw InputError("homology dimension for a FIREP must satisfy 0 <= i < " +
                     std::to_string(top));

  FirepDocument f;
  f.k_max = c.max_k;
  f.snapped = c.snapped;
  f.x_label = c.snapped ? "radius-index" : "radius";
  f.y_label = "codepth (K_max=" + std::to_string(c.max_k) + ")";

  // Lower degrees are assembled first so that boundary reindexing always
  // finds the positions of faces already assigned.
  std::vector<int64_t> pos(c.cells.size(), -1);
  for (int deg = 2; deg >= 0; --deg) {
    const int want_dim = i + 1 - deg;
    if (want_dim < 0) continue;
    for (size_t id = 0; id < c.cells.size(); ++id) {
      const BigradedCell& cell = c.cells[id];
      if (cell.dim != want_dim) continue;
      MCOV_CHECK(cell.corners.size() == 1, "FIREP needs a 1-critical complex");
      const GradeCorner& g = cell.corners[0];
      if (g.k < 1) continue;  // never alive at a queryable depth
      FirepGen gen;
      if (c.snapped) {
        MCOV_CHECK(g.snap_index >= 0, "snapped complex lacks a grid index");
        gen.x_text = std::to_string(g.snap_index);
        gen.x = Rat(g.snap_index);
      } else {
        gen.x_text = radius_string(g.r_sq);
        gen.x = parse_decimal(gen.x_text);
      }
      // Cells graded deeper than the queryable window are alive at every
      // depth the document covers; they enter at the top codepth row.
      gen.y = std::max(0, c.max_k - g.k);
      if (deg >= 1) {
        pos[id] = static_cast<int64_t>(f.degrees[deg].size());
      }
      if (deg <= 1) {
        for (uint32_t b : cell.boundary) {
          // Faces of a kept cell are kept: their depth is at least as large.
          MCOV_CHECK(pos[b] >= 0, "boundary of a FIREP generator was dropped");
          gen.boundary.push_back(static_cast<uint32_t>(pos[b]));
        }
        std::sort(gen.boundary.begin(), gen.boundary.end());
      }
      f.degrees[deg].push_back(std::move(gen));
    }
  }
  return f;
}

std::string write_firep(const FirepDocument& f) {
  std::ostringstream out;
  out << "firep\n" << f.x_label << "\n" << f.y_label << "\n";
  out << f.degrees[0].size() << ' ' << f.degrees[1].size() << ' '
      << f.degrees[2].size() << "\n";
  for (int deg = 0; deg <= 1; ++deg) {
    for (const FirepGen& g : f.degrees[deg]) {
      out << g.x_text << ' ' << g.y << " ;";
      for (uint32_t b : g.boundary) out << ' ' << b;
      out << "\n";
    }
  }
  return out.str();
}

namespace {

[[noreturn]] void parse_fail(size_t line_no, const std::string& what) {
  throw InputError("FIREP line " + std::to_string(line_no) + ": " + what);
}

}  // namespace

FirepDocument parse_firep(const std::string& text) {
  std::vector<std::string> lines;
  {
    std::string current;
    for (char ch : text) {
      if (ch == '\n') {
        lines.push_back(current);
        current.clear();
      } else {
        current.push_back(ch);
      }
    }
    if (!current.empty()) lines.push_back(current);
  }
  if (lines.size() < 4) throw InputError("FIREP document needs at least 4 lines");
  if (lines[0] != "firep") parse_fail(1, "expected the literal header 'firep'");

  FirepDocument f;
  f.x_label = lines[1];
  if (f.x_label == "radius") {
    f.snapped = false;
  } else if (f.x_label == "radius-index") {
    f.snapped = true;
  } else {
    parse_fail(2, "unknown x-axis label '" + f.x_label + "'");
  }
  f.y_label = lines[2];
  {
    const std::string tag = "K_max=";
    size_t at = f.y_label.find(tag);
    size_t end = f.y_label.find(')', at == std::string::npos ? 0 : at);
    if (at == std::string::npos || end == std::string::npos || end <= at + tag.size())
      parse_fail(3, "y-axis label must embed '(K_max=<depth>)'");
    try {
      f.k_max = std::stoi(f.y_label.substr(at + tag.size(), end - at - tag.size()));
    } catch (const std::exception&) {
      parse_fail(3, "malformed K_max value");
    }
    if (f.k_max < 1) parse_fail(3, "K_max must be at least 1");
  }

  std::array<size_t, 3> counts{};
  {
    std::istringstream head(lines[3]);
    long long g2 = -1, g1 = -1, g0 = -1;
    std::string extra;
    if (!(head >> g2 >> g1 >> g0) || (head >> extra) || g2 < 0 || g1 < 0 || g0 < 0)
      parse_fail(4, "expected three nonnegative generator counts");
    counts = {static_cast<size_t>(g2), static_cast<size_t>(g1),
              static_cast<size_t>(g0)};
  }
  if (lines.size() != 4 + counts[0] + counts[1])
    throw InputError("FIREP document has " + std::to_string(lines.size()) +
                     " lines; expected " +
                     std::to_string(4 + counts[0] + counts[1]));

  size_t line_no = 4;
  for (int deg = 0; deg <= 2; ++deg) {
    const size_t lower = deg <= 1 ? counts[deg + 1] : 0;
    for (size_t j = 0; j < counts[deg]; ++j) {
      if (deg == 2) {
        // Lowest-degree generators have no lines of their own.
        f.degrees[2].resize(counts[2]);
        break;
      }
      ++line_no;
      const std::string& line = lines[line_no - 1];
      std::istringstream in(line);
      FirepGen gen;
      std::string semi;
      long long y = -1;
      if (!(in >> gen.x_text >> y >> semi) || semi != ";")
        parse_fail(line_no, "expected '<x> <y> ; <indices>'");
      if (y < 0) parse_fail(line_no, "y must be nonnegative");
      gen.y = static_cast<int>(y);
      try {
        gen.x = parse_decimal(gen.x_text);
      } catch (const std::exception&) {
        parse_fail(line_no, "malformed x value '" + gen.x_text + "'");
      }
      if (f.snapped && gen.x.get_den() != 1)
        parse_fail(line_no, "snapped documents use integer grid indices");
      if (gen.x < 0) parse_fail(line_no, "x must be nonnegative");
      long long idx = 0;
      while (in >> idx) {
        if (idx < 0 || static_cast<size_t>(idx) >= lower)
          parse_fail(line_no, "boundary index " + std::to_string(idx) +
                                  " out of range (next-lower degree has " +
                                  std::to_string(lower) + " generators)");
        if (!gen.boundary.empty() && static_cast<uint32_t>(idx) <= gen.boundary.back())
          parse_fail(line_no, "boundary indices must be strictly increasing");
        gen.boundary.push_back(static_cast<uint32_t>(idx));
      }
      if (!in.eof()) parse_fail(line_no, "trailing junk after the index list");
      f.degrees[deg].push_back(std::move(gen));
    }
  }
  return f;
}

int64_t firep_eval(const FirepDocument& f, const Rat& x, int k) {
  const int y_cut = f.k_max - k;  // alive iff gen.y <= y_cut and gen.x <= x
  auto alive = [&](const FirepGen& g) { return g.y <= y_cut && g.x <= x; };

  int64_t mid = 0;
  std::vector<std::vector<uint32_t>> cols_mid, cols_top;
  for (const FirepGen& g : f.degrees[1]) {
    if (!alive(g)) continue;
    ++mid;
    if (!f.degrees[2].empty()) cols_mid.push_back(g.boundary);
  }
  for (const FirepGen& g : f.degrees[0]) {
    if (!alive(g)) continue;
    cols_top.push_back(g.boundary);
  }
  return mid - gf2_rank(std::move(cols_mid)) - gf2_rank(std::move(cols_top));
}

}  // namespace mcov
