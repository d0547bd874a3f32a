#include "mcov/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace mcov {

namespace {

using ojson = nlohmann::ordered_json;

[[noreturn]] void line_error(size_t line_no, const std::string& what) {
  throw InputError("line " + std::to_string(line_no) + ": " + what);
}

/** "p/q" or decimal -> exact rational (integers allowed on both sides). */
Rat parse_number_token(const std::string& tok) {
  auto slash = tok.find('/');
  if (slash == std::string::npos) return parse_decimal(tok);
  const std::string num = tok.substr(0, slash);
  const std::string den = tok.substr(slash + 1);
  auto plain_int = [](const std::string& s) {
    size_t i = (!s.empty() && (s[0] == '+' || s[0] == '-')) ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
  };
  if (!plain_int(num) || !plain_int(den)) throw std::invalid_argument("malformed rational");
  Rat q{mpz_class(num), mpz_class(den)};
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator");
  q.canonicalize();
  return q;
}

/** Exact decimal when one exists, else "p/q". */
std::string number_string(const Rat& q) {
  try {
    return exact_decimal_string(q);
  } catch (const std::invalid_argument&) {
    return q.get_str();
  }
}

Rat rat_from_fraction_string(const std::string& text, const std::string& context) {
  try {
    return parse_number_token(text);
  } catch (const std::exception&) {
    throw InputError(context + ": malformed rational '" + text + "'");
  }
}

/** Facet ids of a rhomboid cell, skipping faces the tiling dropped
 *  (support mode omits faces deeper than its level). */
std::vector<uint32_t> present_facets(const RhomboidTiling& t, uint32_t id) {
  const Rhomboid& rho = t.cell(id);
  std::vector<uint32_t> out;
  out.reserve(2 * rho.x_on.size());
  for (uint32_t s : rho.x_on) {
    SiteSet on = set_without(rho.x_on, s);
    int f_in = t.id_of(set_with(rho.x_in, s), on);
    if (f_in >= 0) out.push_back(static_cast<uint32_t>(f_in));
    int f_out = t.id_of(rho.x_in, on);
    if (f_out >= 0) out.push_back(static_cast<uint32_t>(f_out));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string mode_name(RhomboidTiling::Mode m) {
  switch (m) {
    case RhomboidTiling::Mode::full: return "full";
    case RhomboidTiling::Mode::support: return "support";
    case RhomboidTiling::Mode::truncated: return "truncated";
  }
  return "?";
}

int64_t to_int64(const ojson& j, const char* field) {
  if (!j.is_number_integer()) throw InputError(std::string("tiling JSON: field '") + field + "' must be an integer");
  return j.get<int64_t>();
}

std::string to_string_field(const ojson& j, const char* field) {
  if (!j.is_string()) throw InputError(std::string("tiling JSON: field '") + field + "' must be a string");
  return j.get<std::string>();
}

SiteSet to_site_set(const ojson& j, const char* field) {
  if (!j.is_array()) throw InputError(std::string("tiling JSON: field '") + field + "' must be an array");
  SiteSet out;
  out.reserve(j.size());
  for (const auto& e : j) {
    int64_t v = to_int64(e, field);
    if (v < 0) throw InputError(std::string("tiling JSON: field '") + field + "' has a negative entry");
    out.push_back(static_cast<uint32_t>(v));
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Point lists
// ---------------------------------------------------------------------------

PointCloud parse_points(const std::string& text, int dim) {
  if (dim < 1 || dim > 3) throw InputError("dimension must be 1, 2, or 3");
  std::vector<Point> pts;
  std::istringstream in(text);
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream fields(line);
    std::vector<std::string> toks;
    for (std::string tok; fields >> tok;) toks.push_back(tok);
    if (toks.empty()) continue;
    if (toks.size() != static_cast<size_t>(dim))
      line_error(line_no, "expected " + std::to_string(dim) + " coordinates, got " +
                              std::to_string(toks.size()));
    Point p{Rat(0), Rat(0), Rat(0)};
    for (int c = 0; c < dim; ++c) {
      try {
        p[c] = parse_number_token(toks[c]);
      } catch (const std::exception&) {
        line_error(line_no, "malformed number '" + toks[c] + "'");
      }
    }
    pts.push_back(std::move(p));
  }
  if (pts.empty()) throw InputError("point file holds no points");
  return PointCloud(dim, std::move(pts));
}

PointCloud parse_points_file(const std::string& path, int dim) {
  return parse_points(read_text_file(path), dim);
}

std::string write_points(const PointCloud& cloud) {
  std::string out;
  for (uint32_t i = 0; i < cloud.size(); ++i) {
    for (int c = 0; c < cloud.dim(); ++c) {
      if (c) out += ' ';
      out += number_string(cloud.site(i)[c]);
    }
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// Tiling JSON
// ---------------------------------------------------------------------------

TilingRecord tiling_record(const RhomboidTiling& t) {
  TilingRecord rec;
  rec.n = t.cloud().size();
  rec.dim = t.dim();
  rec.mode = mode_name(t.mode());
  rec.level = t.level();
  rec.cells.reserve(t.cell_count());
  for (uint32_t id = 0; id < t.cell_count(); ++id) {
    const Rhomboid& rho = t.cell(id);
    TilingCellRecord c;
    c.id = id;
    c.x_in = rho.x_in;
    c.x_on = rho.x_on;
    c.dim = rho.cell_dim();
    c.r_sq = t.r_val(id);
    c.r = radius_string(c.r_sq);
    c.k_min = rho.k_min();
    c.k_max = rho.k_max();
    c.facets = present_facets(t, id);
    rec.cells.push_back(std::move(c));
  }
  return rec;
}

std::string write_tiling_json(const RhomboidTiling& t) {
  TilingRecord rec = tiling_record(t);
  ojson j;
  j["format"] = "rhomboid-tiling";
  j["n"] = rec.n;
  j["dim"] = rec.dim;
  j["mode"] = rec.mode;
  j["level"] = rec.level;
  ojson cells = ojson::array();
  for (const TilingCellRecord& c : rec.cells) {
    ojson jc;
    jc["id"] = c.id;
    jc["x_in"] = c.x_in;
    jc["x_on"] = c.x_on;
    jc["dim"] = c.dim;
    jc["r"] = c.r;
    jc["r_sq"] = c.r_sq.get_str();
    jc["k_min"] = c.k_min;
    jc["k_max"] = c.k_max;
    jc["facets"] = c.facets;
    cells.push_back(std::move(jc));
  }
  j["cells"] = std::move(cells);
  return j.dump(1) + "\n";
}

TilingRecord parse_tiling_json(const std::string& text) {
  ojson j;
  try {
    j = ojson::parse(text);
  } catch (const std::exception& e) {
    throw InputError(std::string("tiling JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("format") || j["format"] != "rhomboid-tiling")
    throw InputError("tiling JSON: missing or unknown format marker");
  for (const char* f : {"n", "dim", "mode", "level", "cells"})
    if (!j.contains(f)) throw InputError(std::string("tiling JSON: missing field '") + f + "'");
  TilingRecord rec;
  rec.n = static_cast<uint32_t>(to_int64(j["n"], "n"));
  rec.dim = static_cast<int>(to_int64(j["dim"], "dim"));
  rec.mode = to_string_field(j["mode"], "mode");
  rec.level = static_cast<int>(to_int64(j["level"], "level"));
  if (rec.mode != "full" && rec.mode != "support" && rec.mode != "truncated")
    throw InputError("tiling JSON: unknown mode '" + rec.mode + "'");
  if (!j["cells"].is_array()) throw InputError("tiling JSON: 'cells' must be an array");
  rec.cells.reserve(j["cells"].size());
  for (const auto& jc : j["cells"]) {
    for (const char* f : {"id", "x_in", "x_on", "dim", "r", "r_sq", "k_min", "k_max", "facets"})
      if (!jc.contains(f)) throw InputError(std::string("tiling JSON: cell missing field '") + f + "'");
    TilingCellRecord c;
    c.id = static_cast<uint32_t>(to_int64(jc["id"], "id"));
    c.x_in = to_site_set(jc["x_in"], "x_in");
    c.x_on = to_site_set(jc["x_on"], "x_on");
    c.dim = static_cast<int>(to_int64(jc["dim"], "dim"));
    c.r = to_string_field(jc["r"], "r");
    c.r_sq = rat_from_fraction_string(to_string_field(jc["r_sq"], "r_sq"), "tiling JSON");
    c.k_min = static_cast<int>(to_int64(jc["k_min"], "k_min"));
    c.k_max = static_cast<int>(to_int64(jc["k_max"], "k_max"));
    auto facets = to_site_set(jc["facets"], "facets");
    c.facets.assign(facets.begin(), facets.end());
    if (c.id != rec.cells.size()) throw InputError("tiling JSON: cell ids must be 0,1,2,...");
    if (c.r_sq < 0) throw InputError("tiling JSON: negative squared radius");
    rec.cells.push_back(std::move(c));
  }
  return rec;
}

// ---------------------------------------------------------------------------
// Hilbert-function CSV
// ---------------------------------------------------------------------------

static const char* kHilbertHeader = "r,k,dim,betti";

std::string write_hilbert_csv(const std::vector<HilbertRow>& rows) {
  std::string out = kHilbertHeader;
  out += '\n';
  for (const HilbertRow& row : rows) {
    out += row.r;
    out += ',';
    out += std::to_string(row.k);
    out += ',';
    out += std::to_string(row.dim);
    out += ',';
    out += std::to_string(row.betti);
    out += '\n';
  }
  return out;
}

std::string write_hilbert_csv(const HilbertGrid& grid) {
  std::vector<HilbertRow> rows;
  rows.reserve(grid.values.size());
  for (size_t ri = 0; ri < grid.r_grid_sq.size(); ++ri) {
    for (size_t ki = 0; ki < grid.k_values.size(); ++ki) {
      for (size_t di = 0; di < grid.dims.size(); ++di) {
        HilbertRow row;
        row.r = radius_string(grid.r_grid_sq[ri]);
        row.k = grid.k_values[ki];
        row.dim = grid.dims[di];
        row.betti = grid.at(ri, ki, di);
        rows.push_back(std::move(row));
      }
    }
  }
  return write_hilbert_csv(rows);
}

std::vector<HilbertRow> parse_hilbert_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  size_t line_no = 0;
  std::vector<HilbertRow> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1) {
      if (line != kHilbertHeader)
        line_error(line_no, std::string("expected header '") + kHilbertHeader + "'");
      continue;
    }
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ls(line);
    while (std::getline(ls, field, ',')) fields.push_back(field);
    if (fields.size() != 4) line_error(line_no, "expected 4 comma-separated fields");
    HilbertRow row;
    row.r = fields[0];
    try {
      if (parse_decimal(fields[0]) < 0) throw std::invalid_argument("negative");
      row.k = std::stoi(fields[1]);
      row.dim = std::stoi(fields[2]);
      row.betti = std::stoll(fields[3]);
    } catch (const std::exception&) {
      line_error(line_no, "malformed row '" + line + "'");
    }
    if (row.k < 1 || row.dim < 0) line_error(line_no, "k must be >= 1 and dim >= 0");
    rows.push_back(std::move(row));
  }
  if (line_no == 0) throw InputError("empty CSV");
  return rows;
}

// ---------------------------------------------------------------------------
// Barcode text
// ---------------------------------------------------------------------------

std::string write_barcode(const std::vector<BarcodeLine>& lines) {
  std::string out;
  for (const BarcodeLine& b : lines) {
    out += std::to_string(b.dim);
    out += ' ';
    out += b.birth;
    out += ' ';
    out += b.death;
    out += '\n';
  }
  return out;
}

std::string write_barcode(const Barcode& barcode) {
  std::vector<BarcodeLine> lines;
  for (size_t d = 0; d < barcode.size(); ++d) {
    for (const Bar& bar : barcode[d]) {
      BarcodeLine line;
      line.dim = static_cast<int>(d);
      line.birth = radius_string(bar.birth_sq);
      line.death = bar.death_sq ? radius_string(*bar.death_sq) : "inf";
      lines.push_back(std::move(line));
    }
  }
  return write_barcode(lines);
}

std::vector<BarcodeLine> parse_barcode(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  size_t line_no = 0;
  std::vector<BarcodeLine> out;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string d, birth, death, extra;
    if (!(ls >> d >> birth >> death) || (ls >> extra))
      line_error(line_no, "expected '<dim> <birth> <death|inf>'");
    BarcodeLine bl;
    try {
      bl.dim = std::stoi(d);
      if (parse_decimal(birth) < 0) throw std::invalid_argument("negative");
      if (death != "inf" && parse_decimal(death) < 0) throw std::invalid_argument("negative");
    } catch (const std::exception&) {
      line_error(line_no, "malformed bar '" + line + "'");
    }
    if (bl.dim < 0) line_error(line_no, "negative dimension");
    bl.birth = birth;
    bl.death = death;
    out.push_back(std::move(bl));
  }
  return out;
}

// ---------------------------------------------------------------------------
// PGM rank images
// ---------------------------------------------------------------------------

PgmImage rank_image(const std::vector<std::vector<int64_t>>& rows, int64_t saturate) {
  if (saturate < 1) throw InputError("PGM saturation threshold must be >= 1");
  PgmImage img;
  img.height = static_cast<int>(rows.size());
  img.width = rows.empty() ? 0 : static_cast<int>(rows.front().size());
  img.maxval = 255;
  img.samples.reserve(static_cast<size_t>(img.width) * img.height);
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != img.width)
      throw InputError("PGM rank grid is ragged");
    for (int64_t b : row) {
      if (b < 0) throw InputError("PGM rank grid holds a negative rank");
      int s;
      if (b == 0) {
        s = 255;  // white background
      } else {
        double f = static_cast<double>(std::min(b, saturate)) / static_cast<double>(saturate);
        s = static_cast<int>(std::lround(255.0 * (1.0 - f)));
        s = std::min(s, 254);  // positive ranks stay distinguishable from white
        s = std::max(s, 0);
      }
      img.samples.push_back(s);
    }
  }
  return img;
}

std::string write_pgm(const PgmImage& img) {
  std::string out = "P2\n";
  out += std::to_string(img.width) + " " + std::to_string(img.height) + "\n";
  out += std::to_string(img.maxval) + "\n";
  size_t line_len = 0;
  for (size_t i = 0; i < img.samples.size(); ++i) {
    std::string tok = std::to_string(img.samples[i]);
    if (line_len > 0 && line_len + 1 + tok.size() > 70) {
      out += '\n';
      line_len = 0;
    }
    if (line_len > 0) {
      out += ' ';
      ++line_len;
    }
    out += tok;
    line_len += tok.size();
  }
  if (!img.samples.empty()) out += '\n';
  return out;
}

std::string write_pgm(const std::vector<std::vector<int64_t>>& rows, int64_t saturate) {
  return write_pgm(rank_image(rows, saturate));
}

PgmImage parse_pgm(const std::string& text) {
  // Tokenize, honoring `#` comments as the format allows.
  std::vector<std::string> toks;
  size_t i = 0;
  while (i < text.size()) {
    char ch = text[i];
    if (ch == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
    } else if (std::isspace(static_cast<unsigned char>(ch))) {
      ++i;
    } else {
      size_t j = i;
      while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j])) &&
             text[j] != '#')
        ++j;
      toks.push_back(text.substr(i, j - i));
      i = j;
    }
  }
  if (toks.empty() || toks[0] != "P2") throw InputError("PGM: expected magic 'P2'");
  auto next_int = [&](size_t idx, const char* what) {
    if (idx >= toks.size()) throw InputError(std::string("PGM: missing ") + what);
    try {
      size_t pos = 0;
      int v = std::stoi(toks[idx], &pos);
      if (pos != toks[idx].size() || v < 0) throw std::invalid_argument("bad");
      return v;
    } catch (const std::exception&) {
      throw InputError(std::string("PGM: malformed ") + what + " '" + toks[idx] + "'");
    }
  };
  PgmImage img;
  img.width = next_int(1, "width");
  img.height = next_int(2, "height");
  img.maxval = next_int(3, "maxval");
  if (img.maxval < 1 || img.maxval > 65535) throw InputError("PGM: maxval out of range");
  size_t count = static_cast<size_t>(img.width) * static_cast<size_t>(img.height);
  if (toks.size() != 4 + count) throw InputError("PGM: sample count does not match dimensions");
  img.samples.reserve(count);
  for (size_t s = 0; s < count; ++s) {
    int v = next_int(4 + s, "sample");
    if (v > img.maxval) throw InputError("PGM: sample exceeds maxval");
    img.samples.push_back(v);
  }
  return img;
}

// ---------------------------------------------------------------------------
// Small file helpers
// ---------------------------------------------------------------------------

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  if (!in.good() && !in.eof()) throw InputError("cannot read file: " + path);
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot open file for writing: " + path);
  out << content;
  out.flush();
  if (!out.good()) throw InputError("cannot write file: " + path);
}

}  // namespace mcov
