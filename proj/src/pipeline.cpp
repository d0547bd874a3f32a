#include "mcov/pipeline.hpp"

#include <algorithm>
#include <filesystem>
#include <set>
#include <sstream>

#include <json.hpp>

#include "mcov/firep.hpp"
#include "mcov/general_position.hpp"
#include "mcov/oracle.hpp"

namespace mcov {

namespace {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;
using Category = PipelineError::Category;

[[noreturn]] void rethrow_in_stage(const std::string& stage_name) {
  try {
    throw;
  } catch (const PipelineError&) {
    throw;
  } catch (const GeneralPositionError& e) {
    throw PipelineError(Category::degenerate, stage_name, e.what());
  } catch (const GuardError& e) {
    throw PipelineError(Category::guard, stage_name, e.what());
  } catch (const InputError& e) {
    throw PipelineError(Category::input, stage_name, e.what());
  } catch (const fs::filesystem_error& e) {
    throw PipelineError(Category::input, stage_name, e.what());
  } catch (const std::exception& e) {
    throw PipelineError(Category::internal, stage_name, e.what());
  }
}

template <typename F>
auto in_stage(const char* name, F&& f) {
  try {
    return f();
  } catch (...) {
    rethrow_in_stage(name);
  }
}

[[noreturn]] void config_error(const std::string& msg) {
  throw PipelineError(Category::input, "config", msg);
}

struct Artifact {
  std::string filename;
  std::string content;
};

/** Everything the analysis stages need, built once. */
struct Prepared {
  std::optional<PointCloud> cloud;
  int k_lo = 1, k_hi = 1;          // inclusive depth range
  int k_eff = 1;                   // depth cap (truncation level or n)
  std::vector<int> hom_dims;
  std::optional<RhomboidTiling> tiling_support;  // support(k_eff); only when truncating
  std::optional<RhomboidTiling> tiling;          // full or truncated: face-complete
  std::optional<SlicedTiling> sliced;
  std::optional<BigradedComplex> complex_;       // the requested model (not oracle)
  std::vector<BigradedComplex> oracle_per_k;     // index 0 -> k_lo
};

bool command_needs_tiling(const RunConfig& cfg) {
  switch (cfg.cmd) {
    case Command::generate:
      return false;
    case Command::tiling:
    case Command::stats:
    case Command::validate:
      return true;
    default:
      return cfg.model != ModelTag::cech_oracle;
  }
}

bool command_needs_model(Command cmd) {
  return cmd == Command::betti || cmd == Command::barcode || cmd == Command::hilbert ||
         cmd == Command::firep;
}

uint64_t binom_capped(uint64_t n, uint64_t k, uint64_t cap) {
  uint64_t r = 1;
  for (uint64_t i = 0; i < k; ++i) {
    if (r > cap) return cap + 1;
    r = r * (n - i) / (i + 1);
  }
  return std::min(r, cap + 1);
}

/** Radius grid (squared values) for grade queries. */
std::vector<Rat> resolve_r_grid(const RunConfig& cfg, const PointCloud& cloud) {
  RGridSpec spec;
  if (cfg.r_grid) {
    spec = *cfg.r_grid;
  } else {
    spec.a = Rat(0);
    // Default upper end: the radius at which one ball covers every site,
    // rounded through its 17-digit decimal (the grid bound need not be exact).
    SiteSet all(cloud.size());
    for (uint32_t i = 0; i < cloud.size(); ++i) all[i] = i;
    spec.b = parse_decimal(radius_string(miniball(cloud, all).r_sq));
    spec.count = 20;
  }
  std::vector<Rat> out;
  out.reserve(spec.count);
  if (spec.count == 1) {
    out.push_back(spec.a * spec.a);
    return out;
  }
  for (uint32_t i = 0; i < spec.count; ++i) {
    Rat r = spec.a + (spec.b - spec.a) * Rat(i) / Rat(spec.count - 1);
    out.push_back(r * r);
  }
  return out;
}

std::string stats_report(const TilingStats& st, const std::string& mode, int level) {
  std::ostringstream os;
  os << "tiling: n=" << st.n << " dim=" << st.dim << " mode=" << mode;
  if (level >= 0) os << " level=" << level;
  os << "\n";
  os << "total cells: " << st.total_cells << " (bound " << st.size_bound << ", "
     << (st.bound_ok ? "ok" : "EXCEEDED") << ")\n";
  os << "top cells: " << st.top_cells << "\n";
  os << "max depth: " << st.max_depth << "\n";
  os << "cells per dimension:";
  for (size_t d = 0; d < st.cells_per_dim.size(); ++d) os << " " << d << ":" << st.cells_per_dim[d];
  os << "\ncells per k_min:";
  for (size_t k = 0; k < st.cells_per_k_min.size(); ++k)
    os << " " << k << ":" << st.cells_per_k_min[k];
  os << "\nmosaic top-cell counts V_k:";
  for (size_t k = 1; k < st.v_k.size(); ++k) os << " " << k << ":" << st.v_k[k];
  os << "\n";
  return os.str();
}

std::string stats_json(const TilingStats& st, const std::string& mode, int level) {
  ojson j;
  j["format"] = "tiling-stats";
  j["n"] = st.n;
  j["dim"] = st.dim;
  j["mode"] = mode;
  j["level"] = level;
  j["total_cells"] = st.total_cells;
  j["top_cells"] = st.top_cells;
  j["cells_per_dim"] = st.cells_per_dim;
  j["cells_per_k_min"] = st.cells_per_k_min;
  j["v_k"] = st.v_k;
  j["max_depth"] = st.max_depth;
  j["size_bound"] = st.size_bound;
  j["bound_ok"] = st.bound_ok;
  return j.dump(1) + "\n";
}

/** GF(2) boundary-of-boundary check over a whole complex. */
bool dd_is_zero(const BigradedComplex& c) {
  for (const BigradedCell& cell : c.cells) {
    std::set<uint32_t> acc;
    for (uint32_t f : cell.boundary) {
      for (uint32_t g : c.cells[f].boundary) {
        auto [it, fresh] = acc.insert(g);
        if (!fresh) acc.erase(it);
      }
    }
    if (!acc.empty()) return false;
  }
  return true;
}

/** Alternating alive-cell-count sum at a grade. */
int64_t euler_at(const BigradedComplex& c, const Rat& r_sq, int k) {
  int64_t chi = 0;
  for (const BigradedCell& cell : c.cells) {
    if (cell.alive_at(r_sq, k)) chi += (cell.dim % 2 == 0) ? 1 : -1;
  }
  return chi;
}

}  // namespace

std::string command_name(Command cmd) {
  switch (cmd) {
    case Command::generate: return "generate";
    case Command::tiling: return "tiling";
    case Command::betti: return "betti";
    case Command::barcode: return "barcode";
    case Command::hilbert: return "hilbert";
    case Command::firep: return "firep";
    case Command::stats: return "stats";
    case Command::validate: return "validate";
  }
  return "?";
}

RunResult run_pipeline(const RunConfig& cfg) {
  // ---- stage: config ------------------------------------------------------
  if (cfg.dim < 1 || cfg.dim > 3) config_error("--dim must be 1, 2, or 3");
  if (cfg.max_k < 0) config_error("--max-k must be >= 1 (0 = untruncated)");
  if (cfg.snap == 1) config_error("--snap needs N >= 2 (0 disables snapping)");
  if (cfg.cmd == Command::generate && !cfg.gen)
    config_error("generate needs a generator spec (--gen)");
  if (cfg.gen && !cfg.points_path.empty())
    config_error("give either --points or --gen, not both");
  if (!cfg.gen && cfg.points_path.empty())
    config_error("no input: give --points FILE or --gen KIND");
  for (int i : cfg.hom_dims)
    if (i < 0) config_error("--hom-dim entries must be >= 0");
  if (cfg.r_grid) {
    if (cfg.r_grid->count < 1) config_error("--r-grid needs at least one value");
    if (cfg.r_grid->a < 0 || cfg.r_grid->a > cfg.r_grid->b)
      config_error("--r-grid needs 0 <= a <= b");
  }
  if (cfg.k_range && (cfg.k_range->first < 1 || cfg.k_range->first > cfg.k_range->second))
    config_error("--k-range needs 1 <= a <= b");
  if (cfg.gen) {
    const int gen_dim = cfg.gen->kind == GenKind::uniform_cube ? 3 : 2;
    if (cfg.dim != gen_dim)
      config_error("generator '" + gen_kind_name(cfg.gen->kind) + "' draws in dimension " +
                   std::to_string(gen_dim) + ", but --dim is " + std::to_string(cfg.dim));
  }
  if (cfg.cmd == Command::firep) {
    if (cfg.model == ModelTag::sdel)
      config_error("unsupported model: FIREP needs a 1-critical model (rhomb or srhomb), "
                   "and sdel is multi-critical");
    if (cfg.model == ModelTag::cech_oracle)
      config_error("unsupported model: the nerve oracle has no FIREP");
  }
  if ((cfg.cmd == Command::tiling || cfg.cmd == Command::stats) &&
      cfg.model == ModelTag::cech_oracle)
    config_error("the nerve oracle has no rhomboid tiling; pick rhomb, srhomb, or sdel");

  Prepared prep;

  // ---- stage: input -------------------------------------------------------
  in_stage("input", [&] {
    if (cfg.gen) {
      prep.cloud.emplace(generate(*cfg.gen));
    } else {
      prep.cloud.emplace(parse_points_file(cfg.points_path, cfg.dim));
    }
  });
  const PointCloud& cloud = *prep.cloud;
  const uint32_t n = cloud.size();
  const int d = cloud.dim();

  prep.k_eff = cfg.max_k > 0 ? std::min<int>(cfg.max_k, n) : static_cast<int>(n);
  prep.k_lo = cfg.k_range ? cfg.k_range->first : 1;
  prep.k_hi = cfg.k_range ? cfg.k_range->second : prep.k_eff;
  if (prep.k_hi > prep.k_eff)
    config_error("--k-range reaches depth " + std::to_string(prep.k_hi) +
                 " but the depth cap is " + std::to_string(prep.k_eff));
  prep.hom_dims = cfg.hom_dims;
  if (prep.hom_dims.empty())
    for (int i = 0; i < d; ++i) prep.hom_dims.push_back(i);
  const int max_hom = *std::max_element(prep.hom_dims.begin(), prep.hom_dims.end());

  // ---- stage: tiling ------------------------------------------------------
  if (command_needs_tiling(cfg)) {
    in_stage("tiling", [&] {
      if (cfg.max_k == 0 && binom_capped(n, d + 1, 2000000) > 2000000)
        throw GuardError("the full tiling of " + std::to_string(n) +
                         " sites is beyond desk scale; truncate with --max-k");
      if (binom_capped(n, d + 1, 500000000) > 500000000)
        throw GuardError("enumeration over binom(n, dim+1) subsets is beyond desk scale");
      const bool need_sliced =
          cfg.cmd == Command::validate ||
          (command_needs_model(cfg.cmd) &&
           (cfg.model == ModelTag::srhomb || cfg.model == ModelTag::sdel));
      const bool need_rhomb =
          cfg.cmd == Command::validate ||
          (command_needs_model(cfg.cmd) && cfg.model == ModelTag::rhomb);
      if (cfg.max_k > 0) {
        // The rhomboid model needs cells dim levels deeper than the query
        // window, or homology near the cap degenerates (see
        // build_rhomb_depth_window); enumerate the support that far down.
        const int level =
            need_rhomb ? std::min<int>(n, prep.k_eff + d) : prep.k_eff;
        prep.tiling_support.emplace(enumerate_rhomboids(cloud, level));
        // The standalone truncated tiling is only serialized; the models are
        // built straight off the support tiling so that exact radius values
        // are computed once and shared.
        if (cfg.cmd == Command::tiling || cfg.cmd == Command::stats)
          prep.tiling.emplace(truncate_tiling(*prep.tiling_support, prep.k_eff));
        if (need_sliced)
          prep.sliced.emplace(slice_tiling(*prep.tiling_support, prep.k_eff));
      } else {
        prep.tiling.emplace(enumerate_rhomboids(cloud));
        if (need_sliced) prep.sliced.emplace(slice_tiling(*prep.tiling));
      }
    });
  }

  // ---- stage: model -------------------------------------------------------
  if (command_needs_model(cfg.cmd)) {
    in_stage("model", [&] {
      switch (cfg.model) {
        case ModelTag::rhomb:
          prep.complex_.emplace(cfg.max_k > 0
                                    ? build_rhomb_depth_window(*prep.tiling_support, prep.k_eff)
                                    : build_rhomb(*prep.tiling));
          break;
        case ModelTag::srhomb:
          prep.complex_.emplace(build_srhomb(*prep.sliced));
          break;
        case ModelTag::sdel:
          prep.complex_.emplace(build_sdel(*prep.sliced));
          break;
        case ModelTag::cech_oracle:
          for (int k = prep.k_lo; k <= prep.k_hi; ++k)
            prep.oracle_per_k.push_back(
                cech_multicover_nerve(cloud, k, max_hom + 1, cfg.oracle_override));
          break;
      }
    });
  }

  // ---- stage: snap --------------------------------------------------------
  if (cfg.snap >= 2 && cfg.cmd != Command::validate) {
    in_stage("snap", [&] {
      if (prep.complex_) prep.complex_ = snap_grades(*prep.complex_, cfg.snap);
      for (BigradedComplex& c : prep.oracle_per_k) c = snap_grades(c, cfg.snap);
    });
  }

  // ---- stage: analysis ----------------------------------------------------
  std::vector<Artifact> artifacts;
  std::string report;
  in_stage("analysis", [&] {
    auto complex_for_k = [&](int k) -> const BigradedComplex& {
      if (cfg.model == ModelTag::cech_oracle) return prep.oracle_per_k[k - prep.k_lo];
      return *prep.complex_;
    };
    switch (cfg.cmd) {
      case Command::generate: {
        artifacts.push_back({"points.txt", write_points(cloud)});
        report = "generated " + std::to_string(n) + " sites (" +
                 gen_kind_name(cfg.gen->kind) + ", dim " + std::to_string(d) + ", seed " +
                 std::to_string(cfg.gen->seed) + ")\n";
        break;
      }
      case Command::tiling: {
        artifacts.push_back({"tiling.json", write_tiling_json(*prep.tiling)});
        report = "tiling with " + std::to_string(prep.tiling->cell_count()) + " cells\n";
        break;
      }
      case Command::stats: {
        TilingStats st = tiling_stats(*prep.tiling);
        std::string mode = cfg.max_k > 0 ? "truncated" : "full";
        artifacts.push_back({"stats.json", stats_json(st, mode, cfg.max_k > 0 ? prep.k_eff : -1)});
        report = stats_report(st, mode, cfg.max_k > 0 ? prep.k_eff : -1);
        break;
      }
      case Command::betti:
      case Command::hilbert: {
        std::vector<Rat> r_grid_sq = resolve_r_grid(cfg, cloud);
        std::vector<int> ks;
        for (int k = prep.k_lo; k <= prep.k_hi; ++k) ks.push_back(k);
        HilbertGrid grid;
        grid.r_grid_sq = r_grid_sq;
        grid.k_values = ks;
        grid.dims = prep.hom_dims;
        grid.values.reserve(r_grid_sq.size() * ks.size() * prep.hom_dims.size());
        for (const Rat& r_sq : r_grid_sq)
          for (int k : ks)
            for (int i : prep.hom_dims)
              grid.values.push_back(betti_at_grade(complex_for_k(k), r_sq, k, i));
        const char* csv_name = cfg.cmd == Command::betti ? "betti.csv" : "hilbert.csv";
        artifacts.push_back({csv_name, write_hilbert_csv(grid)});
        report = "betti grid: " + std::to_string(r_grid_sq.size()) + " radii x " +
                 std::to_string(ks.size()) + " depths x " + std::to_string(prep.hom_dims.size()) +
                 " dimensions\n";
        if (cfg.cmd == Command::hilbert) {
          for (size_t di = 0; di < prep.hom_dims.size(); ++di) {
            // Rows top to bottom: k ascending; columns left to right: r ascending.
            std::vector<std::vector<int64_t>> rows(ks.size());
            int64_t max_rank = 0;
            for (size_t ki = 0; ki < ks.size(); ++ki) {
              rows[ki].resize(r_grid_sq.size());
              for (size_t ri = 0; ri < r_grid_sq.size(); ++ri) {
                rows[ki][ri] = grid.at(ri, ki, di);
                max_rank = std::max(max_rank, rows[ki][ri]);
              }
            }
            int64_t sat = cfg.pgm_saturate > 0 ? cfg.pgm_saturate : std::max<int64_t>(max_rank, 1);
            artifacts.push_back({"hilbert_dim" + std::to_string(prep.hom_dims[di]) + ".pgm",
                                 write_pgm(rows, sat)});
          }
        }
        break;
      }
      case Command::barcode: {
        for (int k = prep.k_lo; k <= prep.k_hi; ++k) {
          Barcode bc = barcode_fixed_k(complex_for_k(k), k, max_hom);
          Barcode filtered(bc.size());
          for (int i : prep.hom_dims)
            if (static_cast<size_t>(i) < bc.size()) filtered[i] = bc[i];
          artifacts.push_back({"barcode_k" + std::to_string(k) + ".txt",
                               write_barcode(filtered)});
        }
        report = "barcodes for depths " + std::to_string(prep.k_lo) + ".." +
                 std::to_string(prep.k_hi) + "\n";
        break;
      }
      case Command::firep: {
        for (int i : prep.hom_dims) {
          FirepDocument doc = assemble_firep(*prep.complex_, i);
          artifacts.push_back({"firep_dim" + std::to_string(i) + ".txt", write_firep(doc)});
          report += "firep (homology dimension " + std::to_string(i) + "): " +
                    std::to_string(doc.degrees[0].size()) + " " +
                    std::to_string(doc.degrees[1].size()) + " " +
                    std::to_string(doc.degrees[2].size()) + " generators\n";
        }
        break;
      }
      case Command::validate: {
        // Exact cross-model agreement; --snap is ignored here on purpose
        // (each complex would snap onto its own grid, spoiling comparisons).
        BigradedComplex rhomb = cfg.max_k > 0
                                    ? build_rhomb_depth_window(*prep.tiling_support, prep.k_eff)
                                    : build_rhomb(*prep.tiling);
        BigradedComplex srhomb = build_srhomb(*prep.sliced);
        BigradedComplex sdel = build_sdel(*prep.sliced);
        const bool with_oracle = n <= 12 || cfg.oracle_override;
        const int max_hom_dim = *std::max_element(prep.hom_dims.begin(), prep.hom_dims.end());
        // Without an explicit --k-range, check a representative depth window
        // rather than every depth; the exactness is per checked grade anyway.
        const int k_hi = cfg.k_range ? prep.k_hi : std::min(prep.k_eff, 4);
        std::ostringstream rep;
        rep << "validate: n=" << n << " dim=" << d << " depths " << prep.k_lo << ".." << k_hi
            << "\n";
        for (auto* c : {&rhomb, &srhomb, &sdel}) {
          if (!dd_is_zero(*c))
            throw InternalError("boundary-of-boundary is nonzero in model " +
                                model_name(c->tag));
        }
        rep << "boundary-of-boundary: zero in all three models\n";
        // Grade sample: distinct corner radii of every model (the only radii
        // where anything can change), subsampled for big inputs, or the
        // explicit --r-grid when one was given.
        std::vector<Rat> r_list;
        if (cfg.r_grid) {
          r_list = resolve_r_grid(cfg, cloud);
          rep << "grade sample: " << r_list.size() << " radii (--r-grid)\n";
        } else {
          std::set<Rat> radii{Rat(0)};
          for (auto* c : {&rhomb, &srhomb, &sdel})
            for (const BigradedCell& cell : c->cells)
              for (const GradeCorner& corner : cell.corners) radii.insert(corner.r_sq);
          r_list.assign(radii.begin(), radii.end());
          r_list.push_back(r_list.back() + 1);
          if (r_list.size() > 40) {
            std::vector<Rat> sampled;
            const size_t stride = (r_list.size() + 39) / 40;
            for (size_t i = 0; i < r_list.size(); i += stride) sampled.push_back(r_list[i]);
            if (sampled.back() != r_list.back()) sampled.push_back(r_list.back());
            r_list = std::move(sampled);
            rep << "grade sample: " << r_list.size() << " radii (subsampled critical values)\n";
          } else {
            rep << "grade sample: " << r_list.size() << " radii (all critical values)\n";
          }
        }
        uint64_t checks = 0;
        for (int k = prep.k_lo; k <= k_hi; ++k) {
          std::optional<BigradedComplex> nerve;
          if (with_oracle)
            nerve = cech_multicover_nerve(cloud, k, std::max(d, max_hom_dim + 1),
                                          cfg.oracle_override);
          for (size_t ri = 0; ri < r_list.size(); ++ri) {
            const Rat& r_sq = r_list[ri];
            for (int i : prep.hom_dims) {
              int64_t b_rhomb = betti_at_grade(rhomb, r_sq, k, i);
              int64_t b_srhomb = betti_at_grade(srhomb, r_sq, k, i);
              int64_t b_sdel = betti_at_grade(sdel, r_sq, k, i);
              int64_t b_oracle = nerve ? betti_at_grade(*nerve, r_sq, k, i) : b_rhomb;
              ++checks;
              if (b_rhomb != b_srhomb || b_rhomb != b_sdel || b_rhomb != b_oracle) {
                std::ostringstream what;
                what << "betti mismatch at r^2=" << r_sq.get_str() << " k=" << k
                     << " i=" << i << ": rhomb=" << b_rhomb << " srhomb=" << b_srhomb
                     << " sdel=" << b_sdel;
                if (nerve) what << " oracle=" << b_oracle;
                throw InternalError(what.str());
              }
            }
            // Euler characteristic: alternating cell count vs alternating
            // Betti sum, model by model, at every other sampled radius.
            if (ri % 2 != 0) continue;
            for (auto* c : {&rhomb, &srhomb, &sdel}) {
              int64_t chi = euler_at(*c, r_sq, k);
              int64_t beta_sum = 0;
              for (int i = 0; i <= c->top_dim(); ++i) {
                int64_t b = betti_at_grade(*c, r_sq, k, i);
                beta_sum += (i % 2 == 0) ? b : -b;
              }
              ++checks;
              if (chi != beta_sum)
                throw InternalError("Euler characteristic mismatch in model " +
                                    model_name(c->tag) + " at r^2=" + r_sq.get_str() +
                                    " k=" + std::to_string(k));
            }
          }
        }
        rep << "cross-model Betti agreement"
            << (with_oracle ? " (nerve oracle included)" : " (oracle skipped: n > 12)")
            << ": " << checks << " checks passed\n";
        report = rep.str();
        artifacts.push_back({"validate.txt", report});
        break;
      }
    }
  });

  // ---- stage: output ------------------------------------------------------
  RunResult result;
  result.report = std::move(report);
  in_stage("output", [&] {
    std::vector<fs::path> written;
    try {
      fs::create_directories(cfg.out_dir);
      for (const Artifact& a : artifacts) {
        fs::path p = fs::path(cfg.out_dir) / a.filename;
        write_text_file(p.string(), a.content);
        written.push_back(p);
        result.files.push_back(p.string());
      }
    } catch (...) {
      std::error_code ec;
      for (const fs::path& p : written) fs::remove(p, ec);
      throw;
    }
  });
  return result;
}

}  // namespace mcov
