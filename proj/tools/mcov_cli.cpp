// Command-line front end: multicover bifiltration models of point sets.
//
// Exit codes: 0 success; 1 internal failure (including a failed validate);
// 2 bad input or flags; 3 a size guard refused the computation; 4 the sites
// are degenerate (general-position violation).

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mcov/pipeline.hpp"

namespace {

using namespace mcov;

struct CliOptions {
  std::string points;
  std::string gen_kind;
  uint64_t gen_n = 0;
  std::string radius = "0.25";
  int noise = 0;
  std::string err = "0";
  uint64_t seed = 0;
  int dim = 2;
  int max_k = 0;
  int64_t snap = 100;  // default snap grid; 0 disables
  std::string model = "rhomb";
  std::string hom_dim;
  std::string r_grid;
  std::string k_range;
  std::string out_dir = ".";
  bool oracle_override = false;
  int64_t pgm_max = 0;
};

[[noreturn]] void flag_error(const std::string& msg) { throw InputError(msg); }

std::vector<int> parse_hom_dims(const std::string& text) {
  std::vector<int> out;
  std::istringstream in(text);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    try {
      size_t pos = 0;
      int v = std::stoi(tok, &pos);
      if (pos != tok.size() || v < 0) throw std::invalid_argument("bad");
      out.push_back(v);
    } catch (const std::exception&) {
      flag_error("--hom-dim: malformed entry '" + tok + "' (expected i[,i...])");
    }
  }
  if (out.empty()) flag_error("--hom-dim: no dimensions given");
  return out;
}

RGridSpec parse_r_grid(const std::string& text) {
  std::vector<std::string> parts;
  std::istringstream in(text);
  std::string tok;
  while (std::getline(in, tok, ':')) parts.push_back(tok);
  if (parts.size() != 3) flag_error("--r-grid: expected a:b:n");
  RGridSpec spec;
  try {
    spec.a = parse_decimal(parts[0]);
    spec.b = parse_decimal(parts[1]);
    size_t pos = 0;
    long n = std::stol(parts[2], &pos);
    if (pos != parts[2].size() || n < 1) throw std::invalid_argument("bad");
    spec.count = static_cast<uint32_t>(n);
  } catch (const InputError&) {
    throw;
  } catch (const std::exception&) {
    flag_error("--r-grid: malformed spec '" + text + "' (expected a:b:n)");
  }
  return spec;
}

std::pair<int, int> parse_k_range(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos) flag_error("--k-range: expected a:b");
  try {
    size_t pos = 0;
    int a = std::stoi(text.substr(0, colon), &pos);
    if (pos != colon) throw std::invalid_argument("bad");
    int b = std::stoi(text.substr(colon + 1), &pos);
    if (pos != text.size() - colon - 1) throw std::invalid_argument("bad");
    return {a, b};
  } catch (const std::exception&) {
    flag_error("--k-range: malformed spec '" + text + "' (expected a:b)");
  }
  return {0, 0};  // unreachable
}

RunConfig build_config(Command cmd, const CliOptions& o) {
  RunConfig cfg;
  cfg.cmd = cmd;
  cfg.dim = o.dim;
  cfg.max_k = o.max_k;
  if (o.snap < 0) flag_error("--snap must be >= 0");
  cfg.snap = static_cast<uint32_t>(o.snap);
  cfg.out_dir = o.out_dir;
  cfg.oracle_override = o.oracle_override;
  cfg.pgm_saturate = o.pgm_max;
  cfg.points_path = o.points;

  if (o.model == "rhomb") cfg.model = ModelTag::rhomb;
  else if (o.model == "srhomb") cfg.model = ModelTag::srhomb;
  else if (o.model == "sdel") cfg.model = ModelTag::sdel;
  else if (o.model == "cech-oracle") cfg.model = ModelTag::cech_oracle;
  else flag_error("--model: unknown model '" + o.model + "' (rhomb|srhomb|sdel|cech-oracle)");

  if (!o.gen_kind.empty()) {
    GeneratorSpec gen;
    auto kind = parse_gen_kind(o.gen_kind);
    if (!kind)
      flag_error("--gen: unknown kind '" + o.gen_kind +
                 "' (uniform-square|uniform-cube|disk|annulus|noisy-annulus)");
    gen.kind = *kind;
    if (o.gen_n == 0) flag_error("--gen needs --n (number of points)");
    gen.n = static_cast<uint32_t>(o.gen_n);
    gen.radius = parse_decimal(o.radius);
    gen.noise_percent = o.noise;
    gen.err = parse_decimal(o.err);
    gen.seed = o.seed;
    cfg.gen = std::move(gen);
    // uniform-cube is the one 3-dimensional family; default --dim up to it.
    if (*kind == GenKind::uniform_cube && o.dim == 2) cfg.dim = 3;
  }
  if (!o.hom_dim.empty()) cfg.hom_dims = parse_hom_dims(o.hom_dim);
  if (!o.r_grid.empty()) cfg.r_grid = parse_r_grid(o.r_grid);
  if (!o.k_range.empty()) cfg.k_range = parse_k_range(o.k_range);
  return cfg;
}

void add_common_flags(CLI::App* sub, CliOptions& o) {
  sub->add_option("--points", o.points, "input point file (one point per line)");
  sub->add_option("--gen", o.gen_kind,
                  "generator kind: uniform-square|uniform-cube|disk|annulus|noisy-annulus");
  sub->add_option("--n", o.gen_n, "number of points to generate");
  sub->add_option("--radius", o.radius, "circle radius for disk/annulus generators");
  sub->add_option("--noise", o.noise, "noisy-annulus: percentage of uniform noise points");
  sub->add_option("--err", o.err, "annulus generators: per-coordinate perturbation bound");
  sub->add_option("--seed", o.seed, "generator seed");
  sub->add_option("--dim", o.dim, "ambient dimension (1, 2, or 3)")->check(CLI::Range(1, 3));
  sub->add_option("--max-k", o.max_k, "truncate at covering depth K (0 = full)");
  sub->add_option("--snap", o.snap, "snap radii onto an N-value grid (0 = exact; default 100)");
  sub->add_option("--model", o.model, "rhomb|srhomb|sdel|cech-oracle");
  sub->add_option("--hom-dim", o.hom_dim, "homology dimensions, e.g. 0,1");
  sub->add_option("--r-grid", o.r_grid, "radius grid a:b:n for grade queries");
  sub->add_option("--k-range", o.k_range, "depth range a:b");
  sub->add_option("--out", o.out_dir, "output directory");
  sub->add_flag("--oracle-override", o.oracle_override,
                "lift the n <= 12 guard of the nerve oracle");
  sub->add_option("--pgm-max", o.pgm_max, "PGM shading saturates at this rank (0 = auto)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multicover bifiltration models: rhomboid tiling, sliced variants, and a "
               "brute-force nerve oracle"};
  app.require_subcommand(1);
  CliOptions o;

  struct SubCmd {
    Command cmd;
    const char* name;
    const char* help;
  };
  const SubCmd subs[] = {
      {Command::generate, "generate", "draw a random point cloud and write points.txt"},
      {Command::tiling, "tiling", "enumerate the rhomboid tiling and write tiling.json"},
      {Command::betti, "betti", "Betti numbers on an (r, k) grade grid -> betti.csv"},
      {Command::barcode, "barcode", "fixed-depth persistence barcodes -> barcode_k<k>.txt"},
      {Command::hilbert, "hilbert", "Hilbert-function grid -> hilbert.csv + PGM images"},
      {Command::firep, "firep", "free implicit presentation -> firep_dim<i>.txt"},
      {Command::stats, "stats", "tiling size statistics -> stats.json"},
      {Command::validate, "validate", "cross-check all models (and the oracle) for agreement"},
  };
  for (const SubCmd& s : subs) add_common_flags(app.add_subcommand(s.name, s.help), o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
    app.exit(e);
    return 2;
  }

  Command cmd = Command::betti;
  for (const SubCmd& s : subs)
    if (app.get_subcommand(s.name)->parsed()) cmd = s.cmd;

  try {
    RunConfig cfg = build_config(cmd, o);
    RunResult result = run_pipeline(cfg);
    std::cout << result.report;
    for (const std::string& f : result.files) std::cout << "wrote " << f << "\n";
    return 0;
  } catch (const PipelineError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(e.category());
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const GuardError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const GeneralPositionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
