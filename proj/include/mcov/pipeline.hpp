#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mcov/generators.hpp"
#include "mcov/io.hpp"

namespace mcov {

enum class Command { generate, tiling, betti, barcode, hilbert, firep, stats, validate };

std::string command_name(Command cmd);

/** Radius grid a..b with `count` evenly spaced values (a, b are radii, not
 *  squared; both exact rationals parsed from the flag text). */
struct RGridSpec {
  Rat a{0};
  Rat b{0};
  uint32_t count = 0;
};

struct RunConfig {
  Command cmd = Command::betti;

  // Input: exactly one of points_path / gen (generate requires gen).
  std::string points_path;
  std::optional<GeneratorSpec> gen;
  int dim = 2;

  int max_k = 0;            // depth truncation K; 0 = untruncated
  uint32_t snap = 0;        // snap grid size N (>= 2); 0/1 = exact radii
  ModelTag model = ModelTag::rhomb;
  std::vector<int> hom_dims;            // empty = 0 .. dim-1
  std::optional<RGridSpec> r_grid;      // default: 0 .. enclosing radius, 20 values
  std::optional<std::pair<int, int>> k_range;  // default: 1 .. min(n, K)
  std::string out_dir = ".";
  bool oracle_override = false;  // lift the n <= 12 nerve-oracle guard
  int64_t pgm_saturate = 0;      // 0 = saturate at the grid maximum
};

/** Failure of one pipeline stage; category picks the process exit code. */
class PipelineError : public Error {
 public:
  enum class Category {
    internal = 1,    // bug or failed validation
    input = 2,       // bad flags, files, or model/command combination
    guard = 3,       // size guard refused the computation
    degenerate = 4,  // input sites violate general position
  };

  PipelineError(Category category, std::string stage, const std::string& message)
      : Error("stage '" + stage + "': " + message),
        category_(category),
        stage_(std::move(stage)) {}

  Category category() const { return category_; }
  const std::string& stage() const { return stage_; }

 private:
  Category category_;
  std::string stage_;
};

struct RunResult {
  std::vector<std::string> files;  // paths written, in writing order
  std::string report;              // human-readable summary for stdout
};

/**
 * Runs one CLI command end to end: input (generate or parse) -> tiling ->
 * model build -> truncate -> snap -> analysis -> outputs under cfg.out_dir.
 * All failures surface as PipelineError naming the stage; any files already
 * written by the failing run are removed first.
 */
RunResult run_pipeline(const RunConfig& cfg);

}  // namespace mcov
