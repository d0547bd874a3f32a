#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "mcov/point_cloud.hpp"

namespace mcov {

/** Random point-cloud families available to the CLI and the test suite. */
enum class GenKind {
  uniform_square,  // uniform in [0,1]^2
  uniform_cube,    // uniform in [0,1]^3
  disk,            // uniform in the disk of the given radius centered at (1/2, 1/2)
  annulus,         // on the circle of the given radius centered at (1/2, 1/2),
                   // each coordinate then perturbed uniformly in [-err, err]
  noisy_annulus,   // annulus, but each point is replaced by a uniform-square
                   // point with probability p/100
};

std::string gen_kind_name(GenKind kind);
std::optional<GenKind> parse_gen_kind(const std::string& name);

struct GeneratorSpec {
  GenKind kind = GenKind::uniform_square;
  uint32_t n = 0;
  Rat radius = Rat(1, 4);  // circle radius for disk / annulus kinds
  int noise_percent = 0;   // p in [0, 100]; only noisy_annulus uses it
  Rat err{0};              // perturbation bound; annulus kinds only
  uint64_t seed = 0;
  int redraws = 16;        // whole-cloud retries when a draw is degenerate
};

/**
 * Draws a point cloud deterministically from the seed (same spec, same
 * bytes). Coordinates are sampled as 53-bit dyadic doubles and converted to
 * rationals exactly, so the double mirror used by the geometric filters is
 * exact. A draw that fails the general-position check is redrawn from the
 * continuing random stream up to `redraws` times, then rejected with
 * InputError. The full Theta(n^(dim+2)) check only runs while
 * binom(n, dim+2) stays desk-sized; larger clouds get the duplicate scan
 * only, leaving residual degeneracies to surface during enumeration.
 */
PointCloud generate(const GeneratorSpec& spec);

}  // namespace mcov
