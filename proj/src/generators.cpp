#include "mcov/generators.hpp"

#include <cmath>
#include <random>

#include "mcov/general_position.hpp"

namespace mcov {

namespace {

/** Uniform dyadic double in [0,1): 53 random mantissa bits. */
double unit_double(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1p-53;
}

Point from_doubles(double x, double y, double z) {
  return {rat_from_double(x), rat_from_double(y), rat_from_double(z)};
}

Point draw_square(std::mt19937_64& rng) {
  return from_doubles(unit_double(rng), unit_double(rng), 0.0);
}

Point draw_annulus(std::mt19937_64& rng, double radius, double err) {
  const double two_pi = 6.283185307179586476925286766559;
  double theta = two_pi * unit_double(rng);
  double x = 0.5 + radius * std::cos(theta);
  double y = 0.5 + radius * std::sin(theta);
  if (err > 0) {
    x += err * (2.0 * unit_double(rng) - 1.0);
    y += err * (2.0 * unit_double(rng) - 1.0);
  }
  return from_doubles(x, y, 0.0);
}

std::vector<Point> draw_cloud(const GeneratorSpec& spec, std::mt19937_64& rng) {
  std::vector<Point> pts;
  pts.reserve(spec.n);
  const double radius = rat_to_double(spec.radius);
  const double err = rat_to_double(spec.err);
  for (uint32_t i = 0; i < spec.n; ++i) {
    switch (spec.kind) {
      case GenKind::uniform_square:
        pts.push_back(draw_square(rng));
        break;
      case GenKind::uniform_cube:
        pts.push_back(from_doubles(unit_double(rng), unit_double(rng), unit_double(rng)));
        break;
      case GenKind::disk: {
        double dx, dy;
        do {
          dx = 2.0 * unit_double(rng) - 1.0;
          dy = 2.0 * unit_double(rng) - 1.0;
        } while (dx * dx + dy * dy > 1.0);
        pts.push_back(from_doubles(0.5 + radius * dx, 0.5 + radius * dy, 0.0));
        break;
      }
      case GenKind::annulus:
        pts.push_back(draw_annulus(rng, radius, err));
        break;
      case GenKind::noisy_annulus: {
        // Noise decision first, from its own dyadic draw: exact compare of
        // 100 u < p keeps the Bernoulli(p/100) exact.
        bool noise = 100.0 * unit_double(rng) < static_cast<double>(spec.noise_percent);
        pts.push_back(noise ? draw_square(rng) : draw_annulus(rng, radius, err));
        break;
      }
    }
  }
  return pts;
}

/** binom(n, k) without overflow concerns for the small k used here. */
uint64_t binom_capped(uint64_t n, uint64_t k, uint64_t cap) {
  uint64_t r = 1;
  for (uint64_t i = 0; i < k; ++i) {
    if (r > cap) return cap + 1;
    r = r * (n - i) / (i + 1);
  }
  return r;
}

}  // namespace

std::string gen_kind_name(GenKind kind) {
  switch (kind) {
    case GenKind::uniform_square: return "uniform-square";
    case GenKind::uniform_cube: return "uniform-cube";
    case GenKind::disk: return "disk";
    case GenKind::annulus: return "annulus";
    case GenKind::noisy_annulus: return "noisy-annulus";
  }
  return "?";
}

std::optional<GenKind> parse_gen_kind(const std::string& name) {
  for (GenKind k : {GenKind::uniform_square, GenKind::uniform_cube, GenKind::disk,
                    GenKind::annulus, GenKind::noisy_annulus}) {
    if (name == gen_kind_name(k)) return k;
  }
  return std::nullopt;
}

PointCloud generate(const GeneratorSpec& spec) {
  if (spec.n == 0) throw InputError("generator: n must be positive");
  if (spec.noise_percent < 0 || spec.noise_percent > 100)
    throw InputError("generator: noise percentage must be in [0, 100]");
  if (spec.err < 0) throw InputError("generator: perturbation bound must be >= 0");
  if (spec.radius <= 0) throw InputError("generator: circle radius must be positive");
  const int dim = spec.kind == GenKind::uniform_cube ? 3 : 2;

  // The exhaustive general-position check enumerates binom(n, dim+2)
  // subsets; cap that at ~2*10^7 filtered predicate calls and fall back to
  // the duplicate scan beyond (degeneracies then surface in enumeration).
  const bool full_check =
      binom_capped(spec.n, static_cast<uint64_t>(dim) + 2, 20000000ull) <= 20000000ull;

  std::mt19937_64 rng(spec.seed);
  for (int attempt = 0; attempt <= spec.redraws; ++attempt) {
    PointCloud cloud(dim, draw_cloud(spec, rng));
    auto report = full_check ? check_general_position(cloud) : check_distinct(cloud);
    if (!report) return cloud;
  }
  throw InputError("generator: degenerate cloud persisted after " +
                   std::to_string(spec.redraws + 1) + " draws (seed " +
                   std::to_string(spec.seed) + ")");
}

}  // namespace mcov
