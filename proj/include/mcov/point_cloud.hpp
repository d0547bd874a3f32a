#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "mcov/common.hpp"
#include "mcov/rational.hpp"

namespace mcov {

/** One site with exact rational coordinates (unused axes are zero). */
using Point = std::array<Rat, 3>;

/**
 * Finite set of distinct sites in R^dim, dim in {1,2,3}.
 * Coordinates are exact rationals; a double mirror of every coordinate is
 * kept for the certified floating-point filters. The filters are only valid
 * when every coordinate is exactly representable as a double, which
 * `doubles_exact()` reports (true for generated clouds and for integer or
 * dyadic decimal input).
 */
class PointCloud {
 public:
  PointCloud(int dim, std::vector<Point> sites);

  int dim() const { return dim_; }
  uint32_t size() const { return static_cast<uint32_t>(sites_.size()); }
  const Point& site(uint32_t i) const { return sites_[i]; }
  const std::vector<Point>& sites() const { return sites_; }

  /** Double mirror, coordinate c of site i. */
  double approx(uint32_t i, int c) const { return approx_[3 * i + c]; }
  const double* approx_row(uint32_t i) const { return &approx_[3 * i]; }
  bool doubles_exact() const { return doubles_exact_; }

  /** Exact squared distance between two sites. */
  Rat dist_sq(uint32_t a, uint32_t b) const;

  /** Exact squared distance between a site and an arbitrary point. */
  Rat dist_sq(uint32_t a, const Point& p) const;

 private:
  int dim_;
  std::vector<Point> sites_;
  std::vector<double> approx_;
  bool doubles_exact_;
};

/** Sphere with exact center and squared radius, plus cached doubles. */
struct Sphere {
  Point center{Rat(0), Rat(0), Rat(0)};
  Rat r_sq{0};
  int dim = 0;
  std::array<double, 3> center_d{0.0, 0.0, 0.0};
  double r_sq_d = 0.0;

  void refresh_cache() {
    for (int c = 0; c < 3; ++c) center_d[c] = rat_to_double(center[c]);
    r_sq_d = rat_to_double(r_sq);
  }
};

enum class SphereSide { inside, on, outside };

/** Exact classification of point p against sphere s. */
SphereSide side_of_sphere(const Sphere& s, const Point& p);

/**
 * Classification of site i of the cloud against sphere s, using a certified
 * floating-point screen first and exact arithmetic only when the screen is
 * inconclusive. Results always equal side_of_sphere.
 */
SphereSide side_of_sphere_filtered(const Sphere& s, const PointCloud& cloud, uint32_t i);

/** Exact squared distance from the sphere center to an arbitrary point. */
Rat center_dist_sq(const Sphere& s, const Point& p);

}  // namespace mcov
