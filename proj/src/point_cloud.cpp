#include "mcov/point_cloud.hpp"

#include <cfloat>
#include <cmath>

namespace mcov {

PointCloud::PointCloud(int dim, std::vector<Point> sites) : dim_(dim), sites_(std::move(sites)) {
  if (dim_ < 1 || dim_ > 3) throw InputError("dimension must be 1, 2, or 3");
  approx_.resize(3 * sites_.size());
  doubles_exact_ = true;
  for (size_t i = 0; i < sites_.size(); ++i) {
    for (int c = 0; c < 3; ++c) {
      if (c >= dim_ && sites_[i][c] != 0)
        throw InputError("coordinate beyond the ambient dimension must be zero");
      approx_[3 * i + c] = rat_to_double(sites_[i][c]);
      if (doubles_exact_ && rat_from_double(approx_[3 * i + c]) != sites_[i][c])
        doubles_exact_ = false;
    }
  }
}

Rat PointCloud::dist_sq(uint32_t a, uint32_t b) const {
  Rat acc(0);
  for (int c = 0; c < dim_; ++c) {
    Rat d = sites_[a][c] - sites_[b][c];
    acc += d * d;
  }
  return acc;
}

Rat PointCloud::dist_sq(uint32_t a, const Point& p) const {
  Rat acc(0);
  for (int c = 0; c < dim_; ++c) {
    Rat d = sites_[a][c] - p[c];
    acc += d * d;
  }
  return acc;
}

Rat center_dist_sq(const Sphere& s, const Point& p) {
  Rat acc(0);
  for (int c = 0; c < s.dim; ++c) {
    Rat d = s.center[c] - p[c];
    acc += d * d;
  }
  return acc;
}

SphereSide side_of_sphere(const Sphere& s, const Point& p) {
  Rat d = center_dist_sq(s, p);
  int order = cmp(d, s.r_sq);
  if (order < 0) return SphereSide::inside;
  if (order > 0) return SphereSide::outside;
  return SphereSide::on;
}

SphereSide side_of_sphere_filtered(const Sphere& s, const PointCloud& cloud, uint32_t i) {
  if (cloud.doubles_exact()) {
    const double* p = cloud.approx_row(i);
    double dist2 = 0.0, mag = 0.0, cross = 0.0;
    for (int c = 0; c < s.dim; ++c) {
      double u = p[c] - s.center_d[c];
      dist2 += u * u;
      mag += u * u;
      cross += std::fabs(u) * std::fabs(s.center_d[c]);
    }
    double diff = dist2 - s.r_sq_d;
    // Generous envelope for: rounding of the exact center/radius into the
    // cached doubles, plus evaluation error of the difference itself.
    double bound = 16.0 * DBL_EPSILON * (mag + cross + std::fabs(s.r_sq_d));
    if (diff > bound) return SphereSide::outside;
    if (diff < -bound) return SphereSide::inside;
  }
  return side_of_sphere(s, cloud.site(i));
}

}  // namespace mcov
