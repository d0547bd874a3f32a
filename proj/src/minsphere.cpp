#include "mcov/minsphere.hpp"

#include <algorithm>

namespace mcov {
namespace {

// Solves the m x m rational system A x = b by Gaussian elimination.
// Returns false when A is singular.
bool solve_linear(std::vector<std::vector<Rat>>& A, std::vector<Rat>& b) {
  const size_t m = b.size();
  for (size_t col = 0; col < m; ++col) {
    size_t pivot = col;
    while (pivot < m && A[pivot][col] == 0) ++pivot;
    if (pivot == m) return false;
    std::swap(A[pivot], A[col]);
    std::swap(b[pivot], b[col]);
    for (size_t row = col + 1; row < m; ++row) {
      if (A[row][col] == 0) continue;
      Rat f = A[row][col] / A[col][col];
      for (size_t c = col; c < m; ++c) A[row][c] -= f * A[col][c];
      b[row] -= f * b[col];
    }
  }
  for (size_t col = m; col-- > 0;) {
    Rat acc = b[col];
    for (size_t c = col + 1; c < m; ++c) acc -= A[col][c] * b[c];
    b[col] = acc / A[col][col];
  }
  return true;
}

}  // namespace

Sphere circumsphere(const PointCloud& cloud, const SiteSet& B) {
  MCOV_CHECK(!B.empty() && B.size() <= static_cast<size_t>(cloud.dim()) + 1,
             "circumsphere: |B| must be in [1, dim+1]");
  Sphere s;
  s.dim = cloud.dim();
  const Point& p0 = cloud.site(B[0]);
  const size_t m = B.size() - 1;
  if (m == 0) {
    s.center = p0;
    s.r_sq = 0;
    s.refresh_cache();
    return s;
  }
  // Center c = p0 + sum_j lambda_j v_j with v_j = p_j - p0; equal distances
  // to p0 and p_i give the Gram system (2 v_i . v_j) lambda = |v_i|^2.
  std::vector<std::array<Rat, 3>> v(m);
  for (size_t j = 0; j < m; ++j)
    for (int c = 0; c < s.dim; ++c) v[j][c] = cloud.site(B[j + 1])[c] - p0[c];
  std::vector<std::vector<Rat>> G(m, std::vector<Rat>(m, Rat(0)));
  std::vector<Rat> rhs(m, Rat(0));
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = 0; j < m; ++j) {
      Rat dot(0);
      for (int c = 0; c < s.dim; ++c) dot += v[i][c] * v[j][c];
      G[i][j] = 2 * dot;
    }
    Rat norm(0);
    for (int c = 0; c < s.dim; ++c) norm += v[i][c] * v[i][c];
    rhs[i] = norm;
  }
  if (!solve_linear(G, rhs)) {
    std::vector<uint32_t> subset(B.begin(), B.end());
    throw GeneralPositionError("affinely dependent", subset);
  }
  for (int c = 0; c < s.dim; ++c) {
    Rat acc = p0[c];
    for (size_t j = 0; j < m; ++j) acc += rhs[j] * v[j][c];
    s.center[c] = acc;
  }
  s.r_sq = cloud.dist_sq(B[0], s.center);
  s.refresh_cache();
  return s;
}

std::optional<Sphere> min_sphere_constrained(const PointCloud& cloud, const SiteSet& x_on,
                                             const SiteSet& x_in, const SiteSet& x_out) {
  const int dim = cloud.dim();
  MCOV_CHECK(x_on.size() <= static_cast<size_t>(dim) + 1, "min_sphere_constrained: |x_on| > dim+1");

  if (x_on.empty() && x_in.empty()) {
    // Any point distinct from all sites realizes radius 0 with everything
    // outside; pick one past the maximum first coordinate.
    Sphere s;
    s.dim = dim;
    Rat mx(0);
    for (uint32_t i = 0; i < cloud.size(); ++i)
      if (i == 0 || cloud.site(i)[0] > mx) mx = cloud.site(i)[0];
    s.center[0] = mx + 1;
    s.r_sq = 0;
    s.refresh_cache();
    return s;
  }

  // Lazily activated outside constraints.
  SiteSet active_out;
  for (int round = 0;; ++round) {
    MCOV_CHECK(round <= static_cast<int>(x_out.size()) + 1,
               "min_sphere_constrained: cutting-plane loop failed to terminate");
    // Candidate tight sets: x_on plus up to dim+1-|x_on| sites drawn from
    // x_in and the activated outside sites.
    SiteSet pool = set_union(x_in, active_out);
    const size_t extra_max = dim + 1 - x_on.size();
    std::vector<std::pair<Rat, Sphere>> candidates;  // (r_sq, sphere)
    std::vector<SiteSet> tight_sets;
    for (size_t extra = 0; extra <= std::min(extra_max, pool.size()); ++extra) {
      if (extra == 0 && x_on.empty()) continue;  // a sphere needs a tight site
      for_each_combination(static_cast<uint32_t>(pool.size()), static_cast<uint32_t>(extra),
                           [&](const uint32_t* idx) {
                             SiteSet B = x_on;
                             for (size_t t = 0; t < extra; ++t) B = set_with(B, pool[idx[t]]);
                             try {
                               candidates.emplace_back(Rat(0), circumsphere(cloud, B));
                             } catch (const GeneralPositionError&) {
                               // Affinely dependent candidate: the optimum always
                               // has an affinely independent tight basis, so a
                               // dependent B can be skipped safely.
                               return true;
                             }
                             candidates.back().first = candidates.back().second.r_sq;
                             tight_sets.push_back(std::move(B));
                             return true;
                           });
    }
    // Scan candidates in increasing radius; the first feasible one is the
    // optimum of the relaxed problem (only active_out outside constraints).
    std::vector<size_t> order(candidates.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
      int c = cmp(candidates[a].first, candidates[b].first);
      if (c != 0) return c < 0;
      return tight_sets[a] < tight_sets[b];  // deterministic tie-break
    });
    const Sphere* winner = nullptr;
    for (size_t oi : order) {
      const Sphere& cand = candidates[oi].second;
      bool ok = true;
      for (uint32_t q : x_in) {
        if (side_of_sphere_filtered(cand, cloud, q) == SphereSide::outside) {
          ok = false;
          break;
        }
      }
      if (ok) {
        for (uint32_t q : active_out) {
          if (side_of_sphere_filtered(cand, cloud, q) == SphereSide::inside) {
            ok = false;
            break;
          }
        }
      }
      if (ok) {
        winner = &cand;
        break;
      }
    }
    if (winner == nullptr) return std::nullopt;
    // Verify the not-yet-activated outside constraints; any violator joins
    // the pool and the relaxation is re-solved.
    SiteSet violators;
    for (uint32_t q : x_out) {
      if (std::binary_search(active_out.begin(), active_out.end(), q)) continue;
      if (side_of_sphere_filtered(*winner, cloud, q) == SphereSide::inside)
        violators.push_back(q);
    }
    if (violators.empty()) return *winner;
    active_out = set_union(active_out, violators);
  }
}

Sphere miniball(const PointCloud& cloud, const SiteSet& points) {
  if (points.empty()) {
    Sphere s;
    s.dim = cloud.dim();
    s.r_sq = 0;
    s.refresh_cache();
    return s;
  }
  auto s = min_sphere_constrained(cloud, SiteSet{}, points, SiteSet{});
  MCOV_CHECK(s.has_value(), "miniball must be feasible");
  return *s;
}

}  // namespace mcov
