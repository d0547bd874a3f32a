#include <doctest.h>

#include <algorithm>
#include <optional>
#include <random>
#include <vector>

#include "mcov/general_position.hpp"
#include "mcov/minsphere.hpp"
#include "mcov/point_cloud.hpp"
#include "mcov/predicates.hpp"

using namespace mcov;

namespace {

PointCloud make_cloud(int dim, const std::vector<std::array<double, 3>>& pts) {
  std::vector<Point> sites;
  for (const auto& p : pts) {
    sites.push_back({rat_from_double(p[0]), rat_from_double(p[1]), rat_from_double(p[2])});
  }
  return PointCloud(dim, std::move(sites));
}

/** Random cloud with distinct sites on the grid (Z/8)^dim, |coord| <= 4. */
PointCloud random_cloud(std::mt19937& rng, int dim, int n) {
  std::uniform_int_distribution<int> coord(-32, 32);
  std::vector<Point> sites;
  std::vector<std::array<int, 3>> seen;
  while (static_cast<int>(sites.size()) < n) {
    std::array<int, 3> c{0, 0, 0};
    for (int i = 0; i < dim; ++i) c[i] = coord(rng);
    if (std::find(seen.begin(), seen.end(), c) != seen.end()) continue;
    seen.push_back(c);
    sites.push_back({Rat(c[0], 8), Rat(c[1], 8), Rat(c[2], 8)});
  }
  return PointCloud(dim, std::move(sites));
}

/**
 * Reference solver for the constrained minimum sphere: enumerate every
 * candidate tight set B = x_on plus at most dim+1-|x_on| sites from
 * x_in ∪ x_out, build the minimum sphere through B, keep the smallest one
 * that satisfies all constraints exactly.
 */
std::optional<Sphere> brute_force_min_sphere(const PointCloud& cloud, const SiteSet& x_on,
                                             const SiteSet& x_in, const SiteSet& x_out) {
  const int dim = cloud.dim();
  if (x_on.empty() && x_in.empty()) {
    return min_sphere_constrained(cloud, x_on, x_in, x_out);  // radius-0 case
  }
  SiteSet pool = set_union(x_in, x_out);
  std::optional<Sphere> best;
  const size_t extra_max = dim + 1 - x_on.size();
  for (size_t extra = 0; extra <= std::min(extra_max, pool.size()); ++extra) {
    if (extra == 0 && x_on.empty()) continue;
    for_each_combination(
        static_cast<uint32_t>(pool.size()), static_cast<uint32_t>(extra), [&](const uint32_t* idx) {
          SiteSet B = x_on;
          for (size_t t = 0; t < extra; ++t) B = set_with(B, pool[idx[t]]);
          Sphere cand;
          try {
            cand = circumsphere(cloud, B);
          } catch (const GeneralPositionError&) {
            return true;
          }
          for (uint32_t q : x_in) {
            if (side_of_sphere(cand, cloud.site(q)) == SphereSide::outside) return true;
          }
          for (uint32_t q : x_out) {
            if (side_of_sphere(cand, cloud.site(q)) == SphereSide::inside) return true;
          }
          if (!best || cand.r_sq < best->r_sq) best = cand;
          return true;
        });
  }
  return best;
}

}  // namespace

TEST_CASE("point cloud stores exact coordinates and a double mirror") {
  PointCloud c = make_cloud(2, {{0, 0, 0}, {1.5, -2.25, 0}});
  CHECK(c.size() == 2);
  CHECK(c.dim() == 2);
  CHECK(c.site(1)[0] == Rat(3, 2));
  CHECK(c.approx(1, 1) == -2.25);
  CHECK(c.doubles_exact());
  CHECK(c.dist_sq(0, 1) == Rat(9, 4) + Rat(81, 16));

  // A cloud with a non-dyadic coordinate keeps exactness but loses the flag.
  std::vector<Point> pts = {{Rat(1, 3), Rat(0), Rat(0)}, {Rat(1), Rat(0), Rat(0)}};
  PointCloud c2(1, std::move(pts));
  CHECK_FALSE(c2.doubles_exact());
  CHECK(c2.dist_sq(0, 1) == Rat(4, 9));
}

TEST_CASE("circumsphere of frozen configurations") {
  SUBCASE("two points on a line") {
    PointCloud c = make_cloud(1, {{0, 0, 0}, {3, 0, 0}});
    Sphere s = circumsphere(c, {0, 1});
    CHECK(s.center[0] == Rat(3, 2));
    CHECK(s.r_sq == Rat(9, 4));
  }
  SUBCASE("right triangle in the plane") {
    PointCloud c = make_cloud(2, {{0, 0, 0}, {2, 0, 0}, {0, 2, 0}});
    Sphere s = circumsphere(c, {0, 1, 2});
    CHECK(s.center[0] == Rat(1));
    CHECK(s.center[1] == Rat(1));
    CHECK(s.r_sq == Rat(2));
  }
  SUBCASE("tetrahedron corner in space") {
    PointCloud c = make_cloud(3, {{0, 0, 0}, {2, 0, 0}, {0, 2, 0}, {0, 0, 2}});
    Sphere s = circumsphere(c, {0, 1, 2, 3});
    CHECK(s.center[0] == Rat(1));
    CHECK(s.center[1] == Rat(1));
    CHECK(s.center[2] == Rat(1));
    CHECK(s.r_sq == Rat(3));
  }
  SUBCASE("fewer points than dim+1 give the smallest sphere through them") {
    PointCloud c = make_cloud(2, {{0, 0, 0}, {2, 2, 0}});
    Sphere s = circumsphere(c, {0, 1});
    CHECK(s.center[0] == Rat(1));
    CHECK(s.center[1] == Rat(1));
    CHECK(s.r_sq == Rat(2));
    Sphere s1 = circumsphere(c, {1});
    CHECK(s1.r_sq == Rat(0));
    CHECK(s1.center[0] == Rat(2));
  }
  SUBCASE("degenerate subset throws") {
    PointCloud c = make_cloud(2, {{0, 0, 0}, {1, 1, 0}, {2, 2, 0}});
    CHECK_THROWS_AS(circumsphere(c, {0, 1, 2}), GeneralPositionError);
  }
}

TEST_CASE("side classifications agree between exact and filtered paths") {
  std::mt19937 rng(7);
  for (int dim = 1; dim <= 3; ++dim) {
    for (int trial = 0; trial < 30; ++trial) {
      PointCloud c = random_cloud(rng, dim, 6);
      Sphere s = circumsphere(c, {0, 1});
      for (uint32_t i = 0; i < c.size(); ++i) {
        CHECK(side_of_sphere_filtered(s, c, i) == side_of_sphere(s, c.site(i)));
      }
    }
  }
}

TEST_CASE("circumsphere side predicate matches the explicit circumsphere") {
  std::mt19937 rng(11);
  for (int dim = 1; dim <= 3; ++dim) {
    int done = 0;
    while (done < 40) {
      PointCloud c = random_cloud(rng, dim, dim + 4);
      std::vector<uint32_t> T(dim + 1);
      for (int i = 0; i <= dim; ++i) T[i] = i;
      int orient = orientation_sign(c, T.data());
      if (orient == 0) continue;  // degenerate draw; resample
      SiteSet B(T.begin(), T.end());
      Sphere s = circumsphere(c, B);
      for (uint32_t p = dim + 1; p < c.size(); ++p) {
        CHECK(circumsphere_side(c, T.data(), orient, p) == side_of_sphere(s, c.site(p)));
      }
      // Swapping two subset entries flips the orientation but must not
      // change the classification.
      std::swap(T[0], T[1]);
      int orient2 = orientation_sign(c, T.data());
      CHECK(orient2 == -orient);
      for (uint32_t p = dim + 1; p < c.size(); ++p) {
        CHECK(circumsphere_side(c, T.data(), orient2, p) == side_of_sphere(s, c.site(p)));
      }
      ++done;
    }
  }
}

TEST_CASE("circumsphere side works on non-dyadic coordinates via the exact path") {
  std::vector<Point> pts = {{Rat(0), Rat(0), Rat(0)},
                            {Rat(1, 3), Rat(0), Rat(0)},
                            {Rat(0), Rat(1, 3), Rat(0)},
                            {Rat(1, 10), Rat(1, 10), Rat(0)},
                            {Rat(5), Rat(5), Rat(0)}};
  PointCloud c(2, std::move(pts));
  REQUIRE_FALSE(c.doubles_exact());
  uint32_t T[3] = {0, 1, 2};
  int orient = orientation_sign(c, T);
  REQUIRE(orient != 0);
  Sphere s = circumsphere(c, {0, 1, 2});
  CHECK(circumsphere_side(c, T, orient, 3) == side_of_sphere(s, c.site(3)));
  CHECK(circumsphere_side(c, T, orient, 4) == side_of_sphere(s, c.site(4)));
  CHECK(side_of_sphere(s, c.site(3)) == SphereSide::inside);
  CHECK(side_of_sphere(s, c.site(4)) == SphereSide::outside);
}

TEST_CASE("constrained minimum sphere on frozen configurations") {
  SUBCASE("cover two sites, exclusion not binding") {
    PointCloud c = make_cloud(2, {{0, 0, 0}, {2, 0, 0}, {0, 2, 0}});
    auto s = min_sphere_constrained(c, {}, {0, 1}, {2});
    REQUIRE(s.has_value());
    CHECK(s->center[0] == Rat(1));
    CHECK(s->center[1] == Rat(0));
    CHECK(s->r_sq == Rat(1));
  }
  SUBCASE("binding exclusion pushes the sphere away") {
    PointCloud c = make_cloud(2, {{0, 0, 0}, {2, 0, 0}, {1, 0.5, 0}});
    auto s = min_sphere_constrained(c, {}, {0, 1}, {2});
    REQUIRE(s.has_value());
    CHECK(s->center[0] == Rat(1));
    CHECK(s->center[1] == Rat(-3, 4));
    CHECK(s->r_sq == Rat(25, 16));
  }
  SUBCASE("forced-on site") {
    PointCloud c = make_cloud(2, {{0, 0, 0}, {2, 0, 0}});
    auto s = min_sphere_constrained(c, {0}, {1}, {});
    REQUIRE(s.has_value());
    CHECK(s->center[0] == Rat(1));
    CHECK(s->r_sq == Rat(1));
  }
  SUBCASE("infeasible on a line: excluded site between covered sites") {
    PointCloud c = make_cloud(1, {{0, 0, 0}, {1, 0, 0}, {2, 0, 0}});
    auto s = min_sphere_constrained(c, {}, {0, 2}, {1});
    CHECK_FALSE(s.has_value());
  }
  SUBCASE("empty in and on sets give a radius-0 sphere away from all sites") {
    PointCloud c = make_cloud(2, {{0, 0, 0}, {2, 0, 0}, {0, 2, 0}});
    auto s = min_sphere_constrained(c, {}, {}, {0, 1, 2});
    REQUIRE(s.has_value());
    CHECK(s->r_sq == Rat(0));
    for (uint32_t i = 0; i < 3; ++i) {
      CHECK(side_of_sphere(*s, c.site(i)) == SphereSide::outside);
    }
  }
}

TEST_CASE("minimum enclosing ball matches the subset-enumeration reference") {
  std::mt19937 rng(23);
  for (int dim = 1; dim <= 3; ++dim) {
    for (int trial = 0; trial < 40; ++trial) {
      int n = 1 + static_cast<int>(rng() % 6);
      PointCloud c = random_cloud(rng, dim, n);
      SiteSet all(n);
      for (int i = 0; i < n; ++i) all[i] = i;
      Sphere got = miniball(c, all);
      auto expect = brute_force_min_sphere(c, {}, all, {});
      REQUIRE(expect.has_value());
      CHECK(got.r_sq == expect->r_sq);
      for (int d = 0; d < dim; ++d) CHECK(got.center[d] == expect->center[d]);
      int on_count = 0;
      for (uint32_t i : all) {
        SphereSide side = side_of_sphere(got, c.site(i));
        CHECK(side != SphereSide::outside);
        if (side == SphereSide::on) ++on_count;
      }
      CHECK(on_count >= 1);
    }
  }
}

TEST_CASE("constrained solver matches the reference on random instances") {
  std::mt19937 rng(31);
  int infeasible_seen = 0;
  for (int dim = 1; dim <= 3; ++dim) {
    for (int trial = 0; trial < 50; ++trial) {
      int n = 3 + static_cast<int>(rng() % 5);
      PointCloud c = random_cloud(rng, dim, n);
      SiteSet x_on, x_in, x_out;
      for (uint32_t i = 0; i < static_cast<uint32_t>(n); ++i) {
        switch (rng() % 4) {
          case 0:
            if (static_cast<int>(x_on.size()) < dim) x_on.push_back(i);
            else x_in.push_back(i);
            break;
          case 1: x_in.push_back(i); break;
          case 2: x_out.push_back(i); break;
          default: break;  // unconstrained
        }
      }
      if (x_on.empty() && x_in.empty()) x_in.push_back(0);
      auto got = min_sphere_constrained(c, x_on, x_in, x_out);
      auto expect = brute_force_min_sphere(c, x_on, x_in, x_out);
      REQUIRE(got.has_value() == expect.has_value());
      if (got) {
        CHECK(got->r_sq == expect->r_sq);
        for (uint32_t q : x_on) CHECK(side_of_sphere(*got, c.site(q)) == SphereSide::on);
        for (uint32_t q : x_in) CHECK(side_of_sphere(*got, c.site(q)) != SphereSide::outside);
        for (uint32_t q : x_out) CHECK(side_of_sphere(*got, c.site(q)) != SphereSide::inside);
      } else {
        ++infeasible_seen;
      }
    }
  }
  CHECK(infeasible_seen > 0);  // the sample must exercise the infeasible branch
}

TEST_CASE("general position checker") {
  SUBCASE("clean cloud passes") {
    PointCloud c = make_cloud(2, {{0, 0, 0}, {2, 0, 0}, {0.25, 2, 0}, {3, 1.5, 0}});
    CHECK_FALSE(check_distinct(c).has_value());
    CHECK_FALSE(check_general_position(c).has_value());
  }
  SUBCASE("duplicate sites are reported") {
    PointCloud c = make_cloud(2, {{0, 0, 0}, {1, 1, 0}, {0, 0, 0}});
    auto rep = check_distinct(c);
    REQUIRE(rep.has_value());
    CHECK(rep->kind == "duplicate");
    CHECK(rep->subset == SiteSet{0, 2});
  }
  SUBCASE("collinear triple in the plane is reported") {
    PointCloud c = make_cloud(2, {{0, 0, 0}, {1, 1, 0}, {3, 3, 0}, {0, 5, 0}});
    auto rep = check_general_position(c);
    REQUIRE(rep.has_value());
    CHECK(rep->kind == "affinely dependent");
    CHECK(rep->subset == SiteSet{0, 1, 2});
  }
  SUBCASE("cocircular quadruple in the plane is reported") {
    PointCloud c = make_cloud(2, {{1, 0, 0}, {0, 1, 0}, {-1, 0, 0}, {0, -1, 0}, {5, 7, 0}});
    auto rep = check_general_position(c);
    REQUIRE(rep.has_value());
    CHECK(rep->kind == "cospherical");
    CHECK(rep->subset == SiteSet{0, 1, 2, 3});
  }
  SUBCASE("equally spaced sites on a line are fine") {
    PointCloud c = make_cloud(1, {{0, 0, 0}, {1, 0, 0}, {2, 0, 0}, {3, 0, 0}});
    CHECK_FALSE(check_general_position(c).has_value());
  }
  SUBCASE("midpoints on a line are not degenerate") {
    // A 0-sphere holds exactly two points, so three distinct sites can never
    // be cospherical on a line; midpoint configurations must pass.
    PointCloud c = make_cloud(1, {{0, 0, 0}, {2, 0, 0}, {1, 0, 0}, {1.125, 0, 0}});
    CHECK_FALSE(check_general_position(c).has_value());
  }
}
