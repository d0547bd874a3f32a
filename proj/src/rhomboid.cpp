#include "mcov/rhomboid.hpp"

#include <algorithm>

#include "mcov/predicates.hpp"

namespace mcov {

namespace {

/** Canonical hash key of a cell: [|x_in|, x_in..., x_on...]. */
std::vector<uint32_t> cell_key(const Rhomboid& rho) {
  std::vector<uint32_t> key;
  key.reserve(1 + rho.x_in.size() + rho.x_on.size());
  key.push_back(static_cast<uint32_t>(rho.x_in.size()));
  key.insert(key.end(), rho.x_in.begin(), rho.x_in.end());
  key.insert(key.end(), rho.x_on.begin(), rho.x_on.end());
  return key;
}

bool cell_less(const Rhomboid& a, const Rhomboid& b) {
  if (a.cell_dim() != b.cell_dim()) return a.cell_dim() < b.cell_dim();
  if (a.x_in.size() != b.x_in.size()) return a.x_in.size() < b.x_in.size();
  if (a.x_in != b.x_in) return a.x_in < b.x_in;
  return a.x_on < b.x_on;
}

}  // namespace

std::vector<Rhomboid> faces(const Rhomboid& rho) {
  const int m = rho.cell_dim();
  std::vector<Rhomboid> out;
  out.reserve(static_cast<size_t>(1) << (2 * m));  // close to 3^m
  // Each face assigns every x_on site one of three roles: stay on the
  // sphere, move inside, or move outside; encoded as base-3 digits.
  uint64_t codes = 1;
  for (int i = 0; i < m; ++i) codes *= 3;
  for (uint64_t code = 0; code < codes; ++code) {
    Rhomboid f;
    f.x_in = rho.x_in;
    uint64_t c = code;
    for (int i = 0; i < m; ++i, c /= 3) {
      switch (c % 3) {
        case 0: f.x_on.push_back(rho.x_on[i]); break;
        case 1: f.x_in.push_back(rho.x_on[i]); break;
        default: break;  // moved outside
      }
    }
    std::sort(f.x_in.begin(), f.x_in.end());
    out.push_back(std::move(f));
  }
  return out;
}

void RhomboidTiling::finalize(std::vector<Rhomboid> cells) {
  std::sort(cells.begin(), cells.end(), cell_less);
  cells_ = std::move(cells);
  index_.clear();
  index_.reserve(cells_.size() * 2);
  for (uint32_t id = 0; id < cells_.size(); ++id) {
    auto [it, fresh] = index_.emplace(cell_key(cells_[id]), id);
    MCOV_CHECK(fresh, "duplicate rhomboid cell after deduplication");
    (void)it;
  }
  r_cache_.assign(cells_.size(), Rat(0));
  r_known_.assign(cells_.size(), 0);
}

int RhomboidTiling::id_of(const SiteSet& x_in, const SiteSet& x_on) const {
  std::vector<uint32_t> key;
  key.reserve(1 + x_in.size() + x_on.size());
  key.push_back(static_cast<uint32_t>(x_in.size()));
  key.insert(key.end(), x_in.begin(), x_in.end());
  key.insert(key.end(), x_on.begin(), x_on.end());
  auto it = index_.find(key);
  return it == index_.end() ? -1 : static_cast<int>(it->second);
}

int RhomboidTiling::vertex_id(const SiteSet& v) const { return id_of(v, {}); }

const Rat& RhomboidTiling::r_val(uint32_t id) const {
  MCOV_CHECK(id < cells_.size(), "rhomboid id out of range");
  if (!r_known_[id]) {
    r_cache_[id] = witness_sphere(id).r_sq;
    r_known_[id] = 1;
  }
  return r_cache_[id];
}

Sphere RhomboidTiling::witness_sphere(uint32_t id) const {
  MCOV_CHECK(id < cells_.size(), "rhomboid id out of range");
  const Rhomboid& rho = cells_[id];
  // x_out = all sites not in x_in or x_on.
  SiteSet used = set_union(rho.x_in, rho.x_on);
  SiteSet x_out;
  x_out.reserve(cloud_->size() - used.size());
  size_t u = 0;
  for (uint32_t s = 0; s < cloud_->size(); ++s) {
    if (u < used.size() && used[u] == s) {
      ++u;
    } else {
      x_out.push_back(s);
    }
  }
  auto sphere = min_sphere_constrained(*cloud_, rho.x_on, rho.x_in, x_out);
  MCOV_CHECK(sphere.has_value(), "enumerated rhomboid has no realizing sphere");
  return *sphere;
}

RhomboidTiling enumerate_rhomboids(const PointCloud& cloud, int max_k) {
  const uint32_t n = cloud.size();
  const int d = cloud.dim();
  if (n < static_cast<uint32_t>(d + 1)) {
    throw InputError("need at least dim+1 sites to enumerate the rhomboid tiling");
  }

  RhomboidTiling t;
  t.cloud_ = &cloud;
  t.mode_ = max_k < 0 ? RhomboidTiling::Mode::full : RhomboidTiling::Mode::support;
  t.level_ = max_k;

  // Pass 1: top cells. Every affinely independent (d+1)-subset T has a
  // unique circumsphere; the sites strictly inside it form x_in and T itself
  // is x_on. In support mode a subset is abandoned as soon as more than
  // max_k inside sites are seen.
  std::vector<Rhomboid> tops;
  SiteSet x_in;
  x_in.reserve(n);
  for_each_combination(n, static_cast<uint32_t>(d + 1), [&](const uint32_t* T) {
    int orient = orientation_sign(cloud, T);
    if (orient == 0) {
      throw GeneralPositionError("affinely-degenerate",
                                 SiteSet(T, T + d + 1));
    }
    x_in.clear();
    bool keep = true;
    uint32_t t_pos = 0;
    for (uint32_t p = 0; p < n; ++p) {
      if (t_pos <= static_cast<uint32_t>(d) && T[t_pos] == p) {
        ++t_pos;
        continue;
      }
      SphereSide side = circumsphere_side(cloud, T, orient, p);
      if (side == SphereSide::on) {
        SiteSet bad(T, T + d + 1);
        bad.push_back(p);
        std::sort(bad.begin(), bad.end());
        throw GeneralPositionError("cospherical", bad);
      }
      if (side == SphereSide::inside) {
        x_in.push_back(p);
        if (max_k >= 0 && x_in.size() > static_cast<size_t>(max_k)) {
          keep = false;
          break;
        }
      }
    }
    if (keep) {
      Rhomboid top;
      top.x_in = x_in;  // already sorted: p ran in increasing order
      top.x_on.assign(T, T + d + 1);
      tops.push_back(std::move(top));
    }
    return true;
  });

  // Pass 2: close under faces, deduplicating by key. In support mode faces
  // deeper than max_k (k_min > max_k) are dropped; they cannot carry any
  // sliced cell of depth <= max_k.
  std::unordered_map<std::vector<uint32_t>, uint32_t, U32VecHash> seen;
  std::vector<Rhomboid> cells;
  for (const Rhomboid& top : tops) {
    for (Rhomboid& f : faces(top)) {
      if (max_k >= 0 && f.k_min() > max_k) continue;
      auto key = cell_key(f);
      if (seen.emplace(std::move(key), 0u).second) {
        cells.push_back(std::move(f));
      }
    }
  }

  t.finalize(std::move(cells));
  return t;
}

RhomboidTiling truncate_tiling(const RhomboidTiling& t, int K) {
  MCOV_CHECK(K >= 0, "truncation level must be non-negative");
  const bool deep_enough = t.mode() == RhomboidTiling::Mode::full || t.level() >= K;
  MCOV_CHECK(deep_enough, "source tiling does not reach the requested truncation level");
  RhomboidTiling out;
  out.cloud_ = t.cloud_;
  out.mode_ = RhomboidTiling::Mode::truncated;
  out.level_ = K;
  std::vector<Rhomboid> kept;
  for (const Rhomboid& rho : t.cells_) {
    if (rho.k_max() <= K) kept.push_back(rho);
  }
  out.finalize(std::move(kept));
  return out;
}

std::vector<uint32_t> boundary_rhomboid(const RhomboidTiling& t, uint32_t id) {
  const Rhomboid& rho = t.cell(id);
  std::vector<uint32_t> out;
  out.reserve(2 * rho.x_on.size());
  for (uint32_t s : rho.x_on) {
    SiteSet on = set_without(rho.x_on, s);
    // Facet with s moved inside the sphere.
    int f_in = t.id_of(set_with(rho.x_in, s), on);
    MCOV_CHECK(f_in >= 0, "missing inward facet; tiling not face-closed here");
    out.push_back(static_cast<uint32_t>(f_in));
    // Facet with s moved outside.
    int f_out = t.id_of(rho.x_in, on);
    MCOV_CHECK(f_out >= 0, "missing outward facet; tiling not face-closed here");
    out.push_back(static_cast<uint32_t>(f_out));
  }
  std::sort(out.begin(), out.end());
  return out;
}

TilingStats tiling_stats(const RhomboidTiling& t) {
  TilingStats st;
  st.n = t.cloud().size();
  st.dim = t.dim();
  st.total_cells = t.cell_count();
  st.cells_per_dim.assign(st.dim + 2, 0);
  int max_kmin = 0;
  for (const Rhomboid& rho : t.cells()) {
    st.cells_per_dim[rho.cell_dim()] += 1;
    max_kmin = std::max(max_kmin, rho.k_min());
    st.max_depth = std::max(st.max_depth, rho.k_max());
    if (rho.cell_dim() == st.dim + 1) st.top_cells += 1;
  }
  st.cells_per_k_min.assign(max_kmin + 1, 0);
  st.v_k.assign(st.max_depth + 1, 0);
  for (const Rhomboid& rho : t.cells()) {
    st.cells_per_k_min[rho.k_min()] += 1;
    if (rho.cell_dim() == st.dim + 1) {
      for (int k = rho.k_min() + 1; k < rho.k_max(); ++k) st.v_k[k] += 1;
    }
  }
  // Size bound 2 (n+1)^(dim+1); only the full tiling is expected to meet it.
  uint64_t bound = 2;
  for (int i = 0; i <= st.dim; ++i) bound *= (st.n + 1);
  st.size_bound = bound;
  st.bound_ok = st.total_cells <= bound;
  return st;
}

}  // namespace mcov
