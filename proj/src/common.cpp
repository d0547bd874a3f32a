#include "mcov/common.hpp"

#include <algorithm>

namespace mcov {

SiteSet set_union(const SiteSet& a, const SiteSet& b) {
  SiteSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

SiteSet set_difference(const SiteSet& a, const SiteSet& b) {
  SiteSet out;
  out.reserve(a.size());
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool set_contains(const SiteSet& a, const SiteSet& b) {
  return std::includes(a.begin(), a.end(), b.begin(), b.end());
}

SiteSet set_with(const SiteSet& a, uint32_t x) {
  SiteSet out = a;
  out.insert(std::lower_bound(out.begin(), out.end(), x), x);
  return out;
}

SiteSet set_without(const SiteSet& a, uint32_t x) {
  SiteSet out = a;
  auto it = std::lower_bound(out.begin(), out.end(), x);
  if (it != out.end() && *it == x) out.erase(it);
  return out;
}

uint64_t binomial(uint64_t n, uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  uint64_t result = 1;
  for (uint64_t i = 1; i <= k; ++i) {
    uint64_t numer = n - k + i;
    // result * numer / i is always integral at this point; guard overflow.
    if (result > UINT64_MAX / numer) throw GuardError("binomial coefficient overflows 64 bits");
    result = result * numer / i;
  }
  return result;
}


std::vector<uint32_t> flatten_sets(const std::vector<SiteSet>& sets) {
  std::vector<uint32_t> key;
  size_t total = 1;
  for (const SiteSet& v : sets) total += 1 + v.size();
  key.reserve(total);
  key.push_back(static_cast<uint32_t>(sets.size()));
  for (const SiteSet& v : sets) {
    key.push_back(static_cast<uint32_t>(v.size()));
    key.insert(key.end(), v.begin(), v.end());
  }
  return key;
}

}  // namespace mcov
