#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mcov {

/** Base class for all user-facing failures raised by the library. */
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& message) : std::runtime_error(message) {}
};

/** Input fails a documented precondition (bad file, bad flag combination). */
class InputError : public Error {
 public:
  using Error::Error;
};

/** Requested computation exceeds a documented size guard. */
class GuardError : public Error {
 public:
  using Error::Error;
};

/** Raised when the sites are degenerate; carries the offending subset. */
class GeneralPositionError : public Error {
 public:
  GeneralPositionError(const std::string& kind, std::vector<uint32_t> subset)
      : Error(describe(kind, subset)), kind_(kind), subset_(std::move(subset)) {}
  const std::string& kind() const { return kind_; }
  const std::vector<uint32_t>& subset() const { return subset_; }

 private:
  static std::string describe(const std::string& kind, const std::vector<uint32_t>& subset) {
    std::string msg = "general position violated (" + kind + "): sites";
    for (uint32_t s : subset) msg += " " + std::to_string(s);
    return msg;
  }
  std::string kind_;
  std::vector<uint32_t> subset_;
};

/** Internal invariant failure; indicates a bug, not bad input. */
class InternalError : public std::logic_error {
 public:
  explicit InternalError(const std::string& message) : std::logic_error(message) {}
};

#define MCOV_CHECK(cond, msg)                                     \
  do {                                                            \
    if (!(cond)) throw ::mcov::InternalError(std::string(msg));   \
  } while (0)

/** Sorted set of site indices. */
using SiteSet = std::vector<uint32_t>;

/** FNV-1a over a sequence of 32-bit values. */
struct U32VecHash {
  size_t operator()(const std::vector<uint32_t>& v) const {
    uint64_t h = 1469598103934665603ull;
    for (uint32_t x : v) {
      for (int b = 0; b < 4; ++b) {
        h ^= (x >> (8 * b)) & 0xffu;
        h *= 1099511628211ull;
      }
    }
    return static_cast<size_t>(h);
  }
};

/** Sorted union of two sorted sets. */
SiteSet set_union(const SiteSet& a, const SiteSet& b);

/** Sorted difference a \ b of two sorted sets. */
SiteSet set_difference(const SiteSet& a, const SiteSet& b);

/** True when sorted set a contains sorted set b. */
bool set_contains(const SiteSet& a, const SiteSet& b);

/** Inserts one element into a sorted set (returns a copy). */
SiteSet set_with(const SiteSet& a, uint32_t x);

/** Removes one element from a sorted set (returns a copy). */
SiteSet set_without(const SiteSet& a, uint32_t x);

/**
 * Visits all size-k index subsets of {0,..,n-1} in lexicographic order.
 * The callback receives a pointer to k indices; returning false stops early.
 */
template <typename F>
void for_each_combination(uint32_t n, uint32_t k, F&& visit) {
  if (k > n) return;
  std::vector<uint32_t> c(k);
  for (uint32_t i = 0; i < k; ++i) c[i] = i;
  while (true) {
    if (!visit(c.data())) return;
    // Advance to the next combination.
    int i = static_cast<int>(k) - 1;
    while (i >= 0 && c[i] == n - k + i) --i;
    if (i < 0) return;
    ++c[i];
    for (uint32_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
  }
}

/** Exact binomial coefficient as unsigned 64-bit (throws GuardError on overflow). */
uint64_t binomial(uint64_t n, uint64_t k);

/**
 * Flattened prefix-coded key of a list of site sets:
 * [count, size_0, elems_0..., size_1, elems_1..., ...].
 * Lists differing in any set differ in key; used as canonical cell identity.
 */
std::vector<uint32_t> flatten_sets(const std::vector<SiteSet>& sets);

}  // namespace mcov
