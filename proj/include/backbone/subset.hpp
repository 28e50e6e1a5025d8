#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace backbone {

/// A subset of the ground set {0, ..., ground_size-1} stored as a bitmask.
/// Used both for failed-element sets and for keep-sets during
/// marginalization. Ground sets are capped at 63 elements.
struct SubsetMask {
  std::uint64_t bits = 0;
  int ground_size = 0;

  SubsetMask() = default;
  SubsetMask(std::uint64_t b, int k) : bits(b), ground_size(k) {}

  static SubsetMask empty_set(int k) { return {0, k}; }
  static SubsetMask full_set(int k) {
    return {k == 0 ? 0 : (~std::uint64_t{0} >> (64 - k)), k};
  }
  static SubsetMask of(std::initializer_list<int> idx, int k) {
    SubsetMask m{0, k};
    for (int i : idx) {
      if (i < 0 || i >= k) throw std::out_of_range("index outside ground set");
      m.bits |= std::uint64_t{1} << i;
    }
    return m;
  }

  int count() const { return std::popcount(bits); }
  bool contains(int i) const { return (bits >> i) & 1; }
  bool empty() const { return bits == 0; }

  SubsetMask complement() const {
    return {full_set(ground_size).bits & ~bits, ground_size};
  }

  std::vector<int> indices() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(count()));
    for (int i = 0; i < ground_size; ++i)
      if (contains(i)) out.push_back(i);
    return out;
  }

  bool operator==(const SubsetMask&) const = default;
};

/// Exact binomial coefficient; n <= 63 so the result fits in 64 bits.
std::uint64_t binomial(int n, int r);

/// First bitmask with popcount alpha (the lowest alpha bits).
std::uint64_t first_subset_of_size(int alpha);

/// Advances mask to the next bitmask of the same popcount in increasing
/// numeric order (Gosper's hack). Returns false when the sweep over
/// k-bit masks is exhausted.
bool next_subset_of_size(std::uint64_t& mask, int k);

/// The rank-th (0-based) popcount-alpha mask in increasing numeric order.
/// Inverse of the Gosper sweep; used to jump into the middle of a sweep
/// when enumeration is chunked across workers.
std::uint64_t unrank_subset(int k, int alpha, std::uint64_t rank);

}  // namespace backbone
