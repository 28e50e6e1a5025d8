#include "backbone/subset.hpp"

namespace backbone {

std::uint64_t binomial(int n, int r) {
  if (r < 0 || r > n) return 0;
  if (r > n - r) r = n - r;
  std::uint64_t c = 1;
  for (int i = 1; i <= r; ++i) {
    c = c * static_cast<std::uint64_t>(n - r + i) / static_cast<std::uint64_t>(i);
  }
  return c;
}

std::uint64_t first_subset_of_size(int alpha) {
  return alpha == 0 ? 0 : (~std::uint64_t{0} >> (64 - alpha));
}

bool next_subset_of_size(std::uint64_t& mask, int k) {
  if (mask == 0) return false;
  const std::uint64_t c = mask & (~mask + 1);
  const std::uint64_t r = mask + c;
  mask = (((r ^ mask) >> 2) / c) | r;
  return mask < (std::uint64_t{1} << k);
}

std::uint64_t unrank_subset(int k, int alpha, std::uint64_t rank) {
  // Numeric (colex) order: pick the highest set bit first.
  std::uint64_t mask = 0;
  int remaining = alpha;
  for (int c = k - 1; c >= 0 && remaining > 0; --c) {
    const std::uint64_t below = binomial(c, remaining);
    if (rank >= below) {
      mask |= std::uint64_t{1} << c;
      rank -= below;
      --remaining;
    }
  }
  if (remaining != 0) throw std::out_of_range("subset rank out of range");
  return mask;
}

}  // namespace backbone
