#include <bit>

#include "kisslat/kernels.hpp"

namespace kisslat::kernels::scalar {

void accumulate_weights(std::uint32_t base, std::span<const std::uint32_t> rows, WeightHistogram& hist) {
  std::uint32_t word = base;
  ++hist[std::popcount(word)];
  const std::uint64_t count = std::uint64_t{1} << rows.size();
  for (std::uint64_t i = 1; i < count; ++i) {
    word ^= rows[std::countr_zero(i)];
    ++hist[std::popcount(word)];
  }
}

std::size_t filter_in_code(std::span<const std::uint32_t> checks, std::span<const std::uint32_t> words,
                           std::span<std::uint8_t> keep) {
  std::size_t kept = 0;
  for (std::size_t i = 0; i < words.size(); ++i) {
    bool member = true;
    for (const std::uint32_t h : checks) {
      if (std::popcount(words[i] & h) & 1) {
        member = false;
        break;
      }
    }
    keep[i] = member ? 1 : 0;
    kept += member;
  }
  return kept;
}

}  // namespace kisslat::kernels::scalar
