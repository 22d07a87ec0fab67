// Compiled with -mavx2 on x86-64; only reached after a runtime CPU check.

#include <bit>

#include "kisslat/kernels.hpp"

#if defined(__AVX2__)
#include <immintrin.h>
#endif

namespace kisslat::kernels::avx2 {

#if defined(__AVX2__)

namespace {

// Per-lane popcount of eight 32-bit words via a nibble lookup.
inline __m256i popcount32(__m256i v) {
  const __m256i lut = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4, 0, 1, 1, 2, 1, 2, 2, 3, 1,
                                       2, 2, 3, 2, 3, 3, 4);
  const __m256i low_mask = _mm256_set1_epi8(0x0f);
  const __m256i lo = _mm256_and_si256(v, low_mask);
  const __m256i hi = _mm256_and_si256(_mm256_srli_epi32(v, 4), low_mask);
  const __m256i bytes = _mm256_add_epi8(_mm256_shuffle_epi8(lut, lo), _mm256_shuffle_epi8(lut, hi));
  const __m256i pairs = _mm256_maddubs_epi16(bytes, _mm256_set1_epi8(1));
  return _mm256_madd_epi16(pairs, _mm256_set1_epi16(1));
}

// Parity (0 or 1) of each 32-bit lane.
inline __m256i parity32(__m256i v) {
  v = _mm256_xor_si256(v, _mm256_srli_epi32(v, 16));
  v = _mm256_xor_si256(v, _mm256_srli_epi32(v, 8));
  v = _mm256_xor_si256(v, _mm256_srli_epi32(v, 4));
  v = _mm256_xor_si256(v, _mm256_srli_epi32(v, 2));
  v = _mm256_xor_si256(v, _mm256_srli_epi32(v, 1));
  return _mm256_and_si256(v, _mm256_set1_epi32(1));
}

}  // namespace

bool compiled() { return true; }

void accumulate_weights(std::uint32_t base, std::span<const std::uint32_t> rows, WeightHistogram& hist) {
  if (rows.size() < 3) {
    scalar::accumulate_weights(base, rows, hist);
    return;
  }
  // Lane j holds base ^ (combination j of the three lowest rows).
  alignas(32) std::uint32_t init[8];
  for (std::uint32_t j = 0; j < 8; ++j) {
    std::uint32_t w = base;
    for (int b = 0; b < 3; ++b) {
      if ((j >> b) & 1u) w ^= rows[b];
    }
    init[j] = w;
  }
  __m256i words = _mm256_load_si256(reinterpret_cast<const __m256i*>(init));
  const auto upper = rows.subspan(3);
  const std::uint64_t steps = std::uint64_t{1} << upper.size();

  alignas(32) std::uint32_t weights[8];
  for (std::uint64_t i = 0;;) {
    _mm256_store_si256(reinterpret_cast<__m256i*>(weights), popcount32(words));
    for (const std::uint32_t w : weights) ++hist[w];
    if (++i == steps) break;
    const __m256i flip = _mm256_set1_epi32(static_cast<int>(upper[std::countr_zero(i)]));
    words = _mm256_xor_si256(words, flip);
  }
}

std::size_t filter_in_code(std::span<const std::uint32_t> checks, std::span<const std::uint32_t> words,
                           std::span<std::uint8_t> keep) {
  const std::size_t full = words.size() / 8 * 8;
  std::size_t kept = 0;
  const __m256i zero = _mm256_setzero_si256();
  for (std::size_t i = 0; i < full; i += 8) {
    const __m256i w = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(words.data() + i));
    __m256i odd = zero;
    for (const std::uint32_t h : checks) {
      odd = _mm256_or_si256(odd, parity32(_mm256_and_si256(w, _mm256_set1_epi32(static_cast<int>(h)))));
    }
    const int mask = _mm256_movemask_ps(_mm256_castsi256_ps(_mm256_cmpeq_epi32(odd, zero)));
    for (int j = 0; j < 8; ++j) keep[i + j] = static_cast<std::uint8_t>((mask >> j) & 1);
    kept += static_cast<std::size_t>(std::popcount(static_cast<unsigned>(mask)));
  }
  return kept + scalar::filter_in_code(checks, words.subspan(full), keep.subspan(full));
}

#else

bool compiled() { return false; }

void accumulate_weights(std::uint32_t base, std::span<const std::uint32_t> rows, WeightHistogram& hist) {
  scalar::accumulate_weights(base, rows, hist);
}

std::size_t filter_in_code(std::span<const std::uint32_t> checks, std::span<const std::uint32_t> words,
                           std::span<std::uint8_t> keep) {
  return scalar::filter_in_code(checks, words, keep);
}

#endif

}  // namespace kisslat::kernels::avx2
