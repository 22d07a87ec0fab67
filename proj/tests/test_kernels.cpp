#include <gtest/gtest.h>

#include <bit>
#include <random>

#include "kisslat/error.hpp"
#include "kisslat/kernels.hpp"

using namespace kisslat::kernels;

namespace {

bool have_avx2() { return isa_supported(Isa::avx2); }

// Histogram of popcount(base ^ span(rows)) over every combination of rows.
WeightHistogram direct_histogram(std::uint32_t base, const std::vector<std::uint32_t>& rows) {
  WeightHistogram h{};
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << rows.size()); ++m) {
    std::uint32_t w = base;
    for (std::size_t i = 0; i < rows.size(); ++i)
      if ((m >> i) & 1) w ^= rows[i];
    ++h[static_cast<std::size_t>(std::popcount(w))];
  }
  return h;
}

}  // namespace

TEST(Kernels, ScalarWeightsMatchDirect) {
  std::mt19937_64 rng(7);
  for (int k = 0; k <= 10; ++k) {
    std::vector<std::uint32_t> rows;
    for (int i = 0; i < k; ++i) rows.push_back(static_cast<std::uint32_t>(rng()));
    const auto base = static_cast<std::uint32_t>(rng());
    WeightHistogram h{};
    scalar::accumulate_weights(base, rows, h);
    EXPECT_EQ(h, direct_histogram(base, rows)) << k;
  }
}

TEST(Kernels, Avx2WeightsMatchScalar) {
  if (!have_avx2()) GTEST_SKIP() << "no AVX2 on this host";
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int k = static_cast<int>(rng() % 15);
    std::vector<std::uint32_t> rows;
    for (int i = 0; i < k; ++i) rows.push_back(static_cast<std::uint32_t>(rng()));
    const auto base = static_cast<std::uint32_t>(rng());
    WeightHistogram a{}, b{};
    scalar::accumulate_weights(base, rows, a);
    avx2::accumulate_weights(base, rows, b);
    ASSERT_EQ(a, b) << "k=" << k;
  }
}

TEST(Kernels, WeightsAccumulate) {
  const std::vector<std::uint32_t> rows{0b11, 0b1100};
  WeightHistogram h{};
  accumulate_weights(0, rows, h);
  accumulate_weights(0, rows, h);
  EXPECT_EQ(h[0], 2u);
  EXPECT_EQ(h[2], 4u);
  EXPECT_EQ(h[4], 2u);
}

TEST(Kernels, FilterMatchesDirect) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const auto nchecks = rng() % 6;
    std::vector<std::uint32_t> checks;
    for (std::size_t i = 0; i < nchecks; ++i) checks.push_back(static_cast<std::uint32_t>(rng()) & 0xff);
    std::vector<std::uint32_t> words;
    const std::size_t nwords = rng() % 70;
    for (std::size_t i = 0; i < nwords; ++i) words.push_back(static_cast<std::uint32_t>(rng()) & 0xff);
    std::vector<std::uint8_t> keep_s(words.size()), keep_v(words.size());
    const auto cs = scalar::filter_in_code(checks, words, keep_s);
    std::size_t expect = 0;
    for (std::size_t i = 0; i < words.size(); ++i) {
      bool ok = true;
      for (auto c : checks) ok = ok && (std::popcount(c & words[i]) % 2 == 0);
      EXPECT_EQ(keep_s[i] != 0, ok);
      expect += ok;
    }
    EXPECT_EQ(cs, expect);
    if (have_avx2()) {
      const auto cv = avx2::filter_in_code(checks, words, keep_v);
      EXPECT_EQ(cv, cs);
      EXPECT_EQ(keep_v, keep_s);
    }
  }
}

TEST(Kernels, FilterSizeMismatchThrows) {
  std::vector<std::uint32_t> checks{1}, words{1, 2};
  std::vector<std::uint8_t> keep(1);
  EXPECT_THROW(filter_in_code(checks, words, keep, Isa::scalar), kisslat::Error);
}

TEST(Kernels, DispatchPinning) {
  set_isa(Isa::scalar);
  EXPECT_EQ(active_isa(), Isa::scalar);
  set_isa(std::nullopt);
  if (have_avx2()) {
    set_isa(Isa::avx2);
    EXPECT_EQ(active_isa(), Isa::avx2);
    set_isa(std::nullopt);
  }
  EXPECT_EQ(isa_name(Isa::scalar), "scalar");
  EXPECT_EQ(isa_name(Isa::avx2), "avx2");
}
