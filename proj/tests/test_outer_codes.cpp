#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "kisslat/error.hpp"
#include "kisslat/outer_codes.hpp"
#include "support.hpp"

using namespace kisslat;
using namespace kisslat::outer;
using testing_support::clmul_mod;

namespace {

// Euclidean products of every pair of generator rows, rebuilt from the points
// and multipliers with the carry-less oracle.
bool oracle_self_orthogonal(const GrsCode& c) {
  const auto mod = c.field().modulus();
  auto power = [&](std::uint32_t a, int e) {
    std::uint32_t r = 1;
    for (int i = 0; i < e; ++i) r = clmul_mod(r, a, mod);
    return r;
  };
  for (int s = 0; s < c.K(); ++s)
    for (int t = 0; t < c.K(); ++t) {
      std::uint32_t acc = 0;
      for (int j = 0; j < c.N(); ++j) {
        const auto v = c.multipliers()[static_cast<std::size_t>(j)];
        const auto a = c.points()[static_cast<std::size_t>(j)];
        acc ^= clmul_mod(clmul_mod(v, v, mod), power(a, s + t), mod);
      }
      if (acc != 0) return false;
    }
  return true;
}

std::vector<Element> distinct_points(std::uint32_t q, int N, std::mt19937_64& rng) {
  std::vector<Element> all(q);
  std::iota(all.begin(), all.end(), Element{0});
  std::shuffle(all.begin(), all.end(), rng);
  all.resize(static_cast<std::size_t>(N));
  return all;
}

}  // namespace

TEST(Grs, RowsAreScaledPowers) {
  const auto f = ff::make_field(3);
  const GrsCode c(f, {1, 2, 3, 4}, {1, 5, 6, 7}, 3);
  for (int t = 0; t < 3; ++t)
    for (int j = 0; j < 4; ++j)
      EXPECT_EQ(c.row(t)[static_cast<std::size_t>(j)],
                f->mul(c.multipliers()[static_cast<std::size_t>(j)], f->pow(c.points()[static_cast<std::size_t>(j)], static_cast<std::uint64_t>(t))));
}

TEST(Grs, ValidationErrors) {
  const auto f = ff::make_field(2);
  EXPECT_THROW(GrsCode(f, {0, 1}, {1}, 1), DomainError);
  EXPECT_THROW(GrsCode(f, {0, 0}, {1, 1}, 1), DomainError);
  EXPECT_THROW(GrsCode(f, {0, 1}, {1, 0}, 1), DomainError);
  EXPECT_THROW(GrsCode(f, {0, 1}, {1, 1}, 3), DomainError);
  EXPECT_THROW(GrsCode(f, {0, 4}, {1, 1}, 1), DomainError);
}

TEST(Grs, IsMds) {
  std::mt19937_64 rng(17);
  for (int m : {2, 3, 4}) {
    const auto f = ff::make_field(m);
    for (int trial = 0; trial < 6; ++trial) {
      const int N = 2 + static_cast<int>(rng() % (f->q() - 1));
      const int K = 1 + static_cast<int>(rng() % std::min(N, 20 / m));
      std::vector<Element> mult;
      for (int j = 0; j < N; ++j) mult.push_back(static_cast<Element>(1 + rng() % (f->q() - 1)));
      const GrsCode c(f, distinct_points(f->q(), N, rng), mult, K);
      EXPECT_EQ(c.minimum_distance(), N - K + 1);
    }
  }
}

TEST(Grs, EncodeLinear) {
  const auto f = ff::make_field(3);
  const GrsCode c(f, {0, 1, 2, 3, 4}, {1, 1, 1, 1, 1}, 2);
  const std::vector<Element> a{3, 5}, b{6, 1}, s{5, 4};
  const auto ea = c.encode(a), eb = c.encode(b), es = c.encode(s);
  for (int j = 0; j < 5; ++j) EXPECT_EQ(es[static_cast<std::size_t>(j)], ea[static_cast<std::size_t>(j)] ^ eb[static_cast<std::size_t>(j)]);
  EXPECT_THROW(c.encode(std::vector<Element>{1}), DomainError);
}

TEST(Grs, WorkedExampleOverGF4) {
  const auto f = ff::make_field(2);
  const GrsCode c(f, {0, 1, 2}, {1, 2, 3}, 1);  // (1, w, w^2)
  EXPECT_TRUE(euclid_self_orthogonal(c));
  EXPECT_TRUE(oracle_self_orthogonal(c));
  const GrsCode rep(f, {0, 1, 2}, {1, 1, 1}, 1);
  EXPECT_FALSE(euclid_self_orthogonal(rep));
}

TEST(Grs, FoundMultipliersAreSelfOrthogonal) {
  std::mt19937_64 rng(23);
  int found = 0;
  for (int m : {2, 3, 4}) {
    const auto f = ff::make_field(m);
    for (int trial = 0; trial < 20; ++trial) {
      const int N = 2 + static_cast<int>(rng() % (f->q() - 1));
      const int K = 1 + static_cast<int>(rng() % std::max(1, N / 2));
      const auto pts = distinct_points(f->q(), N, rng);
      const auto v = find_self_orthogonal_multipliers(*f, pts, K);
      if (!v) continue;
      ++found;
      ASSERT_EQ(static_cast<int>(v->size()), N);
      for (auto x : *v) EXPECT_NE(x, 0);
      const GrsCode c(f, pts, *v, K);
      EXPECT_TRUE(euclid_self_orthogonal(c));
      EXPECT_TRUE(oracle_self_orthogonal(c));
    }
  }
  EXPECT_GT(found, 10);
}

TEST(Grs, NoMultipliersWhenSystemIsFullRank) {
  // N = 2K - 1 equations in N unknowns with a Vandermonde matrix: only u = 0.
  const auto f = ff::make_field(3);
  EXPECT_FALSE(find_self_orthogonal_multipliers(*f, std::vector<Element>{1, 2, 3}, 2).has_value());
}

TEST(Grs, FileRoundTrip) {
  const auto f = ff::make_field(2);
  const GrsCode c(f, {0, 1, 2}, {1, 2, 3}, 1);
  const auto text = format_grs(c);
  const auto d = parse_grs(text);
  EXPECT_EQ(d.N(), 3);
  EXPECT_EQ(d.K(), 1);
  EXPECT_TRUE(std::equal(d.multipliers().begin(), d.multipliers().end(), c.multipliers().begin()));
  EXPECT_THROW(parse_grs("grs q=4 N=3 K=1\n0 1 2\n"), ParseError);
  EXPECT_THROW(parse_grs("grs q=4 N=3 K=1\n0 1 2\n1 2\n"), ParseError);
  EXPECT_THROW(parse_grs("grs q=4 N=3 K=1\n0 1 9\n1 2 3\n"), ParseError);
}

TEST(Rates, Rho0Values) {
  EXPECT_NEAR(rho0(64).rho0, 0.357085052299942, 1e-12);
  EXPECT_NEAR(rho0(64).middle_term, 5.78048429146529e-5, 1e-15);
  EXPECT_NEAR(rho0(16).rho0, 0.165339127592899, 1e-12);
  EXPECT_NEAR(rho0(256).rho0, 0.433330592304177, 1e-12);
  EXPECT_NEAR(rho0(4).rho0, -0.536560156295072, 1e-12);
  EXPECT_FALSE(rho0(4).admissible);
  EXPECT_TRUE(rho0(64).admissible);
  EXPECT_EQ(rho0(64).r, 8u);
  EXPECT_THROW(rho0(32), DomainError);
  EXPECT_THROW(rho0(12), DomainError);
}

TEST(Rates, DimensionBound) {
  EXPECT_EQ(max_self_orthogonal_dimension(64, 378, 54), 134);
  EXPECT_EQ(max_self_orthogonal_dimension(16, 30, 10), 4);
  EXPECT_LT(max_self_orthogonal_dimension(4, 5, 5), 0);
  const auto t = rho0(64, 378);
  EXPECT_EQ(t.g, 54);
  EXPECT_EQ(t.kmax, 134);
  EXPECT_THROW(rho0(64, 100), DomainError);
}
