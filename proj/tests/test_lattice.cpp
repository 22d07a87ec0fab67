#include <gtest/gtest.h>

#include <bit>
#include <random>
#include <unordered_set>

#include "kisslat/binary_code.hpp"
#include "kisslat/error.hpp"
#include "kisslat/kernels.hpp"
#include "kisslat/lattice.hpp"
#include "support.hpp"

using namespace kisslat;
using namespace kisslat::lattice;
using testing_support::box_counts;
using testing_support::corpus;
using testing_support::rational_member;

namespace {

int default_cap(const BinaryCode& c) {
  const auto wd = weight_distribution(c);
  return std::max(wd.d.value_or(0), 8);
}

IntVector random_span_member(const LatticeBasis& b, std::mt19937_64& rng) {
  IntVector x(static_cast<std::size_t>(b.n()), 0);
  for (int i = 0; i < b.n(); ++i) {
    const auto c = static_cast<std::int64_t>(rng() % 7) - 3;
    for (int j = 0; j < b.n(); ++j) x[static_cast<std::size_t>(j)] += c * b.at(i, j);
  }
  return x;
}

}  // namespace

TEST(Basis, KnownHermiteForms) {
  const auto rep = build_span_basis(testing_support::rep21());
  EXPECT_EQ(std::vector<std::int64_t>(rep.entries().begin(), rep.entries().end()),
            (std::vector<std::int64_t>{1, 1, 0, 4}));
  EXPECT_EQ(rep.determinant(), "4");
  const auto e8 = build_span_basis(testing_support::e8());
  EXPECT_EQ(e8.determinant(), "32");
}

TEST(Basis, MatchesIndependentDeterminantAndContainsGenerators) {
  for (const auto& entry : corpus()) {
    const auto b = build_span_basis(entry.code);
    EXPECT_EQ(b.determinant_log2(), entry.det_log2) << entry.name;
    for (auto w : entry.code.codewords()) EXPECT_TRUE(rational_member(b, lift(w, entry.code.n()))) << entry.name;
    for (int i = 0; i < entry.code.n(); ++i) {
      IntVector e(static_cast<std::size_t>(entry.code.n()), 0);
      e[static_cast<std::size_t>(i)] = std::int64_t{1} << entry.code.n();
      EXPECT_TRUE(rational_member(b, e));
    }
  }
}

TEST(Basis, ValidationRejectsBadShapes) {
  EXPECT_THROW(LatticeBasis(2, {1, 1, 0, 3}), DomainError);   // diagonal not a power of two
  EXPECT_THROW(LatticeBasis(2, {1, 0, 1, 4}), DomainError);   // lower triangle
  EXPECT_THROW(LatticeBasis(2, {2, 5, 0, 4}), DomainError);   // unreduced
  EXPECT_THROW(LatticeBasis(2, {8, 0, 0, 1}), DomainError);   // 8 > 2^n
  EXPECT_THROW(LatticeBasis(2, {1, 0, 0}), DomainError);
  EXPECT_NO_THROW(LatticeBasis(2, {4, 0, 0, 4}));
}

TEST(Basis, FileRoundTrip) {
  const auto b = build_span_basis(testing_support::e8());
  EXPECT_EQ(parse_lattice(format_lattice(b)), b);
  EXPECT_THROW(parse_lattice("lattice n=2\n1 1\n"), ParseError);
  EXPECT_THROW(parse_lattice("lattice n=2\n1 1\n0 3\n"), ParseError);
}

TEST(Membership, SpanAgreesWithRationalOracle) {
  std::mt19937_64 rng(41);
  for (const auto& entry : corpus()) {
    const auto b = build_span_basis(entry.code);
    for (int t = 0; t < 2000; ++t) {
      IntVector x(static_cast<std::size_t>(entry.code.n()));
      for (auto& v : x) v = static_cast<std::int64_t>(rng() % 9) - 4;
      ASSERT_EQ(membership_span(b, x), rational_member(b, x)) << entry.name;
    }
    for (int t = 0; t < 200; ++t) {
      const auto x = random_span_member(b, rng);
      ASSERT_TRUE(membership_span(b, x));
      ASSERT_TRUE(rational_member(b, x));
    }
  }
}

TEST(Membership, SetAgreesWithLevelSumOracle) {
  std::mt19937_64 rng(43);
  for (const auto& code : testing_support::small_codes()) {
    if ((std::uint64_t{1} << (code.k() * code.n())) > (1u << 18)) continue;
    const auto residues = testing_support::level_sum_residues(code);
    const std::int64_t span = std::int64_t{1} << (code.n() + 1);
    for (int t = 0; t < 3000; ++t) {
      IntVector x(static_cast<std::size_t>(code.n()));
      for (auto& v : x) v = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(2 * span)) - span;
      const bool expect = residues.count(testing_support::reduce_mod_pow2(x, code.n())) > 0;
      ASSERT_EQ(membership_set(code, x), expect);
    }
    for (const auto& r : residues) ASSERT_TRUE(membership_set(code, r));
  }
}

TEST(Membership, RandomSetMembersAreMembers) {
  std::mt19937_64 rng(5);
  for (const auto& entry : corpus()) {
    const auto b = build_span_basis(entry.code);
    for (int t = 0; t < 300; ++t) {
      const auto x = random_set_member(entry.code, rng);
      ASSERT_TRUE(membership_set(entry.code, x));
      ASSERT_TRUE(rational_member(b, x)) << entry.name;
    }
    EXPECT_EQ(span_misses_set(entry.code, b, 500, 9), 0u);
  }
}

TEST(Enumeration, MatchesBoxOracleForSmallCodes) {
  for (const auto& code : testing_support::small_codes()) {
    const auto b = build_span_basis(code);
    for (int cap : {4, 8, 12}) {
      const auto report = enumerate_short(b, cap);
      EXPECT_EQ(report.per_norm, box_counts(b, cap)) << format_code(code) << " cap " << cap;
    }
  }
}

TEST(Enumeration, IsaAgnostic) {
  const auto b = build_span_basis(testing_support::e8());
  kernels::set_isa(kernels::Isa::scalar);
  const auto s = enumerate_short(b, 8);
  kernels::set_isa(std::nullopt);
  const auto v = enumerate_short(b, 8);
  EXPECT_EQ(s, v);
  EXPECT_EQ(s.patterns_kept, v.patterns_kept);
}

TEST(Enumeration, RepCode) {
  const auto r = enumerate_short(build_span_basis(testing_support::rep21()), 8);
  EXPECT_EQ(r.min_norm, 2);
  EXPECT_EQ(r.kissing, 2u);
}

TEST(Enumeration, Guards) {
  const auto b = build_span_basis(testing_support::rep21());
  EXPECT_THROW(enumerate_short(b, 17), GuardError);
  EXPECT_NO_THROW(enumerate_short(b, 17, EnumerationOptions{1, true, false}));
  EXPECT_THROW(enumerate_short(b, 0), DomainError);
  const auto wide = build_span_basis(BinaryCode(25, {}));
  EXPECT_THROW(enumerate_short(wide, 4), GuardError);
}

TEST(Invariants, CorpusSuite) {
  std::mt19937_64 rng(77);
  for (const auto& entry : corpus()) {
    const auto& code = entry.code;
    const auto b = build_span_basis(code);
    // determinant is a power of two
    const std::string det = b.determinant();
    mpz_class d(det);
    EXPECT_EQ(mpz_popcount(d.get_mpz_t()), 1u) << entry.name;
    // residue invariant
    for (int i = 0; i < b.n(); ++i) EXPECT_TRUE(code.contains(residue(b.row(i)))) << entry.name;
    // group closure of the span
    for (int t = 0; t < 1000; ++t) {
      const auto x = random_span_member(b, rng);
      const auto y = random_set_member(code, rng);
      IntVector s(x.size()), diff(x.size());
      for (std::size_t j = 0; j < x.size(); ++j) {
        s[j] = x[j] + y[j];
        diff[j] = x[j] - y[j];
      }
      ASSERT_TRUE(membership_span(b, s));
      ASSERT_TRUE(membership_span(b, diff));
    }
    // kissing parity and determinism
    const int cap = default_cap(code);
    const auto base = enumerate_short(b, cap);
    EXPECT_EQ(base.kissing % 2, 0u) << entry.name;
    for (const auto& [norm, count] : base.per_norm) EXPECT_EQ(count % 2, 0u);
    for (int workers : {1, 2, 4})
      for (bool reverse : {false, true}) {
        const auto again = enumerate_short(b, cap, EnumerationOptions{workers, false, reverse});
        EXPECT_EQ(again, base) << entry.name << " workers " << workers;
      }
  }
}

TEST(Closure, RepCodeIsClosed) {
  const auto r = closure_probe(testing_support::rep21(), 1000, 1);
  EXPECT_EQ(r.passed, 1000u);
  EXPECT_EQ(r.failed, 0u);
  EXPECT_TRUE(r.counterexamples.empty());
}

TEST(Closure, E8CounterexamplesAreGenuine) {
  const auto code = testing_support::e8();
  const auto r = closure_probe(code, 1000, 1);
  EXPECT_GT(r.failed, 0u);
  EXPECT_EQ(r.passed + r.failed, 1000u);
  ASSERT_FALSE(r.counterexamples.empty());
  EXPECT_LE(r.counterexamples.size(), kMaxCounterexamples);
  for (const auto& ce : r.counterexamples) {
    for (std::size_t j = 0; j < ce.x.size(); ++j) EXPECT_EQ(ce.sum[j], ce.x[j] + ce.y[j]);
    EXPECT_TRUE(membership_set(code, ce.x));
    EXPECT_TRUE(membership_set(code, ce.y));
    EXPECT_FALSE(membership_set(code, ce.sum));
  }
  // same seed, same report
  const auto again = closure_probe(code, 1000, 1);
  EXPECT_EQ(again.failed, r.failed);
  EXPECT_EQ(again.counterexamples.front().x, r.counterexamples.front().x);
}

TEST(Closure, SmallCodeVerdictMatchesLevelSumOracle) {
  // The level-sum set is closed exactly when its residue set is.
  int closed_codes = 0, open_codes = 0;
  for (const auto& code : testing_support::small_codes()) {
    if (code.k() == 0 || code.k() * code.n() > 12) continue;
    const int n = code.n();
    auto pack = [n](const IntVector& v) {
      std::uint64_t key = 0;
      for (int j = 0; j < n; ++j) key |= static_cast<std::uint64_t>(v[static_cast<std::size_t>(j)] & ((1 << n) - 1)) << (8 * j);
      return key;
    };
    std::vector<IntVector> residues;
    std::unordered_set<std::uint64_t> keys;
    for (const auto& r : testing_support::level_sum_residues(code)) {
      residues.push_back(r);
      keys.insert(pack(r));
    }
    bool closed = true;
    IntVector s(static_cast<std::size_t>(n));
    for (std::size_t a = 0; a < residues.size() && closed; ++a)
      for (std::size_t b = a; b < residues.size() && closed; ++b) {
        for (int j = 0; j < n; ++j) s[static_cast<std::size_t>(j)] = residues[a][static_cast<std::size_t>(j)] + residues[b][static_cast<std::size_t>(j)];
        closed = keys.count(pack(s)) > 0;
      }
    const auto probe = closure_probe(code, 2000, 3);
    if (closed) {
      ++closed_codes;
      EXPECT_EQ(probe.failed, 0u) << format_code(code);
    } else {
      ++open_codes;
    }
  }
  EXPECT_GT(closed_codes, 0);
  EXPECT_GT(open_codes, 0);
}

TEST(Verify, RepAndE8) {
  const auto rep = verify_lattice_claims(testing_support::rep21());
  EXPECT_TRUE(rep.set_closed_sampled);
  EXPECT_TRUE(rep.norm_equals_d);
  EXPECT_TRUE(rep.kissing_ge_Ad);
  EXPECT_TRUE(rep.span_contains_set_sampled);
  const auto e8 = verify_lattice_claims(testing_support::e8());
  EXPECT_EQ(e8.d, 4);
  EXPECT_EQ(e8.A_d, 14u);
  EXPECT_EQ(e8.shortest.min_norm, 4);
  EXPECT_FALSE(e8.set_closed_sampled);
  EXPECT_TRUE(e8.kissing_ge_Ad);
  EXPECT_THROW(verify_lattice_claims(testing_support::code_from_rows(3, {"111"})), DomainError);
  EXPECT_THROW(verify_lattice_claims(BinaryCode(3, {})), DomainError);
}
