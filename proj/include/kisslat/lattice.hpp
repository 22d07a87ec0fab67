#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kisslat/binary_code.hpp"

namespace kisslat::lattice {

using IntVector = std::vector<std::int64_t>;

/// Full-rank integer lattice between 2^n Z^n and Z^n, held as the rows of
/// its upper-triangular Hermite normal form: positive power-of-two diagonal
/// and 0 <= b_ij < b_jj above it.
class LatticeBasis {
 public:
  // Validates the Hermite shape and that 2^n e_i lies in the span.
  LatticeBasis(int n, std::vector<std::int64_t> rows, std::string source = {});

  int n() const { return n_; }
  std::span<const std::int64_t> row(int i) const;
  std::int64_t at(int i, int j) const { return rows_[static_cast<std::size_t>(i * n_ + j)]; }
  std::span<const std::int64_t> entries() const { return rows_; }
  const std::string& source() const { return source_; }

  // det = 2^determinant_log2(); as an exact decimal string.
  int determinant_log2() const;
  std::string determinant() const;
  // Parity checks of the binary code {x mod 2 : x in the lattice}.
  std::span<const Word> residue_checks() const { return residue_checks_; }

  friend bool operator==(const LatticeBasis& a, const LatticeBasis& b) {
    return a.n_ == b.n_ && a.rows_ == b.rows_;
  }

 private:
  int n_;
  std::vector<std::int64_t> rows_;
  std::string source_;
  std::vector<Word> residue_checks_;
};

// Integer vector with coordinates in {0,1}.
IntVector lift(Word w, int n);
// Componentwise x mod 2 packed as a word.
Word residue(std::span<const std::int64_t> x);

// Hermite basis of the span of {lift(c) : c in C} and 2^n Z^n, computed with
// arbitrary-precision integers. k <= 20.
LatticeBasis build_span_basis(const BinaryCode& code);

// Digit peeling for the level-sum set 2^n Z^n + sum_i 2^(n-i) C: after
// reducing mod 2^n, n times take w = x mod 2, require w in C, x <- (x - lift(w))/2.
bool membership_set(const BinaryCode& code, std::span<const std::int64_t> x);

// Exact membership in the row span. Works modulo 2^n, which the span contains.
bool membership_span(const LatticeBasis& basis, std::span<const std::int64_t> x);

struct EnumerationOptions {
  int workers = 1;
  bool force = false;         // lift the n <= 24, cap <= 16 guard
  bool reverse_order = false; // traverse candidates in the opposite order
};

struct ShortVectorReport {
  int cap = 0;
  std::optional<int> min_norm;
  std::uint64_t kissing = 0;
  std::map<int, std::uint64_t> per_norm;  // nonzero counts only, norms in [1, cap]
  std::uint64_t patterns = 0;             // unsigned magnitude patterns generated
  std::uint64_t patterns_kept = 0;        // after the residue filter

  friend bool operator==(const ShortVectorReport& a, const ShortVectorReport& b) {
    return a.cap == b.cap && a.min_norm == b.min_norm && a.kissing == b.kissing && a.per_norm == b.per_norm;
  }
};

inline constexpr int kDefaultMaxDimension = 24;
inline constexpr int kDefaultMaxCap = 16;

// Exact count of lattice vectors of each squared norm in [1, cap]. Candidate
// magnitude patterns (entries 0..4, squares summing to at most cap) are
// filtered by the residue code before signed membership tests.
ShortVectorReport enumerate_short(const LatticeBasis& basis, int cap, const EnumerationOptions& options = {});

struct ClosureCounterexample {
  IntVector x, y, sum;
};

struct ClosureReport {
  std::uint64_t trials = 0;
  std::uint64_t passed = 0;
  std::uint64_t failed = 0;
  std::vector<ClosureCounterexample> counterexamples;  // at most 10
};

inline constexpr std::size_t kMaxCounterexamples = 10;

// A random member of the level-sum set: sum_j 2^j lift(c_j) + 2^n z with
// uniform codewords c_j and z in {-1, 0, 1}^n.
IntVector random_set_member(const BinaryCode& code, std::mt19937_64& rng);

// Sums of sampled member pairs tested with membership_set.
ClosureReport closure_probe(const BinaryCode& code, std::uint64_t trials, std::uint64_t seed);

// Sampled set members that membership_span rejects (should be none).
std::uint64_t span_misses_set(const BinaryCode& code, const LatticeBasis& basis, std::uint64_t trials,
                              std::uint64_t seed);

struct VerifyOptions {
  std::uint64_t trials = 1000;
  std::uint64_t seed = 1;
  std::optional<int> cap;  // default max(d, 8)
  EnumerationOptions enumeration;
};

struct LatticeVerdict {
  int d = 0;
  std::uint64_t A_d = 0;
  ShortVectorReport shortest;
  ClosureReport closure;
  std::uint64_t span_misses = 0;
  bool set_closed_sampled = false;
  bool norm_equals_d = false;
  bool kissing_ge_Ad = false;  // only meaningful, and only true, when norm_equals_d
  bool span_contains_set_sampled = false;
};

// DomainError unless the code is self-orthogonal with k >= 1.
LatticeVerdict verify_lattice_claims(const BinaryCode& code, const VerifyOptions& options = {});

// `lattice n=<n>` then n rows of n signed decimal integers.
LatticeBasis parse_lattice(std::string_view text);
std::string format_lattice(const LatticeBasis& basis);

}  // namespace kisslat::lattice
