#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace kisslat {

// A binary word of length n <= 32; bit j is coordinate j.
using Word = std::uint32_t;

inline constexpr int kMaxCodeLength = 32;
inline constexpr int kMaxCodeDimension = 28;

inline constexpr Word length_mask(int n) { return n >= 32 ? ~Word{0} : (Word{1} << n) - 1; }

/// Binary linear [n, k] code given by a full-rank k x n generator matrix.
///
/// The constructor rejects rank-deficient generators and derives a parity
/// check matrix, so membership is a handful of parity tests.
class BinaryCode {
 public:
  BinaryCode(int n, std::vector<Word> generator);

  int n() const { return n_; }
  int k() const { return static_cast<int>(generator_.size()); }
  std::span<const Word> generator() const { return generator_; }
  // Basis of the dual code, n - k rows.
  std::span<const Word> parity_checks() const { return checks_; }

  bool contains(Word w) const;
  // sum of message bit i times generator row i
  Word encode(std::uint64_t message) const;
  // All 2^k codewords in message order; GuardError above k = 20.
  std::vector<Word> codewords() const;

  friend bool operator==(const BinaryCode&, const BinaryCode&) = default;

 private:
  int n_;
  std::vector<Word> generator_;
  std::vector<Word> checks_;
};

// Rank over GF(2).
int gf2_rank(std::span<const Word> rows);
// Basis of the dual of the row space of `rows` inside GF(2)^n.
std::vector<Word> dual_basis(std::span<const Word> rows, int n);
// Index of the first row that is a combination of its predecessors.
std::optional<std::size_t> first_dependent_row(std::span<const Word> rows);

// `binary-code n=<n> k=<k>` then k rows of n characters in {0,1}.
BinaryCode parse_code(std::string_view text);
std::string format_code(const BinaryCode& code);
std::string word_to_string(Word w, int n);

bool is_self_orthogonal(const BinaryCode& code);

struct WeightDistribution {
  std::map<int, std::uint64_t> counts;  // weight -> number of codewords, zero counts omitted
  std::optional<int> d;                 // minimum nonzero weight (none for k = 0)
  std::uint64_t A_d = 0;

  friend bool operator==(const WeightDistribution&, const WeightDistribution&) = default;
};

// Full Gray-code enumeration of the 2^k codewords, split over `workers`
// threads by message prefix. Counts do not depend on the worker count.
WeightDistribution weight_distribution(const BinaryCode& code, int workers = 1);

}  // namespace kisslat
