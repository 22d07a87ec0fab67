#pragma once

// Test corpus and brute-force oracles. Nothing here calls into the library
// code paths it is used to check.

#include <gmpxx.h>

#include <bit>
#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "kisslat/binary_code.hpp"
#include "kisslat/lattice.hpp"

namespace testing_support {

using kisslat::BinaryCode;
using kisslat::Word;

inline BinaryCode code_from_rows(int n, const std::vector<std::string>& rows) {
  std::vector<Word> g;
  for (const auto& r : rows) {
    Word w = 0;
    for (int j = 0; j < n; ++j)
      if (r[static_cast<std::size_t>(j)] == '1') w |= Word{1} << j;
    g.push_back(w);
  }
  return BinaryCode(n, g);
}

struct CorpusEntry {
  std::string name;
  BinaryCode code;
  // log2 of the lattice determinant, from an independent HNF computation.
  int det_log2;
};

inline BinaryCode rep21() { return code_from_rows(2, {"11"}); }
inline BinaryCode e8() { return code_from_rows(8, {"11111111", "11110000", "11001100", "10101010"}); }
inline BinaryCode expansion62() { return code_from_rows(6, {"111001", "100111"}); }
inline BinaryCode concat182() {
  return code_from_rows(18, {"111111111000000111", "111000000111111111"});
}

inline std::vector<CorpusEntry> corpus() {
  return {
      {"rep21", rep21(), 2},
      {"e8", e8(), 5},
      {"expansion62", expansion62(), 19},
      {"concat182", concat182(), 18 * 15 + 1},
      {"zero2", BinaryCode(2, {}), 4},
      {"zero4", BinaryCode(4, {}), 16},
  };
}

// Every code of length at most 6 used for the enumeration oracle.
inline std::vector<BinaryCode> small_codes() {
  return {
      rep21(),
      BinaryCode(2, {}),
      BinaryCode(3, {}),
      code_from_rows(3, {"111"}),
      code_from_rows(4, {"1111"}),
      code_from_rows(4, {"1100", "0011"}),
      code_from_rows(4, {"1100", "0110"}),
      code_from_rows(4, {"1100", "0110", "0011"}),
      code_from_rows(5, {"11000", "00111"}),
      expansion62(),
      code_from_rows(6, {"110000", "001100", "000011"}),
      code_from_rows(6, {"111100", "001111"}),
      code_from_rows(6, {"100000", "010000"}),
  };
}

// Exact membership by rational forward substitution: solve c B = x for the
// upper-triangular basis and require every c_j to be an integer.
inline bool rational_member(const kisslat::lattice::LatticeBasis& b, std::span<const std::int64_t> x) {
  const int n = b.n();
  std::vector<mpq_class> c(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    mpq_class acc(static_cast<long>(x[static_cast<std::size_t>(j)]));
    for (int i = 0; i < j; ++i) acc -= c[static_cast<std::size_t>(i)] * mpq_class(static_cast<long>(b.at(i, j)));
    acc /= mpq_class(static_cast<long>(b.at(j, j)));
    acc.canonicalize();
    if (acc.get_den() != 1) return false;
    c[static_cast<std::size_t>(j)] = acc;
  }
  return true;
}

// Norm histogram of all lattice vectors in the box [-r, r]^n, r = floor(sqrt(cap)).
inline std::map<int, std::uint64_t> box_counts(const kisslat::lattice::LatticeBasis& b, int cap) {
  const int n = b.n();
  int r = 0;
  while ((r + 1) * (r + 1) <= cap) ++r;
  std::map<int, std::uint64_t> out;
  std::vector<std::int64_t> x(static_cast<std::size_t>(n), -r);
  for (;;) {
    std::int64_t norm = 0;
    for (auto v : x) norm += v * v;
    if (norm > 0 && norm <= cap && rational_member(b, x)) ++out[static_cast<int>(norm)];
    int i = 0;
    while (i < n && x[static_cast<std::size_t>(i)] == r) x[static_cast<std::size_t>(i++)] = -r;
    if (i == n) break;
    ++x[static_cast<std::size_t>(i)];
  }
  return out;
}

// Residues mod 2^n of sum_j 2^j lift(c_j) over every choice of codewords.
inline std::set<std::vector<std::int64_t>> level_sum_residues(const BinaryCode& code) {
  const int n = code.n();
  std::vector<Word> words;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << code.k()); ++m) {
    Word w = 0;
    for (int i = 0; i < code.k(); ++i)
      if ((m >> i) & 1) w ^= code.generator()[static_cast<std::size_t>(i)];
    words.push_back(w);
  }
  std::set<std::vector<std::int64_t>> out;
  std::vector<std::size_t> pick(static_cast<std::size_t>(n), 0);
  for (;;) {
    std::vector<std::int64_t> v(static_cast<std::size_t>(n), 0);
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i)
        if ((words[pick[static_cast<std::size_t>(j)]] >> i) & 1) v[static_cast<std::size_t>(i)] += std::int64_t{1} << j;
    out.insert(v);
    int j = 0;
    while (j < n && pick[static_cast<std::size_t>(j)] + 1 == words.size()) pick[static_cast<std::size_t>(j++)] = 0;
    if (j == n) break;
    ++pick[static_cast<std::size_t>(j)];
  }
  return out;
}

inline std::vector<std::int64_t> reduce_mod_pow2(std::span<const std::int64_t> x, int n) {
  const std::int64_t mod = std::int64_t{1} << n;
  std::vector<std::int64_t> r;
  for (auto v : x) r.push_back(((v % mod) + mod) % mod);
  return r;
}

// Weight counts from direct popcount over every message.
inline std::map<int, std::uint64_t> brute_weights(const BinaryCode& code) {
  std::map<int, std::uint64_t> out;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << code.k()); ++m) {
    Word w = 0;
    for (int i = 0; i < code.k(); ++i)
      if ((m >> i) & 1) w ^= code.generator()[static_cast<std::size_t>(i)];
    ++out[std::popcount(w)];
  }
  return out;
}

// Carry-less product reduced by the modulus, bit by bit.
inline std::uint32_t clmul_mod(std::uint32_t a, std::uint32_t b, std::uint32_t modulus) {
  std::uint32_t p = 0;
  for (int i = 0; i < 16; ++i)
    if ((b >> i) & 1) p ^= a << i;
  const int deg = 31 - std::countl_zero(modulus);
  for (int i = 31; i >= deg; --i)
    if ((p >> i) & 1) p ^= modulus << (i - deg);
  return p;
}

inline int trace_oracle(std::uint32_t a, int m, std::uint32_t modulus) {
  std::uint32_t t = 0, x = a;
  for (int i = 0; i < m; ++i) {
    t ^= x;
    x = clmul_mod(x, x, modulus);
  }
  return static_cast<int>(t);  // lies in GF(2): 0 or 1
}

}  // namespace testing_support
