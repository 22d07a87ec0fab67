#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace kisslat::ff {

// An element of GF(2^m) as an m-bit pattern of polynomial coefficients
// (bit i is the coefficient of x^i). Addition is XOR.
using Element = std::uint16_t;

inline constexpr int kMaxDegree = 8;

// Default irreducible modulus for each degree 1..8, bit-encoded including the
// leading term (x^2+x+1 -> 0x7).
std::uint32_t default_modulus(int m);

// Exhaustive trial division by every polynomial of degree 1..deg/2.
bool is_irreducible(std::uint32_t poly);

int poly_degree(std::uint32_t poly);

/// Precomputed arithmetic for GF(2^m), 1 <= m <= 8.
///
/// Construction verifies that the modulus is irreducible and that some
/// element generates the multiplicative group (order 2^m - 1). The object is
/// immutable afterwards and safe to share between threads.
class FieldTable {
 public:
  explicit FieldTable(int m, std::optional<std::uint32_t> modulus = std::nullopt);

  int m() const { return m_; }
  std::uint32_t q() const { return 1u << m_; }
  std::uint32_t modulus() const { return modulus_; }
  Element generator() const { return generator_; }

  bool contains(std::uint32_t a) const { return a < q(); }

  static Element add(Element a, Element b) { return a ^ b; }
  Element mul(Element a, Element b) const { return mul_[(std::size_t{a} << m_) | b]; }
  Element square(Element a) const { return mul(a, a); }
  Element pow(Element a, std::uint64_t e) const;
  // Throws DomainError for a == 0.
  Element inv(Element a) const;
  // Unique square root (Frobenius is bijective in characteristic 2).
  Element sqrt(Element a) const { return pow(a, q() / 2); }
  // a + a^2 + a^4 + ... + a^(2^(m-1)), always 0 or 1.
  int trace(Element a) const { return trace_[a]; }

 private:
  int m_;
  std::uint32_t modulus_;
  Element generator_ = 1;
  std::vector<Element> mul_;
  std::vector<std::uint8_t> trace_;
};

using FieldPtr = std::shared_ptr<const FieldTable>;

FieldPtr make_field(int m, std::optional<std::uint32_t> modulus = std::nullopt);

// Field whose size is q = 2^m with the default modulus; DomainError otherwise.
FieldPtr field_for_size(std::uint32_t q);

// `field m=<m> modulus=<hex>`
FieldPtr parse_field_spec(std::string_view text);
std::string format_field_spec(const FieldTable& field);

/// Basis {a_1..a_m} of GF(2^m) over GF(2) with Tr(a_i a_j) = [i == j].
class SelfDualBasis {
 public:
  // Validates the Gram condition and linear independence.
  SelfDualBasis(FieldPtr field, std::vector<Element> elements, std::uint64_t seed = 0);

  int m() const { return field_->m(); }
  const FieldTable& field() const { return *field_; }
  const FieldPtr& field_ptr() const { return field_; }
  std::span<const Element> elements() const { return elements_; }
  std::uint64_t seed() const { return seed_; }

  // Coordinates (c_1..c_m) of a = sum c_i a_i packed as bit i-1 of the result.
  std::uint32_t expand(Element a) const { return coords_[a]; }
  std::vector<int> expand_bits(Element a) const;
  Element combine(std::uint32_t coords) const;

 private:
  FieldPtr field_;
  std::vector<Element> elements_;
  std::uint64_t seed_;
  std::vector<std::uint32_t> coords_;
};

inline constexpr std::uint64_t kDefaultBasisSeed = 0x5eed'0001;

// Backtracking search over the affine constraint sets Tr(a) = 1,
// Tr(a_i a) = 0. Candidates are tried in increasing order for m <= 3 and in a
// seeded shuffled order for m >= 4.
SelfDualBasis find_self_dual_basis(FieldPtr field, std::uint64_t seed = kDefaultBasisSeed);

// One hex element per line; blank lines and `#` comments ignored.
SelfDualBasis parse_basis(std::string_view text, FieldPtr field);
std::string format_basis(const SelfDualBasis& basis);

std::string to_hex(std::uint32_t value);
std::uint32_t parse_hex(std::string_view token);

}  // namespace kisslat::ff
