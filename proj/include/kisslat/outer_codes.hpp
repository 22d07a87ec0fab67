#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kisslat/finite_field.hpp"

namespace kisslat::outer {

using ff::Element;

/// Generalized Reed-Solomon code over GF(2^m): row t of the generator is
/// (v_j * a_j^t)_j for t = 0..K-1, with distinct points a_j and nonzero
/// column multipliers v_j.
class GrsCode {
 public:
  GrsCode(ff::FieldPtr field, std::vector<Element> points, std::vector<Element> multipliers, int K);

  const ff::FieldTable& field() const { return *field_; }
  const ff::FieldPtr& field_ptr() const { return field_; }
  int N() const { return static_cast<int>(points_.size()); }
  int K() const { return K_; }
  std::span<const Element> points() const { return points_; }
  std::span<const Element> multipliers() const { return multipliers_; }
  std::span<const Element> row(int t) const;

  std::vector<Element> encode(std::span<const Element> message) const;
  // Visits all q^K codewords; GuardError when q^K > 2^20.
  std::vector<std::vector<Element>> codewords() const;
  // Minimum nonzero Hamming weight by enumeration (nullopt for K = 0).
  std::optional<int> minimum_distance() const;

 private:
  ff::FieldPtr field_;
  std::vector<Element> points_;
  std::vector<Element> multipliers_;
  int K_;
  std::vector<Element> generator_;  // K x N, row-major
};

GrsCode grs_build(ff::FieldPtr field, std::vector<Element> points, std::vector<Element> multipliers, int K);

Element euclid_dot(const ff::FieldTable& f, std::span<const Element> u, std::span<const Element> v);

// G * G^T == 0 under the Euclidean form.
bool euclid_self_orthogonal(const GrsCode& code);

// Column multipliers making GRS(points, K) Euclidean self-orthogonal: the
// squares u_j = v_j^2 must satisfy sum_j u_j a_j^e = 0 for e = 0..2K-2.
// Kernel vectors of that system are scanned in lexicographic order of their
// free coordinates; the first with no zero entry wins.
std::optional<std::vector<Element>> find_self_orthogonal_multipliers(const ff::FieldTable& f,
                                                                     std::span<const Element> points, int K);

// floor((n - 1 - log_q(1 + 2/q)/q)/2 - g); negative means no k qualifies.
std::int64_t max_self_orthogonal_dimension(std::uint32_t q, std::int64_t n, std::int64_t g);

struct RateThresholds {
  std::uint32_t q = 0;
  std::uint32_t r = 0;          // sqrt(q)
  double rho0 = 0;
  double middle_term = 0;       // log_q(1 + 2/q) / (2q)
  bool admissible = false;      // rho0 > 0
  std::optional<std::int64_t> n;     // length n = (r - 1) g when requested
  std::optional<std::int64_t> g;
  std::optional<std::int64_t> kmax;  // max_self_orthogonal_dimension(q, n, g)
};

// q must be an even power of two. When n is given it must be a multiple of
// r - 1 and the genus g = n/(r - 1) and dimension bound are filled in.
RateThresholds rho0(std::uint32_t q, std::optional<std::int64_t> n = std::nullopt);

// `grs q=<q> N=<N> K=<K>`, a line of hex points, a line of hex multipliers.
GrsCode parse_grs(std::string_view text);
std::string format_grs(const GrsCode& code);

}  // namespace kisslat::outer
