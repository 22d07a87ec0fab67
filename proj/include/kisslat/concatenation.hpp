#pragma once

#include <span>
#include <vector>

#include "kisslat/binary_code.hpp"
#include "kisslat/finite_field.hpp"
#include "kisslat/outer_codes.hpp"

namespace kisslat::concat {

// Outer GRS code over GF(2^m), symbols mapped to m bits by a self-dual
// basis, then encoded by a binary [n0, m] inner code. Outer coordinate j
// occupies bits [j*n0, (j+1)*n0).
struct ConcatSpec {
  outer::GrsCode outer;
  ff::SelfDualBasis basis;
  BinaryCode inner;
};

// Throws DomainError on degree/dimension mismatches or a result longer
// than 32 bits.
void validate(const ConcatSpec& spec);

// Identity inner code [m, m, 1].
BinaryCode identity_code(int m);

// Binary image of one outer word (length N symbols).
Word binary_image(const ConcatSpec& spec, std::span<const ff::Element> symbols);

// Generated by the images of beta * g_t for the polynomial basis beta = x^i
// and the outer generator rows g_t: an [n0*N, m*K] binary code.
BinaryCode concat_build(const ConcatSpec& spec);

BinaryCode binary_expand_code(const outer::GrsCode& outer, const ff::SelfDualBasis& basis);

// G0 * G0^T = I over GF(2).
bool has_orthonormal_rows(const BinaryCode& code);

struct ConcatReport {
  BinaryCode code;
  bool outer_self_orthogonal = false;
  bool inner_orthonormal = false;
  bool inner_self_orthogonal = false;
  // Sufficient conditions hold: outer self-orthogonal and inner orthonormal or self-orthogonal.
  bool guarantee_applies = false;
  // Measured directly on the output, never inferred.
  bool self_orthogonal = false;
};

ConcatReport concat_analyze(const ConcatSpec& spec);

}  // namespace kisslat::concat
