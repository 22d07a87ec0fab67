#include "kisslat/concatenation.hpp"

#include <bit>

#include "kisslat/error.hpp"

namespace kisslat::concat {

void validate(const ConcatSpec& spec) {
  const auto& f = spec.outer.field();
  if (spec.basis.m() != f.m() || spec.basis.field().modulus() != f.modulus()) {
    throw DomainError("basis field GF(2^" + std::to_string(spec.basis.m()) + ") differs from the outer field GF(2^" +
                      std::to_string(f.m()) + ")");
  }
  if (spec.inner.k() != f.m()) {
    throw DomainError("inner code dimension " + std::to_string(spec.inner.k()) + " differs from m = " +
                      std::to_string(f.m()));
  }
  if (spec.inner.n() * spec.outer.N() > kMaxCodeLength) {
    throw GuardError("concatenated length " + std::to_string(spec.inner.n() * spec.outer.N()) + " exceeds 32");
  }
}

BinaryCode identity_code(int m) {
  std::vector<Word> rows;
  for (int i = 0; i < m; ++i) rows.push_back(Word{1} << i);
  return BinaryCode(m, std::move(rows));
}

Word binary_image(const ConcatSpec& spec, std::span<const ff::Element> symbols) {
  const int n0 = spec.inner.n();
  Word out = 0;
  for (std::size_t j = 0; j < symbols.size(); ++j) {
    const Word block = spec.inner.encode(spec.basis.expand(symbols[j]));
    out |= block << (static_cast<int>(j) * n0);
  }
  return out;
}

BinaryCode concat_build(const ConcatSpec& spec) {
  validate(spec);
  const auto& f = spec.outer.field();
  std::vector<Word> rows;
  std::vector<ff::Element> scaled(static_cast<std::size_t>(spec.outer.N()));
  for (int t = 0; t < spec.outer.K(); ++t) {
    const auto g = spec.outer.row(t);
    for (int i = 0; i < f.m(); ++i) {
      const auto beta = static_cast<ff::Element>(1u << i);
      for (std::size_t j = 0; j < g.size(); ++j) scaled[j] = f.mul(beta, g[j]);
      rows.push_back(binary_image(spec, scaled));
    }
  }
  if (static_cast<int>(rows.size()) > kMaxCodeDimension) throw GuardError("concatenated dimension exceeds 28");
  return BinaryCode(spec.inner.n() * spec.outer.N(), std::move(rows));
}

BinaryCode binary_expand_code(const outer::GrsCode& outer, const ff::SelfDualBasis& basis) {
  return concat_build(ConcatSpec{outer, basis, identity_code(outer.field().m())});
}

bool has_orthonormal_rows(const BinaryCode& code) {
  const auto g = code.generator();
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j = i; j < g.size(); ++j) {
      const int parity = std::popcount(g[i] & g[j]) & 1;
      if (parity != (i == j ? 1 : 0)) return false;
    }
  }
  return true;
}

ConcatReport concat_analyze(const ConcatSpec& spec) {
  ConcatReport report{concat_build(spec)};
  report.outer_self_orthogonal = outer::euclid_self_orthogonal(spec.outer);
  report.inner_orthonormal = has_orthonormal_rows(spec.inner);
  report.inner_self_orthogonal = is_self_orthogonal(spec.inner);
  report.guarantee_applies =
      report.outer_self_orthogonal && (report.inner_orthonormal || report.inner_self_orthogonal);
  report.self_orthogonal = is_self_orthogonal(report.code);
  return report;
}

}  // namespace kisslat::concat
