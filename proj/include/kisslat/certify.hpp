#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kisslat/error.hpp"

namespace kisslat::certify {

inline constexpr std::string_view kToolVersion = "kisslat 1.0.0";

struct CodeSection {
  int n = 0;
  int k = 0;
  std::optional<int> d;
  std::uint64_t A_d = 0;
  bool self_orthogonal = false;
  std::map<int, std::uint64_t> weights;
  friend bool operator==(const CodeSection&, const CodeSection&) = default;
};

struct LatticeSection {
  int dimension = 0;
  std::string determinant;  // exact decimal
  int determinant_log2 = 0;
  std::optional<int> min_norm;
  std::uint64_t kissing = 0;
  std::map<int, std::uint64_t> per_norm;
  std::vector<std::vector<std::int64_t>> basis;
  std::string basis_digest;  // fnv1a64 of the lattice file text
  friend bool operator==(const LatticeSection&, const LatticeSection&) = default;
};

struct ChecksSection {
  bool set_closed_sampled = false;
  std::optional<bool> norm_equals_d;  // null when the code has no nonzero words
  std::optional<bool> kissing_ge_Ad;
  bool span_contains_set_sampled = false;
  bool residue_invariant = false;  // every basis row reduces mod 2 into the code
  friend bool operator==(const ChecksSection&, const ChecksSection&) = default;
};

struct ClosureSection {
  std::uint64_t trials = 0;
  std::uint64_t passed = 0;
  std::uint64_t failed = 0;
  // Each entry: x, y and x + y, where x and y are set members and x + y is not.
  std::vector<std::vector<std::vector<std::int64_t>>> counterexamples;
  friend bool operator==(const ClosureSection&, const ClosureSection&) = default;
};

struct MetaSection {
  std::string tool_version;
  std::uint64_t seed = 0;
  int norm_cap = 0;
  int max_dimension = 0;
  int max_k = 0;
  std::uint64_t closure_trials = 0;
  std::optional<std::map<std::string, double>> timings_ms;  // only with record_timings
  friend bool operator==(const MetaSection&, const MetaSection&) = default;
};

struct Certificate {
  CodeSection code;
  LatticeSection lattice;
  ChecksSection checks;
  ClosureSection closure;
  std::map<std::string, double> bounds_snapshot;
  MetaSection meta;
  std::vector<std::string> warnings;
  friend bool operator==(const Certificate&, const Certificate&) = default;
};

struct CertifyOptions {
  std::uint64_t seed = 1;
  std::optional<int> cap;  // default max(d, 8)
  std::uint64_t trials = 1000;
  int workers = 1;
  int max_dimension = 24;
  int max_k = 20;
  bool force = false;  // lift the enumeration guard
  bool record_timings = false;
};

// Failure of one pipeline stage; `partial` holds every field computed by
// the stages before it.
class StageError : public Error {
 public:
  StageError(std::string stage, const std::string& message, std::shared_ptr<const Certificate> partial);
  const std::string& stage() const { return stage_; }
  const std::shared_ptr<const Certificate>& partial() const { return partial_; }

 private:
  std::string stage_;
  std::shared_ptr<const Certificate> partial_;
};

// parse_code -> self_orthogonality -> weights -> lattice -> enumeration ->
// closure -> bounds. A non-self-orthogonal code is certified with a warning.
Certificate certify(std::string_view code_text, const CertifyOptions& options = {});
Certificate certify_file(const std::string& path, const CertifyOptions& options = {});

enum class Format { json, csv_summary };

// DomainError for names other than json / csv-summary.
Format parse_format(std::string_view name);

// Canonical text: sorted keys, two-space indent, floats at 12 significant digits.
std::string emit(const Certificate& cert, Format format = Format::json);
Certificate parse_certificate(std::string_view json_text);

// Rounds to 12 significant digits, the precision emit writes.
double canonical_double(double v);
std::string fnv1a64_hex(std::string_view text);

}  // namespace kisslat::certify
