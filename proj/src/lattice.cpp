#include "kisslat/lattice.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <atomic>
#include <bit>
#include <random>
#include <thread>

#include "kisslat/error.hpp"
#include "kisslat/kernels.hpp"
#include "text_util.hpp"

namespace kisslat::lattice {

namespace {

using BigRow = std::vector<mpz_class>;

// x in span(rows) for an upper-triangular integer basis, with exact
// integer arithmetic and no assumption on the span.
bool exact_triangular_member(const std::vector<BigRow>& rows, BigRow x) {
  const std::size_t n = rows.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i] == 0) continue;
    if (!mpz_divisible_p(x[i].get_mpz_t(), rows[i][i].get_mpz_t())) return false;
    const mpz_class c = x[i] / rows[i][i];
    for (std::size_t j = i; j < n; ++j) x[j] -= c * rows[i][j];
  }
  return true;
}

// Membership modulo M = 2^n: valid for any lattice containing M Z^n. All
// arithmetic wraps in uint64 and is masked to n bits, which is exact
// because M divides 2^64.
class SpanTester {
 public:
  explicit SpanTester(const LatticeBasis& b) : n_(b.n()), mask_(modulus_mask(b.n())) {
    rows_.resize(static_cast<std::size_t>(n_ * n_));
    for (std::size_t i = 0; i < rows_.size(); ++i) rows_[i] = static_cast<std::uint64_t>(b.entries()[i]) & mask_;
    for (int i = 0; i < n_; ++i) shifts_.push_back(std::countr_zero(static_cast<std::uint64_t>(b.at(i, i))));
  }

  std::uint64_t mask() const { return mask_; }

  // x holds residues in [0, 2^n); it is clobbered.
  bool test(std::uint64_t* x) const {
    for (int i = 0; i < n_; ++i) {
      const std::uint64_t xi = x[i] & mask_;
      if (xi == 0) continue;
      const int s = shifts_[static_cast<std::size_t>(i)];
      if (xi & ((std::uint64_t{1} << s) - 1)) return false;
      const std::uint64_t c = xi >> s;
      const std::uint64_t* row = rows_.data() + static_cast<std::size_t>(i * n_);
      for (int j = i + 1; j < n_; ++j) x[j] -= c * row[j];
    }
    return true;
  }

  static std::uint64_t modulus_mask(int n) { return (std::uint64_t{1} << n) - 1; }

 private:
  int n_;
  std::uint64_t mask_;
  std::vector<std::uint64_t> rows_;
  std::vector<int> shifts_;
};

}  // namespace

LatticeBasis::LatticeBasis(int n, std::vector<std::int64_t> rows, std::string source)
    : n_(n), rows_(std::move(rows)), source_(std::move(source)) {
  if (n < 1 || n > kMaxCodeLength) throw GuardError("lattice dimension must be in [1, 32]");
  if (rows_.size() != static_cast<std::size_t>(n * n)) throw DomainError("basis must have n*n entries");
  const std::int64_t big = std::int64_t{1} << n;
  for (int i = 0; i < n; ++i) {
    const std::int64_t d = at(i, i);
    if (d <= 0 || !std::has_single_bit(static_cast<std::uint64_t>(d)) || d > big) {
      throw DomainError("diagonal entry " + std::to_string(i) + " must be a power of two dividing 2^n");
    }
    for (int j = 0; j < n; ++j) {
      const std::int64_t v = at(i, j);
      if (j < i && v != 0) throw DomainError("basis is not upper triangular");
      if (j > i && (v < 0 || v >= at(j, j))) throw DomainError("basis entries above the diagonal are not reduced");
    }
  }
  std::vector<BigRow> big_rows(static_cast<std::size_t>(n), BigRow(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) big_rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = mpz_class(static_cast<long>(at(i, j)));
  }
  for (int i = 0; i < n; ++i) {
    BigRow e(static_cast<std::size_t>(n));
    e[static_cast<std::size_t>(i)] = mpz_class(static_cast<long>(big));
    if (!exact_triangular_member(big_rows, std::move(e))) throw DomainError("span does not contain 2^n Z^n");
  }
  std::vector<Word> mod2;
  for (int i = 0; i < n; ++i) {
    Word w = 0;
    for (int j = 0; j < n; ++j) w |= static_cast<Word>(at(i, j) & 1) << j;
    mod2.push_back(w);
  }
  residue_checks_ = dual_basis(mod2, n);
}

std::span<const std::int64_t> LatticeBasis::row(int i) const {
  return std::span<const std::int64_t>(rows_).subspan(static_cast<std::size_t>(i * n_), static_cast<std::size_t>(n_));
}

int LatticeBasis::determinant_log2() const {
  int e = 0;
  for (int i = 0; i < n_; ++i) e += std::countr_zero(static_cast<std::uint64_t>(at(i, i)));
  return e;
}

std::string LatticeBasis::determinant() const {
  mpz_class det = 1;
  mpz_mul_2exp(det.get_mpz_t(), det.get_mpz_t(), static_cast<mp_bitcnt_t>(determinant_log2()));
  return det.get_str();
}

IntVector lift(Word w, int n) {
  IntVector x(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) x[static_cast<std::size_t>(j)] = (w >> j) & 1u;
  return x;
}

Word residue(std::span<const std::int64_t> x) {
  Word w = 0;
  for (std::size_t j = 0; j < x.size(); ++j) w |= static_cast<Word>(x[j] & 1) << j;
  return w;
}

LatticeBasis build_span_basis(const BinaryCode& code) {
  const int n = code.n();
  const std::size_t un = static_cast<std::size_t>(n);
  const mpz_class modulus = mpz_class(1) << n;
  std::vector<BigRow> rows(un, BigRow(un));
  for (std::size_t i = 0; i < un; ++i) rows[i][i] = modulus;

  auto snapshot = [&] {
    std::vector<std::int64_t> flat;
    flat.reserve(un * un);
    for (const auto& r : rows) {
      for (const auto& v : r) flat.push_back(v.get_si());
    }
    return LatticeBasis(n, std::move(flat), "span");
  };

  // Back to Hermite shape: entries above the diagonal reduced into [0, b_jj).
  auto reduce = [&] {
    for (std::size_t i = 0; i < un; ++i) {
      for (std::size_t j = i + 1; j < un; ++j) {
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), rows[i][j].get_mpz_t(), rows[j][j].get_mpz_t());
        if (q == 0) continue;
        for (std::size_t t = j; t < un; ++t) rows[i][t] -= q * rows[j][t];
      }
    }
  };

  LatticeBasis current = snapshot();
  SpanTester tester(current);
  std::vector<std::uint64_t> scratch(un);
  for (const Word w : code.codewords()) {
    for (std::size_t j = 0; j < un; ++j) scratch[j] = (w >> j) & 1u;
    if (tester.test(scratch.data())) continue;

    // The span contains 2^n Z^n, so v may start reduced mod 2^n.
    BigRow v(un);
    for (std::size_t j = 0; j < un; ++j) v[j] = (w >> j) & 1u;
    for (std::size_t i = 0; i < un; ++i) {
      if (v[i] == 0) continue;
      if (mpz_divisible_p(v[i].get_mpz_t(), rows[i][i].get_mpz_t())) {
        const mpz_class q = v[i] / rows[i][i];
        for (std::size_t j = i; j < un; ++j) v[j] -= q * rows[i][j];
        continue;
      }
      mpz_class g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), rows[i][i].get_mpz_t(), v[i].get_mpz_t());
      const mpz_class a = v[i] / g;
      const mpz_class b = rows[i][i] / g;
      for (std::size_t j = i; j < un; ++j) {
        const mpz_class old_row = rows[i][j];
        rows[i][j] = s * old_row + t * v[j];
        v[j] = a * old_row - b * v[j];
      }
      if (rows[i][i] < 0) {
        for (std::size_t j = i; j < un; ++j) rows[i][j] = -rows[i][j];
      }
    }
    reduce();
    current = snapshot();
    tester = SpanTester(current);
  }
  return current;
}

bool membership_set(const BinaryCode& code, std::span<const std::int64_t> x) {
  const int n = code.n();
  if (static_cast<int>(x.size()) != n) throw DomainError("vector length differs from the code length");
  const std::int64_t big = std::int64_t{1} << n;
  std::vector<std::int64_t> r(x.begin(), x.end());
  for (auto& v : r) v = ((v % big) + big) % big;
  for (int level = 0; level < n; ++level) {
    const Word w = residue(r);
    if (!code.contains(w)) return false;
    for (int j = 0; j < n; ++j) r[static_cast<std::size_t>(j)] = (r[static_cast<std::size_t>(j)] - ((w >> j) & 1u)) / 2;
  }
  return true;
}

bool membership_span(const LatticeBasis& basis, std::span<const std::int64_t> x) {
  if (static_cast<int>(x.size()) != basis.n()) throw DomainError("vector length differs from the lattice dimension");
  const SpanTester tester(basis);
  std::vector<std::uint64_t> r(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) r[j] = static_cast<std::uint64_t>(x[j]) & tester.mask();
  return tester.test(r.data());
}

namespace {

struct Pattern {
  std::array<std::uint8_t, kMaxCodeLength> magnitude{};
  std::uint8_t norm = 0;
};

class ShortEnumerator {
 public:
  ShortEnumerator(const LatticeBasis& basis, int cap, bool reverse)
      : basis_(basis), tester_(basis), n_(basis.n()), cap_(cap), reverse_(reverse), isa_(kernels::active_isa()) {}

  struct Counts {
    std::vector<std::uint64_t> per_norm;
    std::uint64_t patterns = 0;
    std::uint64_t kept = 0;
  };

  // Patterns whose first nonzero coordinate is `first` with magnitude `value`.
  void run_task(int first, int value, Counts& counts) {
    Pattern p;
    p.magnitude[static_cast<std::size_t>(first)] = static_cast<std::uint8_t>(value);
    p.norm = static_cast<std::uint8_t>(value * value);
    std::vector<Pattern> batch;
    batch.reserve(kBatch);
    extend(p, first + 1, batch, counts);
    flush(batch, counts);
  }

 private:
  static constexpr std::size_t kBatch = 4096;

  void extend(Pattern& p, int pos, std::vector<Pattern>& batch, Counts& counts) {
    if (pos == n_) {
      batch.push_back(p);
      if (batch.size() == kBatch) flush(batch, counts);
      return;
    }
    for (int step = 0; step <= 4; ++step) {
      const int v = reverse_ ? 4 - step : step;
      if (p.norm + v * v > cap_) continue;
      p.magnitude[static_cast<std::size_t>(pos)] = static_cast<std::uint8_t>(v);
      p.norm = static_cast<std::uint8_t>(p.norm + v * v);
      extend(p, pos + 1, batch, counts);
      p.norm = static_cast<std::uint8_t>(p.norm - v * v);
    }
    p.magnitude[static_cast<std::size_t>(pos)] = 0;
  }

  void flush(std::vector<Pattern>& batch, Counts& counts) {
    if (batch.empty()) return;
    odd_.resize(batch.size());
    keep_.resize(batch.size());
    for (std::size_t i = 0; i < batch.size(); ++i) {
      Word odd = 0;
      for (int j = 0; j < n_; ++j) odd |= static_cast<Word>(batch[i].magnitude[static_cast<std::size_t>(j)] & 1u) << j;
      odd_[i] = odd;
    }
    counts.patterns += batch.size();
    counts.kept += kernels::filter_in_code(basis_.residue_checks(), odd_, keep_, isa_);
    for (std::size_t i = 0; i < batch.size(); ++i) {
      if (keep_[i]) count_signed(batch[i], counts);
    }
    batch.clear();
  }

  void count_signed(const Pattern& p, Counts& counts) {
    support_.clear();
    for (int j = 0; j < n_; ++j) {
      if (p.magnitude[static_cast<std::size_t>(j)] != 0) support_.push_back(j);
    }
    const std::uint64_t mask = tester_.mask();
    std::array<std::uint64_t, kMaxCodeLength> x{};
    const std::uint64_t combos = std::uint64_t{1} << support_.size();
    std::uint64_t members = 0;
    for (std::uint64_t signs = 0; signs < combos; ++signs) {
      x.fill(0);
      for (std::size_t s = 0; s < support_.size(); ++s) {
        const std::uint64_t mag = p.magnitude[static_cast<std::size_t>(support_[s])];
        x[static_cast<std::size_t>(support_[s])] = ((signs >> s) & 1u) ? (0 - mag) & mask : mag;
      }
      members += tester_.test(x.data());
    }
    counts.per_norm[p.norm] += members;
  }

  const LatticeBasis& basis_;
  SpanTester tester_;
  int n_;
  int cap_;
  bool reverse_;
  kernels::Isa isa_;
  std::vector<Word> odd_;
  std::vector<std::uint8_t> keep_;
  std::vector<int> support_;
};

}  // namespace

ShortVectorReport enumerate_short(const LatticeBasis& basis, int cap, const EnumerationOptions& options) {
  if (cap < 1) throw DomainError("norm cap must be at least 1");
  if (!options.force && (basis.n() > kDefaultMaxDimension || cap > kDefaultMaxCap)) {
    throw GuardError("enumeration guard: need n <= 24 and cap <= 16 (got n=" + std::to_string(basis.n()) +
                     ", cap=" + std::to_string(cap) + "); use --force to override");
  }
  if (cap > 255) throw GuardError("norm cap above 255 is not supported");

  std::vector<std::pair<int, int>> tasks;
  for (int first = 0; first < basis.n(); ++first) {
    for (int v = 1; v <= 4 && v * v <= cap; ++v) tasks.emplace_back(first, v);
  }
  if (options.reverse_order) std::reverse(tasks.begin(), tasks.end());

  const int threads = std::clamp(options.workers, 1, static_cast<int>(tasks.size()));
  std::vector<ShortEnumerator::Counts> partial(static_cast<std::size_t>(threads));
  std::atomic<std::size_t> next{0};
  auto work = [&](int t) {
    ShortEnumerator en(basis, cap, options.reverse_order);
    auto& counts = partial[static_cast<std::size_t>(t)];
    counts.per_norm.assign(static_cast<std::size_t>(cap) + 1, 0);
    for (std::size_t i = next++; i < tasks.size(); i = next++) en.run_task(tasks[i].first, tasks[i].second, counts);
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(work, t);
  }

  ShortVectorReport report;
  report.cap = cap;
  for (int norm = 1; norm <= cap; ++norm) {
    std::uint64_t total = 0;
    for (const auto& c : partial) total += c.per_norm[static_cast<std::size_t>(norm)];
    if (total == 0) continue;
    report.per_norm[norm] = total;
    if (!report.min_norm) {
      report.min_norm = norm;
      report.kissing = total;
    }
  }
  for (const auto& c : partial) {
    report.patterns += c.patterns;
    report.patterns_kept += c.kept;
  }
  return report;
}

IntVector random_set_member(const BinaryCode& code, std::mt19937_64& rng) {
  const int n = code.n();
  const std::uint64_t message_mask = (std::uint64_t{1} << code.k()) - 1;
  IntVector x(static_cast<std::size_t>(n), 0);
  for (int level = 0; level < n; ++level) {
    const Word c = code.encode(rng() & message_mask);
    for (int j = 0; j < n; ++j) {
      if ((c >> j) & 1u) x[static_cast<std::size_t>(j)] += std::int64_t{1} << level;
    }
  }
  for (auto& v : x) v += (static_cast<std::int64_t>(rng() % 3) - 1) << n;
  return x;
}

ClosureReport closure_probe(const BinaryCode& code, std::uint64_t trials, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  ClosureReport report;
  report.trials = trials;
  IntVector sum(static_cast<std::size_t>(code.n()));
  for (std::uint64_t t = 0; t < trials; ++t) {
    auto x = random_set_member(code, rng);
    auto y = random_set_member(code, rng);
    std::transform(x.begin(), x.end(), y.begin(), sum.begin(), std::plus<>());
    if (membership_set(code, sum)) {
      ++report.passed;
      continue;
    }
    ++report.failed;
    if (report.counterexamples.size() < kMaxCounterexamples) {
      report.counterexamples.push_back({std::move(x), std::move(y), sum});
    }
  }
  return report;
}

std::uint64_t span_misses_set(const BinaryCode& code, const LatticeBasis& basis, std::uint64_t trials,
                              std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uint64_t misses = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    if (!membership_span(basis, random_set_member(code, rng))) ++misses;
  }
  return misses;
}

LatticeVerdict verify_lattice_claims(const BinaryCode& code, const VerifyOptions& options) {
  if (!is_self_orthogonal(code)) throw DomainError("verify_lattice_claims requires a self-orthogonal code");
  const auto wd = weight_distribution(code);
  if (!wd.d) throw DomainError("verify_lattice_claims requires a code of dimension at least 1");

  LatticeVerdict v;
  v.d = *wd.d;
  v.A_d = wd.A_d;
  const auto basis = build_span_basis(code);
  v.shortest = enumerate_short(basis, options.cap.value_or(std::max(v.d, 8)), options.enumeration);
  v.closure = closure_probe(code, options.trials, options.seed);
  v.span_misses = span_misses_set(code, basis, options.trials, options.seed + 1);
  v.set_closed_sampled = v.closure.failed == 0;
  v.norm_equals_d = v.shortest.min_norm == v.d;
  v.kissing_ge_Ad = v.norm_equals_d && v.shortest.kissing >= v.A_d;
  v.span_contains_set_sampled = v.span_misses == 0;
  return v;
}

LatticeBasis parse_lattice(std::string_view text) {
  const auto lines = detail::content_lines(text);
  if (lines.empty()) throw ParseError("empty lattice file");
  const auto head = detail::tokens(lines[0]);
  if (head.size() != 2 || head[0] != "lattice") throw ParseError("expected header 'lattice n=<n>'");
  const int n = detail::parse_int<int>(detail::keyed(head[1], "n"));
  if (n < 1 || n > kMaxCodeLength) throw ParseError("lattice dimension must be in [1, 32]");
  if (static_cast<int>(lines.size()) != n + 1) throw ParseError("expected " + std::to_string(n) + " basis rows");
  std::vector<std::int64_t> entries;
  for (int i = 1; i <= n; ++i) {
    const auto toks = detail::tokens(lines[static_cast<std::size_t>(i)]);
    if (static_cast<int>(toks.size()) != n) throw ParseError("row " + std::to_string(i) + " must have n entries");
    for (const auto tok : toks) entries.push_back(detail::parse_int<std::int64_t>(tok));
  }
  try {
    return LatticeBasis(n, std::move(entries));
  } catch (const DomainError& e) {
    throw ParseError(std::string("invalid lattice basis: ") + e.what());
  }
}

std::string format_lattice(const LatticeBasis& basis) {
  std::string out = "lattice n=" + std::to_string(basis.n()) + "\n";
  for (int i = 0; i < basis.n(); ++i) {
    for (int j = 0; j < basis.n(); ++j) out += (j ? " " : "") + std::to_string(basis.at(i, j));
    out += "\n";
  }
  return out;
}

}  // namespace kisslat::lattice
