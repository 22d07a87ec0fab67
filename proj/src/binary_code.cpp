#include "kisslat/binary_code.hpp"

#include <algorithm>
#include <bit>
#include <thread>

#include "kisslat/error.hpp"
#include "kisslat/kernels.hpp"
#include "text_util.hpp"

namespace kisslat {

namespace {

// Reduced row echelon form; returns the pivot column of each row.
std::vector<int> rref(std::vector<Word>& rows) {
  std::vector<int> pivots;
  std::size_t r = 0;
  for (int col = 0; col < 32 && r < rows.size(); ++col) {
    const Word bit = Word{1} << col;
    auto it = std::find_if(rows.begin() + static_cast<std::ptrdiff_t>(r), rows.end(),
                           [bit](Word w) { return (w & bit) != 0; });
    if (it == rows.end()) continue;
    std::iter_swap(rows.begin() + static_cast<std::ptrdiff_t>(r), it);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i != r && (rows[i] & bit)) rows[i] ^= rows[r];
    }
    pivots.push_back(col);
    ++r;
  }
  rows.resize(r);
  return pivots;
}

}  // namespace

int gf2_rank(std::span<const Word> rows) {
  std::vector<Word> copy(rows.begin(), rows.end());
  return static_cast<int>(rref(copy).size());
}

std::vector<Word> dual_basis(std::span<const Word> rows, int n) {
  std::vector<Word> reduced(rows.begin(), rows.end());
  const auto pivots = rref(reduced);
  Word pivot_mask = 0;
  for (const int p : pivots) pivot_mask |= Word{1} << p;
  std::vector<Word> checks;
  for (int free_col = 0; free_col < n; ++free_col) {
    if (pivot_mask & (Word{1} << free_col)) continue;
    Word h = Word{1} << free_col;
    for (std::size_t r = 0; r < reduced.size(); ++r) {
      if (reduced[r] & (Word{1} << free_col)) h |= Word{1} << pivots[r];
    }
    checks.push_back(h);
  }
  return checks;
}

std::optional<std::size_t> first_dependent_row(std::span<const Word> rows) {
  std::vector<Word> basis;  // each entry has a distinct leading bit
  for (std::size_t i = 0; i < rows.size(); ++i) {
    Word w = rows[i];
    for (const Word b : basis) {
      if (w & (Word{1} << (31 - std::countl_zero(b)))) w ^= b;
    }
    if (w == 0) return i;
    basis.push_back(w);
    std::sort(basis.begin(), basis.end(), std::greater<>());
  }
  return std::nullopt;
}

BinaryCode::BinaryCode(int n, std::vector<Word> generator) : n_(n), generator_(std::move(generator)) {
  if (n < 1 || n > kMaxCodeLength) throw GuardError("code length must be in [1, 32], got " + std::to_string(n));
  if (k() > kMaxCodeDimension) throw GuardError("code dimension exceeds 28");
  if (k() > n) throw DomainError("code dimension exceeds its length");
  for (const Word w : generator_) {
    if (w & ~length_mask(n)) throw DomainError("generator row has bits beyond the code length");
  }
  if (auto dep = first_dependent_row(generator_)) {
    throw DomainError("generator is rank deficient: row " + std::to_string(*dep + 1) +
                      " depends on the rows above it");
  }
  checks_ = dual_basis(generator_, n);
}

bool BinaryCode::contains(Word w) const {
  if (w & ~length_mask(n_)) return false;
  return std::none_of(checks_.begin(), checks_.end(), [w](Word h) { return std::popcount(w & h) & 1; });
}

Word BinaryCode::encode(std::uint64_t message) const {
  Word w = 0;
  for (std::size_t i = 0; i < generator_.size(); ++i) {
    if ((message >> i) & 1u) w ^= generator_[i];
  }
  return w;
}

std::vector<Word> BinaryCode::codewords() const {
  if (k() > 20) throw GuardError("codeword listing limited to k <= 20");
  std::vector<Word> out(std::size_t{1} << k());
  for (std::uint64_t m = 0; m < out.size(); ++m) out[m] = encode(m);
  return out;
}

BinaryCode parse_code(std::string_view text) {
  const auto lines = detail::content_lines(text);
  if (lines.empty()) throw ParseError("empty code file");
  const auto head = detail::tokens(lines[0]);
  if (head.size() != 3 || head[0] != "binary-code") throw ParseError("expected header 'binary-code n=<n> k=<k>'");
  const int n = detail::parse_int<int>(detail::keyed(head[1], "n"));
  const int k = detail::parse_int<int>(detail::keyed(head[2], "k"));
  if (n < 1 || n > kMaxCodeLength) throw ParseError("code length must be in [1, 32]");
  if (k < 0 || k > kMaxCodeDimension) throw ParseError("code dimension must be in [0, 28]");
  if (static_cast<int>(lines.size()) - 1 != k) {
    throw ParseError("expected " + std::to_string(k) + " generator rows, found " + std::to_string(lines.size() - 1));
  }
  std::vector<Word> rows;
  for (int i = 0; i < k; ++i) {
    const auto line = lines[static_cast<std::size_t>(i) + 1];
    if (static_cast<int>(line.size()) != n) {
      throw ParseError("row " + std::to_string(i + 1) + " has length " + std::to_string(line.size()) +
                       ", expected " + std::to_string(n));
    }
    Word w = 0;
    for (int j = 0; j < n; ++j) {
      const char c = line[static_cast<std::size_t>(j)];
      if (c != '0' && c != '1') throw ParseError("row " + std::to_string(i + 1) + " contains '" + c + "'");
      if (c == '1') w |= Word{1} << j;
    }
    rows.push_back(w);
  }
  try {
    return BinaryCode(n, std::move(rows));
  } catch (const DomainError& e) {
    throw ParseError(e.what());
  }
}

std::string word_to_string(Word w, int n) {
  std::string s(static_cast<std::size_t>(n), '0');
  for (int j = 0; j < n; ++j) {
    if ((w >> j) & 1u) s[static_cast<std::size_t>(j)] = '1';
  }
  return s;
}

std::string format_code(const BinaryCode& code) {
  std::string out = "binary-code n=" + std::to_string(code.n()) + " k=" + std::to_string(code.k()) + "\n";
  for (const Word w : code.generator()) out += word_to_string(w, code.n()) + "\n";
  return out;
}

bool is_self_orthogonal(const BinaryCode& code) {
  const auto g = code.generator();
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j = i; j < g.size(); ++j) {
      if (std::popcount(g[i] & g[j]) & 1) return false;
    }
  }
  return true;
}

WeightDistribution weight_distribution(const BinaryCode& code, int workers) {
  const auto rows = code.generator();
  const int k = code.k();
  // Top `prefix_bits` rows select a chunk; each chunk is one kernel call.
  const int prefix_bits = std::clamp(k - 10, 0, 6);
  const auto inner = rows.first(static_cast<std::size_t>(k - prefix_bits));
  const auto outer = rows.subspan(static_cast<std::size_t>(k - prefix_bits));
  const std::uint32_t chunks = 1u << prefix_bits;
  const kernels::Isa isa = kernels::active_isa();

  const int threads = std::clamp(workers, 1, static_cast<int>(chunks));
  std::vector<kernels::WeightHistogram> partial(static_cast<std::size_t>(threads));
  auto run = [&](int t) {
    auto& hist = partial[static_cast<std::size_t>(t)];
    hist.fill(0);
    for (std::uint32_t c = static_cast<std::uint32_t>(t); c < chunks; c += static_cast<std::uint32_t>(threads)) {
      Word base = 0;
      for (int b = 0; b < prefix_bits; ++b) {
        if ((c >> b) & 1u) base ^= outer[static_cast<std::size_t>(b)];
      }
      kernels::accumulate_weights(base, inner, hist, isa);
    }
  };
  if (threads == 1) {
    run(0);
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(run, t);
  }

  WeightDistribution wd;
  for (int w = 0; w <= 32; ++w) {
    std::uint64_t total = 0;
    for (const auto& h : partial) total += h[static_cast<std::size_t>(w)];
    if (total == 0) continue;
    wd.counts[w] = total;
    if (w > 0 && !wd.d) {
      wd.d = w;
      wd.A_d = total;
    }
  }
  return wd;
}

}  // namespace kisslat
