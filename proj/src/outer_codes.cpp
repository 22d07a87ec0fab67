#include "kisslat/outer_codes.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "kisslat/error.hpp"
#include "text_util.hpp"

namespace kisslat::outer {

GrsCode::GrsCode(ff::FieldPtr field, std::vector<Element> points, std::vector<Element> multipliers, int K)
    : field_(std::move(field)), points_(std::move(points)), multipliers_(std::move(multipliers)), K_(K) {
  const auto& f = *field_;
  if (points_.size() != multipliers_.size()) throw DomainError("points and multipliers differ in length");
  if (points_.empty()) throw DomainError("GRS code needs at least one point");
  if (K_ < 0 || K_ > N()) throw DomainError("GRS dimension K=" + std::to_string(K_) + " outside [0, N]");
  for (std::size_t j = 0; j < points_.size(); ++j) {
    if (!f.contains(points_[j]) || !f.contains(multipliers_[j])) throw DomainError("element outside the field");
    if (multipliers_[j] == 0) throw DomainError("multiplier " + std::to_string(j) + " is zero");
    for (std::size_t i = 0; i < j; ++i) {
      if (points_[i] == points_[j]) throw DomainError("evaluation point repeated at positions " +
                                                      std::to_string(i) + " and " + std::to_string(j));
    }
  }
  generator_.resize(static_cast<std::size_t>(K_) * points_.size());
  for (int t = 0; t < K_; ++t) {
    for (std::size_t j = 0; j < points_.size(); ++j) {
      generator_[static_cast<std::size_t>(t) * points_.size() + j] =
          f.mul(multipliers_[j], f.pow(points_[j], static_cast<std::uint64_t>(t)));
    }
  }
}

std::span<const Element> GrsCode::row(int t) const {
  return std::span<const Element>(generator_).subspan(static_cast<std::size_t>(t) * points_.size(), points_.size());
}

std::vector<Element> GrsCode::encode(std::span<const Element> message) const {
  if (static_cast<int>(message.size()) != K_) throw DomainError("message length differs from K");
  std::vector<Element> word(points_.size(), 0);
  for (int t = 0; t < K_; ++t) {
    const auto r = row(t);
    for (std::size_t j = 0; j < word.size(); ++j) word[j] ^= field_->mul(message[static_cast<std::size_t>(t)], r[j]);
  }
  return word;
}

std::vector<std::vector<Element>> GrsCode::codewords() const {
  const int bits = field_->m() * K_;
  if (bits > 20) throw GuardError("GRS enumeration limited to q^K <= 2^20");
  std::vector<std::vector<Element>> out;
  out.reserve(std::size_t{1} << bits);
  std::vector<Element> message(static_cast<std::size_t>(K_));
  const std::uint32_t mask = field_->q() - 1;
  for (std::uint64_t idx = 0; idx < (std::uint64_t{1} << bits); ++idx) {
    for (int t = 0; t < K_; ++t) message[static_cast<std::size_t>(t)] = static_cast<Element>((idx >> (t * field_->m())) & mask);
    out.push_back(encode(message));
  }
  return out;
}

std::optional<int> GrsCode::minimum_distance() const {
  std::optional<int> best;
  for (const auto& w : codewords()) {
    const int weight = static_cast<int>(std::count_if(w.begin(), w.end(), [](Element e) { return e != 0; }));
    if (weight > 0 && (!best || weight < *best)) best = weight;
  }
  return best;
}

GrsCode grs_build(ff::FieldPtr field, std::vector<Element> points, std::vector<Element> multipliers, int K) {
  return GrsCode(std::move(field), std::move(points), std::move(multipliers), K);
}

Element euclid_dot(const ff::FieldTable& f, std::span<const Element> u, std::span<const Element> v) {
  Element acc = 0;
  for (std::size_t j = 0; j < u.size(); ++j) acc ^= f.mul(u[j], v[j]);
  return acc;
}

bool euclid_self_orthogonal(const GrsCode& code) {
  for (int s = 0; s < code.K(); ++s) {
    for (int t = s; t < code.K(); ++t) {
      if (euclid_dot(code.field(), code.row(s), code.row(t)) != 0) return false;
    }
  }
  return true;
}

std::optional<std::vector<Element>> find_self_orthogonal_multipliers(const ff::FieldTable& f,
                                                                     std::span<const Element> points, int K) {
  const std::size_t N = points.size();
  if (K == 0) return std::vector<Element>(N, 1);
  const int equations = 2 * K - 1;
  // Row-reduce the (2K-1) x N power matrix over GF(q).
  std::vector<std::vector<Element>> rows(static_cast<std::size_t>(equations), std::vector<Element>(N));
  for (int e = 0; e < equations; ++e) {
    for (std::size_t j = 0; j < N; ++j) rows[static_cast<std::size_t>(e)][j] = f.pow(points[j], static_cast<std::uint64_t>(e));
  }
  std::vector<std::size_t> pivot_cols;
  std::size_t r = 0;
  for (std::size_t col = 0; col < N && r < rows.size(); ++col) {
    auto it = std::find_if(rows.begin() + static_cast<std::ptrdiff_t>(r), rows.end(),
                           [col](const auto& row) { return row[col] != 0; });
    if (it == rows.end()) continue;
    std::iter_swap(rows.begin() + static_cast<std::ptrdiff_t>(r), it);
    const Element scale = f.inv(rows[r][col]);
    for (auto& x : rows[r]) x = f.mul(x, scale);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][col] == 0) continue;
      const Element factor = rows[i][col];
      for (std::size_t j = 0; j < N; ++j) rows[i][j] ^= f.mul(factor, rows[r][j]);
    }
    pivot_cols.push_back(col);
    ++r;
  }
  std::vector<std::size_t> free_cols;
  for (std::size_t col = 0; col < N; ++col) {
    if (std::find(pivot_cols.begin(), pivot_cols.end(), col) == pivot_cols.end()) free_cols.push_back(col);
  }
  const std::size_t dim = free_cols.size();
  if (dim == 0) return std::nullopt;
  const std::uint64_t total_bits = static_cast<std::uint64_t>(dim) * static_cast<std::uint64_t>(f.m());
  constexpr std::uint64_t kBudget = std::uint64_t{1} << 24;
  const std::uint32_t mask = f.q() - 1;
  std::vector<Element> u(N);
  // Free coordinates, most significant first. A zero free coordinate is a zero
  // entry, so only nonzero digits are visited; the order stays lexicographic.
  std::vector<Element> digits(dim, 1);
  --digits[dim - 1];
  for (std::uint64_t visited = 1;; ++visited) {
    std::size_t pos = dim;
    while (pos > 0 && digits[pos - 1] == mask) digits[--pos] = 1;
    if (pos == 0) break;
    ++digits[pos - 1];
    if (visited > kBudget) {
      throw GuardError("no multiplier vector among the first 2^24 of " + std::to_string(total_bits) +
                       "-bit kernel indices");
    }
    std::fill(u.begin(), u.end(), Element{0});
    for (std::size_t i = 0; i < dim; ++i) u[free_cols[i]] = digits[i];
    for (std::size_t p = 0; p < pivot_cols.size(); ++p) {
      Element value = 0;
      for (const std::size_t fc : free_cols) value ^= f.mul(rows[p][fc], u[fc]);
      u[pivot_cols[p]] = value;
    }
    if (std::all_of(u.begin(), u.end(), [](Element x) { return x != 0; })) {
      std::vector<Element> v(N);
      std::transform(u.begin(), u.end(), v.begin(), [&f](Element x) { return f.sqrt(x); });
      return v;
    }
  }
  return std::nullopt;
}

namespace {

double log_q(double x, std::uint32_t q) { return std::log2(x) / std::log2(static_cast<double>(q)); }

void require_power_of_two(std::uint32_t q) {
  if (q < 2 || !std::has_single_bit(q)) throw DomainError("q must be a power of 2, got " + std::to_string(q));
}

}  // namespace

std::int64_t max_self_orthogonal_dimension(std::uint32_t q, std::int64_t n, std::int64_t g) {
  require_power_of_two(q);
  if (n < 1 || g < 0) throw DomainError("max_self_orthogonal_dimension needs n >= 1 and g >= 0");
  const double qd = static_cast<double>(q);
  const double bound = (static_cast<double>(n) - 1.0 - log_q(1.0 + 2.0 / qd, q) / qd) / 2.0 - static_cast<double>(g);
  return static_cast<std::int64_t>(std::floor(bound));
}

RateThresholds rho0(std::uint32_t q, std::optional<std::int64_t> n) {
  require_power_of_two(q);
  const int e = std::countr_zero(q);
  if (e % 2 != 0) throw DomainError("q = " + std::to_string(q) + " is not a perfect square");
  RateThresholds t;
  t.q = q;
  t.r = 1u << (e / 2);
  const double qd = static_cast<double>(q);
  t.middle_term = log_q(1.0 + 2.0 / qd, q) / (2.0 * qd);
  t.rho0 = 0.5 - t.middle_term - 1.0 / (static_cast<double>(t.r) - 1.0);
  t.admissible = t.rho0 > 0;
  if (n) {
    const std::int64_t r1 = static_cast<std::int64_t>(t.r) - 1;
    if (*n < 1 || *n % r1 != 0) {
      throw DomainError("length " + std::to_string(*n) + " is not a positive multiple of r - 1 = " + std::to_string(r1));
    }
    t.n = n;
    t.g = *n / r1;
    t.kmax = max_self_orthogonal_dimension(q, *n, *t.g);
  }
  return t;
}

GrsCode parse_grs(std::string_view text) {
  const auto lines = detail::content_lines(text);
  if (lines.size() != 3) throw ParseError("GRS file needs a header, a points line and a multipliers line");
  const auto head = detail::tokens(lines[0]);
  if (head.size() != 4 || head[0] != "grs") throw ParseError("expected header 'grs q=<q> N=<N> K=<K>'");
  const auto q = detail::parse_int<std::uint32_t>(detail::keyed(head[1], "q"));
  const int N = detail::parse_int<int>(detail::keyed(head[2], "N"));
  const int K = detail::parse_int<int>(detail::keyed(head[3], "K"));
  ff::FieldPtr field;
  try {
    field = ff::field_for_size(q);
  } catch (const DomainError& e) {
    throw ParseError(e.what());
  }
  auto read_line = [&](std::string_view line, const char* what) {
    std::vector<Element> out;
    for (const auto tok : detail::tokens(line)) {
      const auto value = ff::parse_hex(tok);
      if (!field->contains(value)) throw ParseError(std::string(what) + " value " + std::string(tok) + " outside GF(q)");
      out.push_back(static_cast<Element>(value));
    }
    if (static_cast<int>(out.size()) != N) {
      throw ParseError(std::string("expected ") + std::to_string(N) + " " + what + ", found " + std::to_string(out.size()));
    }
    return out;
  };
  auto points = read_line(lines[1], "points");
  auto multipliers = read_line(lines[2], "multipliers");
  try {
    return GrsCode(std::move(field), std::move(points), std::move(multipliers), K);
  } catch (const DomainError& e) {
    throw ParseError(e.what());
  }
}

std::string format_grs(const GrsCode& code) {
  std::string out = "grs q=" + std::to_string(code.field().q()) + " N=" + std::to_string(code.N()) +
                    " K=" + std::to_string(code.K()) + "\n";
  auto join = [](std::span<const Element> xs) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? " " : "") + ff::to_hex(xs[i]);
    return s + "\n";
  };
  return out + join(code.points()) + join(code.multipliers());
}

}  // namespace kisslat::outer
