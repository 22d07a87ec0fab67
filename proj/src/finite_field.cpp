#include "kisslat/finite_field.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <numeric>
#include <random>

#include "kisslat/error.hpp"
#include "text_util.hpp"

namespace kisslat::ff {

namespace {

// Remainder of a divided by b over GF(2).
std::uint32_t poly_mod(std::uint32_t a, std::uint32_t b) {
  const int db = poly_degree(b);
  for (int da = poly_degree(a); da >= db; da = poly_degree(a)) a ^= b << (da - db);
  return a;
}

Element slow_mul(std::uint32_t a, std::uint32_t b, std::uint32_t modulus, int m) {
  std::uint32_t product = 0;
  for (int i = 0; i < m; ++i) {
    if ((b >> i) & 1u) product ^= a << i;
  }
  return static_cast<Element>(poly_mod(product, modulus));
}

}  // namespace

int poly_degree(std::uint32_t poly) { return poly == 0 ? -1 : 31 - std::countl_zero(poly); }

bool is_irreducible(std::uint32_t poly) {
  const int deg = poly_degree(poly);
  if (deg < 1) return false;
  for (std::uint32_t divisor = 2; poly_degree(divisor) <= deg / 2; ++divisor) {
    if (poly_mod(poly, divisor) == 0) return false;
  }
  return true;
}

std::uint32_t default_modulus(int m) {
  static constexpr std::array<std::uint32_t, kMaxDegree + 1> kModuli = {
      0, 0x3, 0x7, 0xB, 0x13, 0x25, 0x5B, 0x83, 0x11D};
  if (m < 1 || m > kMaxDegree) throw DomainError("field degree must be in [1, 8], got " + std::to_string(m));
  return kModuli[m];
}

FieldTable::FieldTable(int m, std::optional<std::uint32_t> modulus)
    : m_(m), modulus_(modulus.value_or(default_modulus(m))) {
  if (m < 1 || m > kMaxDegree) throw DomainError("field degree must be in [1, 8], got " + std::to_string(m));
  if (poly_degree(modulus_) != m) {
    throw DomainError("modulus " + to_hex(modulus_) + " does not have degree " + std::to_string(m));
  }
  if (!is_irreducible(modulus_)) throw DomainError("modulus " + to_hex(modulus_) + " is reducible");

  const std::uint32_t size = q();
  mul_.resize(std::size_t{size} * size);
  for (std::uint32_t a = 0; a < size; ++a) {
    for (std::uint32_t b = 0; b < size; ++b) mul_[(std::size_t{a} << m_) | b] = slow_mul(a, b, modulus_, m_);
  }

  trace_.resize(size);
  for (std::uint32_t a = 0; a < size; ++a) {
    Element sum = 0;
    Element power = static_cast<Element>(a);
    for (int i = 0; i < m_; ++i) {
      sum ^= power;
      power = square(power);
    }
    if (sum > 1) throw Error("trace left the prime field; field tables are inconsistent");
    trace_[a] = static_cast<std::uint8_t>(sum);
  }

  const std::uint32_t order = size - 1;
  bool found = false;
  for (std::uint32_t g = 1; g < size && !found; ++g) {
    std::uint32_t k = 1;
    Element x = static_cast<Element>(g);
    while (x != 1) {
      x = mul(x, static_cast<Element>(g));
      ++k;
    }
    if (k == order) {
      generator_ = static_cast<Element>(g);
      found = true;
    }
  }
  if (!found) throw Error("no generator of the multiplicative group found");
}

Element FieldTable::pow(Element a, std::uint64_t e) const {
  Element result = 1;
  while (e != 0) {
    if (e & 1u) result = mul(result, a);
    a = square(a);
    e >>= 1;
  }
  return result;
}

Element FieldTable::inv(Element a) const {
  if (a == 0) throw DomainError("inverse of zero");
  return pow(a, q() - 2);
}

FieldPtr make_field(int m, std::optional<std::uint32_t> modulus) {
  return std::make_shared<const FieldTable>(m, modulus);
}

FieldPtr field_for_size(std::uint32_t q) {
  if (q < 2 || !std::has_single_bit(q) || q > (1u << kMaxDegree)) {
    throw DomainError("field size must be 2^m with 1 <= m <= 8, got " + std::to_string(q));
  }
  return make_field(std::countr_zero(q));
}

FieldPtr parse_field_spec(std::string_view text) {
  const auto lines = detail::content_lines(text);
  if (lines.size() != 1) throw ParseError("field spec must be a single line");
  const auto toks = detail::tokens(lines[0]);
  if (toks.size() != 3 || toks[0] != "field") throw ParseError("expected 'field m=<m> modulus=<hex>'");
  const int m = detail::parse_int<int>(detail::keyed(toks[1], "m"));
  const std::uint32_t modulus = parse_hex(detail::keyed(toks[2], "modulus"));
  return make_field(m, modulus);
}

std::string format_field_spec(const FieldTable& field) {
  return "field m=" + std::to_string(field.m()) + " modulus=" + to_hex(field.modulus()) + "\n";
}

SelfDualBasis::SelfDualBasis(FieldPtr field, std::vector<Element> elements, std::uint64_t seed)
    : field_(std::move(field)), elements_(std::move(elements)), seed_(seed) {
  const int m = field_->m();
  if (static_cast<int>(elements_.size()) != m) {
    throw DomainError("basis must have " + std::to_string(m) + " elements");
  }
  for (int i = 0; i < m; ++i) {
    if (!field_->contains(elements_[i])) throw DomainError("basis element outside the field");
    for (int j = 0; j < m; ++j) {
      if (field_->trace(field_->mul(elements_[i], elements_[j])) != (i == j ? 1 : 0)) {
        throw DomainError("trace Gram matrix of the basis is not the identity");
      }
    }
  }
  const std::uint32_t size = field_->q();
  constexpr std::uint32_t kUnset = ~0u;
  coords_.assign(size, kUnset);
  for (std::uint32_t c = 0; c < size; ++c) {
    const Element a = combine(c);
    if (coords_[a] != kUnset) throw DomainError("basis elements are linearly dependent");
    coords_[a] = c;
  }
}

Element SelfDualBasis::combine(std::uint32_t coords) const {
  Element a = 0;
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if ((coords >> i) & 1u) a ^= elements_[i];
  }
  return a;
}

std::vector<int> SelfDualBasis::expand_bits(Element a) const {
  std::vector<int> bits(elements_.size());
  const std::uint32_t c = expand(a);
  for (std::size_t i = 0; i < bits.size(); ++i) bits[i] = static_cast<int>((c >> i) & 1u);
  return bits;
}

namespace {

bool extend_basis(const FieldTable& f, const std::vector<Element>& order, std::vector<Element>& chosen) {
  if (static_cast<int>(chosen.size()) == f.m()) return true;
  for (const Element a : order) {
    if (f.trace(f.square(a)) != 1) continue;
    bool orthogonal = true;
    for (const Element b : chosen) {
      if (f.trace(f.mul(a, b)) != 0) {
        orthogonal = false;
        break;
      }
    }
    if (!orthogonal) continue;
    chosen.push_back(a);
    if (extend_basis(f, order, chosen)) return true;
    chosen.pop_back();
  }
  return false;
}

}  // namespace

SelfDualBasis find_self_dual_basis(FieldPtr field, std::uint64_t seed) {
  std::vector<Element> order(field->q() - 1);
  std::iota(order.begin(), order.end(), Element{1});
  if (field->m() >= 4) {
    std::mt19937_64 rng(seed);
    std::shuffle(order.begin(), order.end(), rng);
  }
  std::vector<Element> chosen;
  if (!extend_basis(*field, order, chosen)) {
    throw Error("self-dual basis search exhausted for m=" + std::to_string(field->m()));
  }
  const std::uint64_t recorded_seed = field->m() >= 4 ? seed : 0;
  return SelfDualBasis(std::move(field), std::move(chosen), recorded_seed);
}

SelfDualBasis parse_basis(std::string_view text, FieldPtr field) {
  std::vector<Element> elements;
  for (const auto line : detail::content_lines(text)) {
    for (const auto tok : detail::tokens(line)) {
      const auto value = parse_hex(tok);
      if (!field->contains(value)) throw ParseError("basis element " + std::string(tok) + " outside the field");
      elements.push_back(static_cast<Element>(value));
    }
  }
  try {
    return SelfDualBasis(std::move(field), std::move(elements));
  } catch (const DomainError& e) {
    throw ParseError(std::string("invalid basis: ") + e.what());
  }
}

std::string format_basis(const SelfDualBasis& basis) {
  std::string out;
  for (const Element a : basis.elements()) out += to_hex(a) + "\n";
  return out;
}

std::string to_hex(std::uint32_t value) {
  std::array<char, 16> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value, 16);
  return std::string(buf.data(), ptr);
}

std::uint32_t parse_hex(std::string_view token) {
  if (token.starts_with("0x") || token.starts_with("0X")) token.remove_prefix(2);
  return detail::parse_int<std::uint32_t>(token, 16);
}

}  // namespace kisslat::ff
