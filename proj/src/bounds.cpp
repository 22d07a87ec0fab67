#include "kisslat/bounds.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "kisslat/error.hpp"
#include "kisslat/outer_codes.hpp"

namespace kisslat::bounds {

namespace {

void require_s(int s) {
  if (s < 2 || s > 30) throw DomainError("s must be in [2, 30], got " + std::to_string(s));
}

// E_s on the closed interval, used by the root finder.
double E_closed(int s, double delta) {
  const double two_s = std::ldexp(1.0, s);
  const double four_s = std::ldexp(1.0, 2 * s);
  return entropy(delta) - 2.0 * s / (two_s - 1.0) - std::log2(four_s / (four_s - 1.0));
}

// Root of E_s between lo and hi, where the signs differ.
double bisect(int s, double lo, double hi) {
  double f_lo = E_closed(s, lo);
  for (int it = 0; it < 200 && std::fabs(hi - lo) > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = E_closed(s, mid);
    if ((f_mid < 0) == (f_lo < 0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double entropy(double delta) {
  if (!(delta >= 0.0 && delta <= 1.0)) throw DomainError("entropy argument must lie in [0, 1]");
  if (delta == 0.0 || delta == 1.0) return 0.0;
  return -delta * std::log2(delta) - (1.0 - delta) * std::log2(1.0 - delta);
}

double E(int s, double delta) {
  require_s(s);
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("delta must lie in (0, 1)");
  return E_closed(s, delta);
}

Zeros zeros(int s) {
  require_s(s);
  if (E(s, 0.5) <= 0) throw DomainError("E_" + std::to_string(s) + "(1/2) <= 0: no sign change, no zeros");
  return Zeros{bisect(s, 0.0, 0.5), bisect(s, 1.0, 0.5)};
}

double kissing_exponent_constant(double slack) { return (1.0 / 7.0 - std::log2(64.0 / 63.0) - slack) / 64.0; }

Delta0 delta0() {
  Delta0 d;
  d.value = 6.0 / 7.0 - outer::rho0(64).rho0;
  d.offset = d.value - 0.5;
  d.magnitude = std::fabs(d.offset);
  d.sign = d.offset > 0 ? 1 : (d.offset < 0 ? -1 : 0);
  return d;
}

DrinfeldParams drinfeld_params(int s, int k) {
  require_s(s);
  if (k < 2) throw DomainError("curve level k must be at least 2");
  if (k % 2 != 0) throw DomainError("genus formula is given only for even k = 2m; k = " + std::to_string(k));
  if (s * k > 62) throw DomainError("s*k > 62 exceeds the exact 64-bit range");
  DrinfeldParams p;
  p.s = s;
  p.k = k;
  p.m = k / 2;
  p.q = std::uint64_t{1} << (2 * s);
  const std::uint64_t base = (std::uint64_t{1} << (p.m * s)) - 1;
  const std::uint64_t num = base * base;  // < 2^(sk) <= 2^62
  const std::uint64_t den = p.q - 1;
  const std::uint64_t g = std::gcd(num, den);
  p.genus_numerator = num / g;
  p.genus_denominator = den / g;
  p.genus_integral = p.genus_denominator == 1;
  p.point_bound = std::uint64_t{1} << (s * k);
  // 2^(sk) >= (q - 1) * num/den  <=>  2^(sk) * den' >= (q - 1) * num'
  const auto lhs = static_cast<unsigned __int128>(p.point_bound) * p.genus_denominator;
  const auto rhs = static_cast<unsigned __int128>(den) * p.genus_numerator;
  p.ratio_check = lhs >= rhs;
  return p;
}

std::vector<ParamRow> param_table(int kmax) {
  if (kmax < 1 || kmax > 12) throw DomainError("kmax must be in [1, 12]");
  const double rho = outer::rho0(64).rho0;
  const double d0 = delta0().value;
  const double c = kissing_exponent_constant();
  std::vector<ParamRow> rows;
  for (int k = 1; k <= kmax; ++k) {
    ParamRow r;
    r.k = k;
    r.K = 3 * k - 1;
    r.N = std::uint64_t{1} << (3 * k);
    if (k >= 2 && k % 2 == 0) r.curve = drinfeld_params(3, k);
    const double N = static_cast<double>(r.N);
    r.target_dimension = static_cast<std::int64_t>(std::floor(rho * N));
    r.target_distance = static_cast<std::int64_t>(std::floor(d0 * N));
    r.predicted_log2_Ad = c * N;
    rows.push_back(r);
  }
  return rows;
}

std::string param_table_csv(const std::vector<ParamRow>& rows) {
  std::ostringstream out;
  out << "k,K,N,genus,genus_integral,point_bound,target_dimension,target_distance,predicted_log2_Ad\n";
  out.precision(12);
  for (const auto& r : rows) {
    out << r.k << ',' << r.K << ',' << r.N << ',';
    if (r.curve) {
      out << r.curve->genus_numerator;
      if (!r.curve->genus_integral) out << '/' << r.curve->genus_denominator;
      out << ',' << (r.curve->genus_integral ? "true" : "false") << ',' << r.curve->point_bound;
    } else {
      out << ",,";
    }
    out << ',' << r.target_dimension << ',' << r.target_distance << ',' << r.predicted_log2_Ad << '\n';
  }
  return out.str();
}

std::map<std::string, double> constants() {
  const auto rates = outer::rho0(64);
  const auto d0 = delta0();
  const auto z = zeros(3);
  const double e_half = E(3, 0.5);
  const double e_d0 = E(3, d0.value);
  return {
      {"E3_half", e_half},
      {"E3_half_over_64", e_half / 64.0},
      {"kissing_exponent_constant", kissing_exponent_constant(1e-6)},
      {"kissing_exponent_constant_slack_1e-7", kissing_exponent_constant(1e-7)},
      {"rho0_q64", rates.rho0},
      {"rho0_q64_middle_term", rates.middle_term},
      {"delta0", d0.value},
      {"delta0_offset", d0.offset},
      {"delta0_offset_magnitude", d0.magnitude},
      {"delta0_offset_sign", static_cast<double>(d0.sign)},
      {"delta0_offset_sign_printed", -1.0},
      {"E3_delta0", e_d0},
      {"E3_budget", e_half - e_d0},
      {"E3_zero_delta1", z.delta1},
      {"E3_zero_delta2", z.delta2},
      {"c0_suggested", 0.001},
  };
}

}  // namespace kisslat::bounds
