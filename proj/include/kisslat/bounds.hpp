#pragma once

// Closed-form quantities behind the exponential kissing-number bound.
// All logarithms are binary.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace kisslat::bounds {

// -d log d - (1-d) log(1-d), 0 at the endpoints. DomainError outside [0, 1].
double entropy(double delta);

// E_s(delta) = H(delta) - 2s/(2^s - 1) - log(2^(2s) / (2^(2s) - 1)); s >= 2, 0 < delta < 1.
double E(int s, double delta);

struct Zeros {
  double delta1 = 0;
  double delta2 = 0;
};

// Bisection to 1e-12 on (0, 1/2] and [1/2, 1). DomainError when E(s, 1/2) <= 0.
Zeros zeros(int s);

// (1/7 - log(64/63) - slack)/64; the default slack is 1e-6.
double kissing_exponent_constant(double slack = 1e-6);

struct Delta0 {
  double value = 0;      // 6/7 - rho0(64)
  double offset = 0;     // value - 1/2
  double magnitude = 0;  // |offset|
  int sign = 0;          // sign of offset
};

Delta0 delta0();

/// Genus/point-count parameters of the curve tower at level k = 2m over
/// GF(2^(2s)): g_k = (2^(ms) - 1)^2 / (2^(2s) - 1) kept as a reduced
/// fraction, the point bound 2^(sk), and the exact check
/// 2^(sk) >= (2^(2s) - 1) g_k.
struct DrinfeldParams {
  int s = 0;
  int k = 0;
  int m = 0;
  std::uint64_t q = 0;  // 2^(2s)
  std::uint64_t genus_numerator = 0;
  std::uint64_t genus_denominator = 1;
  bool genus_integral = false;
  std::uint64_t point_bound = 0;
  bool ratio_check = false;
};

// DomainError for s < 2, k < 2, odd k (genus formula only given for even
// k), or s*k > 62.
DrinfeldParams drinfeld_params(int s, int k);

struct ParamRow {
  int k = 0;
  int K = 0;             // 3k - 1
  std::uint64_t N = 0;   // 8^k = 2^(K+1)
  std::optional<DrinfeldParams> curve;  // s = 3; absent for odd k
  std::int64_t target_dimension = 0;    // floor(rho0 * N)
  std::int64_t target_distance = 0;     // floor(delta0 * N)
  double predicted_log2_Ad = 0;         // kissing_exponent_constant() * N
};

// Planning rows for k = 1..kmax (kmax <= 12).
std::vector<ParamRow> param_table(int kmax);
std::string param_table_csv(const std::vector<ParamRow>& rows);

// Every constant of the bound calculation, keyed by name.
std::map<std::string, double> constants();

}  // namespace kisslat::bounds
