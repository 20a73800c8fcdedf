#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "toreq/lpoly.hpp"
#include "toreq/torsion.hpp"

namespace toreq {

/// Sorted set of distinct rational primes.
class PrimeSet {
 public:
  PrimeSet() = default;
  explicit PrimeSet(std::vector<std::uint64_t> primes);
  /// Comma-separated list; the empty string is the empty set.
  static PrimeSet parse(std::string_view text);

  const std::vector<std::uint64_t>& primes() const { return primes_; }
  bool contains(std::uint64_t p) const;
  bool empty() const { return primes_.empty(); }

 private:
  std::vector<std::uint64_t> primes_;
};

/// Every coefficient denominator is S-smooth.
bool s_integer_coeffs(const LPoly& p, const PrimeSet& s);

using PrimeExponents = std::map<std::uint64_t, unsigned>;

/// "2^3*5^1"; "1" for the empty factorization.
std::string format_factorization(const PrimeExponents& f);

enum class SUnitStatus { Yes, No, Zero };

struct SUnitResult {
  SUnitStatus status = SUnitStatus::No;
  Int norm;                  ///< Res(Phi_N, G), signed
  PrimeExponents factors;    ///< S-part of |norm|
  Int cofactor = 1;          ///< |norm| with the S-part removed
  std::optional<Int> witness;  ///< a prime outside S dividing the norm
  std::string reason;
};

/// Decides whether P(zeta) is an S-unit from the smoothness of its norm.
/// P must have integer coefficients. With find_witness the cofactor is trial
/// divided up to trial_bound to name a prime outside S.
SUnitResult s_unit_test(const LPoly& p, const TorsionPoint& zeta, const PrimeSet& s,
                        std::uint64_t trial_bound = 1000000, bool find_witness = true);

struct ProductFormulaResult {
  double sum = 0;
  double error_bound = 0;
  double mahler = 0;
  std::map<std::uint64_t, double> per_prime;  ///< log |P|_p for primes with nonzero contribution
};

/// m(P) + sum over p of log |P|_p.
ProductFormulaResult product_formula_check(const LPoly& p, std::uint64_t budget, std::uint64_t seed = 0);

struct ScanStrategy {
  enum Kind { All, CoprimeOnly, Random } kind = CoprimeOnly;
  std::size_t count = 0;  ///< points per N for Random

  static ScanStrategy parse(std::string_view text);
  std::string to_string() const;
};

struct SUnitHit {
  TorsionPoint zeta{1, {0}};
  PrimeExponents factors;
  int norm_sign = 1;
  std::int64_t delta = 0;
};

struct ScanReport {
  std::vector<SUnitHit> hits;  ///< delta descending, then N and u ascending
  std::int64_t max_delta = 0;
  std::map<std::int64_t, std::size_t> delta_histogram;
  std::size_t points_tested = 0;
};

/// Torsion points with N <= n_max in dimension `dims` chosen by the strategy.
std::vector<TorsionPoint> scan_points(std::size_t dims, std::int64_t n, const ScanStrategy& strategy,
                                      std::uint64_t seed);

ScanReport ih_scan(const LPoly& p, const PrimeSet& s, std::size_t dims, std::int64_t n_max,
                   const ScanStrategy& strategy, std::uint64_t seed = 0);

}  // namespace toreq
