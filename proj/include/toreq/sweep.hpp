#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "toreq/lpoly.hpp"
#include "toreq/torsion.hpp"

namespace toreq {

struct FamilySpec {
  enum Mode { DiagonalGolden, RandomPrimitive, UFixed } mode = DiagonalGolden;
  std::vector<std::int64_t> u;  ///< for UFixed
  std::uint64_t seed = 0;       ///< for RandomPrimitive

  /// "diagonal-golden", "random-primitive" or "u-fixed(1,1)".
  static FamilySpec parse(std::string_view text);
  std::string to_string() const;
};

/// diagonal-golden: u = (1, round(N/g), ..., round(N/g^(n-1))) with g the
/// positive root of x^n = x + 1 (the golden ratio for n = 2).
/// random-primitive: u uniform among vectors of order exactly N.
/// u-fixed: the given u reduced mod each N.
std::vector<TorsionPoint> generate_family(std::size_t dims, const std::vector<std::int64_t>& n_list,
                                          const FamilySpec& spec);

/// "7,11,13", "50-100", "2-64:2" (step) and combinations separated by
/// commas; with primes_only only primes are kept.
std::vector<std::int64_t> parse_n_list(std::string_view text, bool primes_only = false);

struct SweepSide {
  bool padic = true;
  std::uint64_t p = 2;

  /// "padic:7" or "arch".
  static SweepSide parse(std::string_view text);
  std::string name() const { return padic ? "padic" : "arch"; }
};

struct SweepRecord {
  SweepSide side;
  TorsionPoint zeta{1, {0}};
  std::int64_t delta = 0;
  std::uint64_t phi_n = 0;
  std::optional<Rat> avg_val, limit_val;  ///< exact valuations (p-adic side)
  double avg_float = 0, limit_float = 0;
  double err = 0;  ///< NaN for vanished records
  bool vanished = false;
  std::int64_t micros = 0;
};

struct SweepOptions {
  std::uint64_t budget = 100000;  ///< quadrature budget for the arch limit
  std::uint64_t seed = 0;
  bool timing = false;  ///< record wall-clock micros per point (else 0)
};

std::vector<SweepRecord> run_sweep(const LPoly& f, const std::vector<TorsionPoint>& family, const SweepSide& side,
                                   const SweepOptions& options = {});

std::string sweep_csv_header();
std::string sweep_csv_row(const SweepRecord& r);

struct DecayFit {
  double kappa_hat = 0;
  double intercept = 0;
  double r_squared = 0;
  std::size_t points_used = 0;
  bool significant = false;  ///< kappa_hat > 0 and r_squared >= threshold
  std::string summary() const;
};

/// Least squares of -log err on log delta over records with delta >=
/// delta_min, finite err > 0. Each distinct point counts once, so
/// duplicated records do not change the fit. InsufficientData below 5
/// points or with constant delta.
DecayFit fit_decay(const std::vector<SweepRecord>& records, std::int64_t delta_min,
                   double significance_r2 = 0.5);

}  // namespace toreq
