#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "toreq/lpoly.hpp"
#include "toreq/torsion.hpp"

namespace toreq {

/// The real number -valuation * log p, kept exactly as (p, valuation).
struct PadicLogValue {
  std::uint64_t p = 2;
  Rat valuation = 0;

  double value() const;
  /// "p^(e)" with e = -valuation, e.g. "5^(-1/4)" or "5^(0)".
  std::string to_string() const;

  friend PadicLogValue operator+(const PadicLogValue& a, const PadicLogValue& b);
  friend PadicLogValue operator*(const Rat& c, const PadicLogValue& a) { return {a.p, c * a.valuation}; }
  friend bool operator==(const PadicLogValue& a, const PadicLogValue& b) {
    return a.p == b.p && a.valuation == b.valuation;
  }
};

/// log |F|_p: valuation is the least v_p of a coefficient.
PadicLogValue gauss_norm_log(const LPoly& f, std::uint64_t p);

/// Exact average of log |F(sigma zeta)|_p over all conjugates, from
/// v_p(Res(Phi_N, G)) / phi(N) - v_p(scale).
PadicLogValue orbit_average_padic(const LPoly& f, const TorsionPoint& zeta, std::uint64_t p);

/// Same average expressed as the exact valuation only.
Rat orbit_average_valuation(const LPoly& f, const TorsionPoint& zeta, std::uint64_t p);

/// log |w - 1|_p for w of exact order `order` >= 2.
PadicLogValue root_of_unity_distance(std::uint64_t order, std::uint64_t p);

struct CEstimate {
  Rat gap;           ///< max over the sample of v(F(zeta^a)) - v_p-Gauss(F)
  double value = 0;  ///< gap * log p, the reported lower bound for c(F)
  TorsionPoint witness{1, {0}};
  std::int64_t residue = 1;  ///< conjugate a attaining the maximum
};

/// Empirical lower bound for c(F) over the conjugates of the sample points.
/// Points on whose orbit F vanishes are skipped; throws AllVanish when
/// every point is skipped.
CEstimate c_estimate(const LPoly& f, const std::vector<TorsionPoint>& sample, std::uint64_t p,
                     unsigned precision_max = 512);

}  // namespace toreq
