#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "toreq/lpoly.hpp"
#include "toreq/torsion.hpp"
#include "toreq/upoly.hpp"

namespace toreq {

/// x^b * Phi_m(x^a) with b_i = max(0, -a_i deg Phi_m); gcd(a) must be 1.
LPoly make_extended_cyclotomic(std::uint64_t m, const std::vector<std::int64_t>& a);

struct CyclotomicFactor {
  std::uint64_t m;
  unsigned multiplicity;
  friend bool operator==(const CyclotomicFactor&, const CyclotomicFactor&) = default;
};

struct KroneckerResult {
  bool cyclotomic = false;
  std::vector<CyclotomicFactor> factors;  ///< ascending m
  std::size_t monomial_exponent = 0;      ///< b in +-x^b prod Phi_m
  int sign = 1;
  UPoly witness;  ///< when not cyclotomic: what is left after removing cyclotomic factors
};

/// Decides whether P = +-x^b prod Phi_m by trial division with every Phi_m,
/// m <= 2 deg^2 + 1, whose degree fits.
KroneckerResult kronecker_test(const UPoly& p);

/// {x : x^a = zeta, ord(zeta) = m} for a primitive exponent vector a.
struct TorsionCoset {
  std::vector<std::int64_t> a;
  std::uint64_t m;
  /// "x^(a1,...,an) = zeta_m"
  std::string to_string() const;
  friend bool operator==(const TorsionCoset&, const TorsionCoset&) = default;
};

struct BoydResult {
  bool all_extended_cyclotomic = false;
  std::vector<TorsionCoset> cosets;
  std::size_t failed_index = 0;  ///< first failing factor when not all pass
};

/// Checks that each factor is +-(monomial) * (product of extended
/// cyclotomics along one direction) and collects the torsion cosets of the
/// zero set.
BoydResult boyd_check(const std::vector<LPoly>& factors);

/// Explicit torsion points on the coset: solutions of x^a = zeta_m^j with
/// extra s-torsion along the kernel of a, for s = 1, 2, ... until `count`
/// points are produced.
std::vector<TorsionPoint> sample_coset(const TorsionCoset& coset, std::size_t count);

}  // namespace toreq
