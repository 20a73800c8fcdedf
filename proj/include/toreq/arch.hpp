#pragma once

#include <cstdint>
#include <string>

#include "toreq/lpoly.hpp"
#include "toreq/torsion.hpp"
#include "toreq/upoly.hpp"

namespace toreq {

enum class MahlerMethod { UnivariateRoots, Quadrature };
std::string to_string(MahlerMethod m);

struct MahlerResult {
  double value = 0;
  double error_bound = 0;
  MahlerMethod method = MahlerMethod::UnivariateRoots;
};

/// (1/phi(N)) sum over a coprime to N of log |P(zeta^a)|, with compensated
/// summation. Vanishing is decided exactly beforehand (VanishesOnOrbit);
/// NumericalUnderflow if a nonzero value is below 1e-300 in magnitude.
double orbit_average_arch(const LPoly& p, const TorsionPoint& zeta);

/// m(P) = log|lc| + sum log+ |alpha| with roots from a simultaneous
/// (Aberth) iteration and certified inclusion discs. error_bound <= 1e-9
/// or RootFindingFailure is thrown.
MahlerResult mahler_univariate(const UPoly& p);

/// Torus integral of log|P(e(x))| by a randomized-shift rank-1 lattice rule
/// using about `budget` evaluations. error_bound is 3 standard errors over
/// the 16 shifts plus a rounding floor.
MahlerResult mahler_multivariate(const LPoly& p, std::uint64_t budget, std::uint64_t seed = 0);

/// m(P) for any nonzero P: exact-univariate route for one variable (after
/// removing monomial factors and content), quadrature otherwise.
MahlerResult mahler(const LPoly& p, std::uint64_t budget, std::uint64_t seed = 0);

struct ToralCertificate {
  bool certified = false;
  double lower_bound = 0;  ///< certified min |P| over the torus when certified
  std::size_t cells = 0;   ///< leaf cells examined
};

/// Tries to prove that P has no zero on the unit torus by subdividing
/// [0,1)^n and enclosing P(e(x)) per cell. Never certifies a polynomial
/// with a torus zero.
ToralCertificate certify_toral_emptiness(const LPoly& p, unsigned depth);

}  // namespace toreq
