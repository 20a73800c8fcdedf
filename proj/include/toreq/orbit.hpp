#pragma once

#include "toreq/lpoly.hpp"
#include "toreq/torsion.hpp"
#include "toreq/upoly.hpp"

namespace toreq {

/// G with G(w^a) = scale * F(zeta^a) for every a, where w = exp(2 pi i/N).
/// G has degree < N (exponents reduced mod N) and integer coefficients;
/// scale is the positive lcm of the coefficient denominators of F.
struct OrbitSpecialization {
  UPoly g;
  Int scale;
};

OrbitSpecialization specialize_to_orbit(const LPoly& f, const TorsionPoint& zeta);

}  // namespace toreq
