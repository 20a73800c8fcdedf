#include "toreq/orbit.hpp"

#include "toreq/error.hpp"

namespace toreq {

OrbitSpecialization specialize_to_orbit(const LPoly& f, const TorsionPoint& zeta) {
  if (f.nvars() != zeta.dim())
    throw Error(ErrorKind::DimensionMismatch, "polynomial has " + std::to_string(f.nvars()) +
                                                  " variables but the torsion point has " +
                                                  std::to_string(zeta.dim()) + " coordinates");
  const std::int64_t n = zeta.modulus();
  Int scale = 1;
  for (const auto& [e, c] : f.terms()) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), c.get_den_mpz_t());
  std::vector<Int> coeffs(static_cast<std::size_t>(n));
  const auto& u = zeta.exponents();
  for (const auto& [e, c] : f.terms()) {
    __int128 t = 0;
    for (std::size_t i = 0; i < e.size(); ++i) t = (t + static_cast<__int128>(e[i]) * u[i]) % n;
    std::int64_t r = mod_floor(static_cast<std::int64_t>(t), n);
    coeffs[static_cast<std::size_t>(r)] += c.get_num() * (scale / c.get_den());
  }
  return {UPoly(std::move(coeffs)), scale};
}

}  // namespace toreq
