#pragma once

#include <cstdint>
#include <vector>

#include "toreq/lpoly.hpp"
#include "toreq/padic.hpp"
#include "toreq/torsion.hpp"

namespace toreq {

/// A place of Q(w_N) above p. N = p^k * m with p not dividing m; the place
/// is selected by an irreducible factor of Phi_m mod p.
struct LocalPlace {
  std::uint64_t p = 2;
  std::uint64_t n = 1;
  unsigned k = 0;
  std::uint64_t m = 1;
  std::size_t factor_index = 0;
  unsigned residue_degree = 1;    ///< f = order of p mod m
  std::uint64_t ramification = 1;  ///< e = phi(p^k)

  std::uint64_t local_degree() const { return residue_degree * ramification; }
};

/// Irreducible factors of Phi_m mod p (p not dividing m), monic, sorted by
/// coefficient vector. Each has degree ord_m(p).
const std::vector<std::vector<std::uint64_t>>& factor_cyclotomic_mod_p(std::uint64_t m, std::uint64_t p);

/// All places above p, one per factor of Phi_m mod p.
std::vector<LocalPlace> places_above(std::uint64_t p, std::uint64_t n);
LocalPlace make_place(std::uint64_t p, std::uint64_t n, std::size_t factor_index);

/// Normalized valuation (v(p) = 1) of F(zeta^a) at the place. The torsion
/// point's modulus must equal place.n; a must be coprime to N.
/// Throws VanishesAtPoint or PrecisionExhausted.
Rat local_valuation(const LPoly& f, const TorsionPoint& zeta, const LocalPlace& place, std::int64_t a,
                    unsigned precision_max = 512);

/// Valuations for several residues at once, sharing the lifted ring.
std::vector<Rat> local_valuations(const LPoly& f, const TorsionPoint& zeta, const LocalPlace& place,
                                  const std::vector<std::int64_t>& residues, unsigned precision_max = 512);

/// Average of log |F(sigma_a zeta)|_p over a in G at the given place.
PadicLogValue subgroup_average_padic(const LPoly& f, const TorsionPoint& zeta, const GaloisSubgroup& g,
                                     const LocalPlace& place, unsigned precision_max = 512);

}  // namespace toreq
