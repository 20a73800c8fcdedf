#include "toreq/padic.hpp"

#include <cmath>

#include "toreq/error.hpp"
#include "toreq/local_field.hpp"
#include "toreq/orbit.hpp"
#include "toreq/resultant.hpp"

namespace toreq {

double PadicLogValue::value() const {
  return -valuation.get_d() * std::log(static_cast<double>(p));
}

std::string PadicLogValue::to_string() const {
  Rat e = -valuation;
  std::string s = e.get_num().get_str();
  if (e.get_den() != 1) s += "/" + e.get_den().get_str();
  return std::to_string(p) + "^(" + s + ")";
}

PadicLogValue operator+(const PadicLogValue& a, const PadicLogValue& b) {
  if (a.p != b.p) throw Error(ErrorKind::InvalidArgument, "cannot add p-adic values for different primes");
  return {a.p, a.valuation + b.valuation};
}

namespace {

void require_prime(std::uint64_t p) {
  if (!is_prime_u64(p)) throw Error(ErrorKind::InvalidArgument, std::to_string(p) + " is not prime");
}

}  // namespace

PadicLogValue gauss_norm_log(const LPoly& f, std::uint64_t p) {
  require_prime(p);
  if (f.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "Gauss norm of the zero polynomial");
  bool first = true;
  long best = 0;
  for (const auto& [e, c] : f.terms()) {
    long v = valuation(c, p);
    if (first || v < best) best = v;
    first = false;
  }
  return {p, Rat(best)};
}

Rat orbit_average_valuation(const LPoly& f, const TorsionPoint& zeta, std::uint64_t p) {
  require_prime(p);
  auto [g, scale] = specialize_to_orbit(f, zeta);
  const auto n = static_cast<std::uint64_t>(zeta.modulus());
  if (g.is_zero()) throw Error(ErrorKind::ZeroSpecialization, "F specializes to 0 at " + zeta.to_string());
  Int norm = cyclotomic_norm(n, g);
  if (norm == 0) throw Error(ErrorKind::VanishesOnOrbit, "F vanishes on the orbit of " + zeta.to_string());
  Rat v(Int(valuation(norm, p)), Int(static_cast<unsigned long>(euler_phi(n))));
  v.canonicalize();
  return v - Rat(Int(valuation(scale, p)));
}

PadicLogValue orbit_average_padic(const LPoly& f, const TorsionPoint& zeta, std::uint64_t p) {
  return {p, orbit_average_valuation(f, zeta, p)};
}

PadicLogValue root_of_unity_distance(std::uint64_t order, std::uint64_t p) {
  require_prime(p);
  if (order < 2) throw Error(ErrorKind::DegenerateDistance, "root of unity of order 1 has distance 0 from 1");
  std::uint64_t q;
  unsigned k;
  if (is_prime_power(order, q, k) && q == p) {
    Rat v(1, static_cast<unsigned long>(euler_phi(order)));
    v.canonicalize();
    return {p, v};
  }
  return {p, Rat(0)};
}

CEstimate c_estimate(const LPoly& f, const std::vector<TorsionPoint>& sample, std::uint64_t p,
                     unsigned precision_max) {
  const Rat gauss = gauss_norm_log(f, p).valuation;
  std::optional<CEstimate> best;
  for (const auto& zeta : sample) {
    Rat avg;
    try {
      avg = orbit_average_valuation(f, zeta, p);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::VanishesOnOrbit || e.kind() == ErrorKind::ZeroSpecialization) continue;
      throw;
    }
    CEstimate cand;
    cand.witness = zeta;
    cand.residue = zeta.modulus() == 1 ? 0 : 1;
    cand.gap = 0;
    if (avg != gauss) {
      // Every conjugate has valuation >= gauss, so the average only equals
      // gauss when all of them do.
      LocalPlace place = make_place(p, static_cast<std::uint64_t>(zeta.modulus()), 0);
      auto units = units_mod(zeta.modulus());
      auto vals = local_valuations(f, zeta, place, units, precision_max);
      bool have = false;
      for (std::size_t i = 0; i < vals.size(); ++i) {
        Rat gap = vals[i] - gauss;
        if (!have || gap > cand.gap) {
          cand.gap = gap;
          cand.residue = units[i];
          have = true;
        }
      }
    }
    if (!best || cand.gap > best->gap) best = cand;
  }
  if (!best) throw Error(ErrorKind::AllVanish, "F vanishes on every sampled orbit");
  best->value = best->gap.get_d() * std::log(static_cast<double>(p));
  return *best;
}

}  // namespace toreq
