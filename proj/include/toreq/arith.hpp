#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <utility>
#include <vector>

namespace toreq {

using Int = mpz_class;
using Rat = mpq_class;

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}
inline std::uint64_t add_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  std::uint64_t s = a + b;  // a, b < m < 2^63
  return s >= m ? s - m : s;
}
inline std::uint64_t sub_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return a >= b ? a - b : a + (m - b);
}
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);
/// Inverse of a modulo m; requires gcd(a, m) = 1.
std::uint64_t inv_mod(std::uint64_t a, std::uint64_t m);
/// Reduce an arbitrary integer into [0, m).
std::uint64_t reduce_mod(const Int& x, std::uint64_t m);

/// Deterministic Miller-Rabin for all 64-bit inputs.
bool is_prime_u64(std::uint64_t n);
/// Deterministic below 2^64, Baillie-PSW style probable-prime test beyond.
bool is_prime(const Int& n);

std::int64_t gcd_i64(std::int64_t a, std::int64_t b);
/// Extended gcd: returns g >= 0 and sets x, y with a*x + b*y = g.
std::int64_t ext_gcd_i64(std::int64_t a, std::int64_t b, std::int64_t& x, std::int64_t& y);
/// Non-negative residue of a mod m (m > 0).
inline std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

using Factorization = std::vector<std::pair<std::uint64_t, unsigned>>;
/// Complete factorization of a 64-bit integer (trial division + Pollard rho).
Factorization factor_u64(std::uint64_t n);
std::uint64_t euler_phi(std::uint64_t n);
int mobius(std::uint64_t n);
std::vector<std::uint64_t> divisors(std::uint64_t n);
std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t n);
bool is_prime_power(std::uint64_t n, std::uint64_t& prime, unsigned& exponent);

/// Primes <= bound, sieved once and memoized (thread-safe).
const std::vector<std::uint32_t>& primes_up_to(std::uint32_t bound);

/// v_p(x) for x != 0.
unsigned valuation(const Int& x, std::uint64_t p);
/// v_p(x) for x != 0 (may be negative).
long valuation(const Rat& x, std::uint64_t p);

Int int_pow(std::uint64_t base, unsigned exp);
double log_abs(const Int& x);

}  // namespace toreq
