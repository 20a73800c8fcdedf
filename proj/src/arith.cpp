#include "toreq/arith.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>

#include "toreq/error.hpp"

namespace toreq {

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t m) {
  __int128 t = 0, new_t = 1;
  __int128 r = m, new_r = a % m;
  while (new_r != 0) {
    __int128 q = r / new_r;
    __int128 tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (r != 1) throw Error(ErrorKind::InvalidArgument, "inv_mod: not invertible");
  if (t < 0) t += m;
  return static_cast<std::uint64_t>(t);
}

std::uint64_t reduce_mod(const Int& x, std::uint64_t m) {
  Int r;
  Int mm;
  mpz_import(mm.get_mpz_t(), 1, -1, sizeof(m), 0, 0, &m);
  mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), mm.get_mpz_t());
  std::uint64_t out = 0;
  mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, r.get_mpz_t());
  return out;
}

namespace {

bool miller_rabin_witness(std::uint64_t n, std::uint64_t a, std::uint64_t d, unsigned s) {
  std::uint64_t x = pow_mod(a, d, n);
  if (x == 1 || x == n - 1) return false;
  for (unsigned r = 1; r < s; ++r) {
    x = mul_mod(x, x, n);
    if (x == n - 1) return false;
  }
  return true;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // This base set is deterministic for n < 2^64.
  for (std::uint64_t a : {2ULL, 325ULL, 9375ULL, 28178ULL, 450775ULL, 9780504ULL, 1795265022ULL}) {
    std::uint64_t b = a % n;
    if (b == 0) continue;
    if (miller_rabin_witness(n, b, d, s)) return false;
  }
  return true;
}

bool is_prime(const Int& n) {
  if (n < 2) return false;
  if (mpz_sizeinbase(n.get_mpz_t(), 2) <= 64) {
    std::uint64_t v = 0;
    mpz_export(&v, nullptr, -1, sizeof(v), 0, 0, n.get_mpz_t());
    return is_prime_u64(v);
  }
  return mpz_probab_prime_p(n.get_mpz_t(), 30) > 0;
}

std::int64_t gcd_i64(std::int64_t a, std::int64_t b) {
  return std::gcd(a, b);
}

std::int64_t ext_gcd_i64(std::int64_t a, std::int64_t b, std::int64_t& x, std::int64_t& y) {
  std::int64_t old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    std::int64_t q = old_r / r;
    std::int64_t tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  x = old_s;
  y = old_t;
  return old_r;
}

namespace {

std::uint64_t pollard_brent(std::uint64_t n) {
  if (n % 2 == 0) return 2;
  for (std::uint64_t c = 1;; ++c) {
    std::uint64_t y = 2, x = 2, g = 1, q = 1, ys = 2;
    std::uint64_t r = 1;
    const std::uint64_t m = 128;
    auto f = [&](std::uint64_t v) { return add_mod(mul_mod(v, v, n), c, n); };
    do {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = f(y);
      std::uint64_t k = 0;
      do {
        ys = y;
        for (std::uint64_t i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = mul_mod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        k += m;
      } while (k < r && g == 1);
      r <<= 1;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_into(std::uint64_t n, std::vector<std::uint64_t>& out) {
  if (n == 1) return;
  if (is_prime_u64(n)) {
    out.push_back(n);
    return;
  }
  std::uint64_t d = pollard_brent(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace

Factorization factor_u64(std::uint64_t n) {
  Factorization result;
  if (n <= 1) return result;
  std::vector<std::uint64_t> primes;
  for (std::uint64_t p = 2; p < 1000 && p * p <= n; ++p) {
    while (n % p == 0) {
      primes.push_back(p);
      n /= p;
    }
  }
  factor_into(n, primes);
  std::sort(primes.begin(), primes.end());
  for (std::uint64_t p : primes) {
    if (!result.empty() && result.back().first == p) {
      ++result.back().second;
    } else {
      result.emplace_back(p, 1);
    }
  }
  return result;
}

std::uint64_t euler_phi(std::uint64_t n) {
  std::uint64_t result = n;
  for (auto [p, e] : factor_u64(n)) result = result / p * (p - 1);
  return result;
}

int mobius(std::uint64_t n) {
  int sign = 1;
  for (auto [p, e] : factor_u64(n)) {
    if (e > 1) return 0;
    sign = -sign;
  }
  return sign;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out{1};
  for (auto [p, e] : factor_u64(n)) {
    std::size_t size = out.size();
    std::uint64_t pk = 1;
    for (unsigned i = 0; i < e; ++i) {
      pk *= p;
      for (std::size_t j = 0; j < size; ++j) out.push_back(out[j] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t n) {
  if (n == 1) return 1;
  if (std::gcd(a % n, n) != 1)
    throw Error(ErrorKind::InvalidArgument, "multiplicative_order: not a unit");
  std::uint64_t order = euler_phi(n);
  for (auto [p, e] : factor_u64(order)) {
    for (unsigned i = 0; i < e && order % p == 0; ++i) {
      if (pow_mod(a, order / p, n) == 1) {
        order /= p;
      } else {
        break;
      }
    }
  }
  return order;
}

bool is_prime_power(std::uint64_t n, std::uint64_t& prime, unsigned& exponent) {
  auto f = factor_u64(n);
  if (f.size() != 1) return false;
  prime = f[0].first;
  exponent = f[0].second;
  return true;
}

const std::vector<std::uint32_t>& primes_up_to(std::uint32_t bound) {
  static std::mutex mutex;
  static std::map<std::uint32_t, std::unique_ptr<std::vector<std::uint32_t>>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[bound];
  if (!slot) {
    slot = std::make_unique<std::vector<std::uint32_t>>();
    std::vector<bool> composite(static_cast<std::size_t>(bound) + 1, false);
    for (std::uint64_t i = 2; i <= bound; ++i) {
      if (composite[i]) continue;
      slot->push_back(static_cast<std::uint32_t>(i));
      for (std::uint64_t j = i * i; j <= bound; j += i) composite[j] = true;
    }
  }
  return *slot;
}

unsigned valuation(const Int& x, std::uint64_t p) {
  if (x == 0) throw Error(ErrorKind::InvalidArgument, "valuation of zero");
  Int pp = int_pow(p, 1);
  Int rest;
  return static_cast<unsigned>(mpz_remove(rest.get_mpz_t(), x.get_mpz_t(), pp.get_mpz_t()));
}

long valuation(const Rat& x, std::uint64_t p) {
  if (x == 0) throw Error(ErrorKind::InvalidArgument, "valuation of zero");
  return static_cast<long>(valuation(Int(x.get_num()), p)) -
         static_cast<long>(valuation(Int(x.get_den()), p));
}

Int int_pow(std::uint64_t base, unsigned exp) {
  Int b;
  mpz_import(b.get_mpz_t(), 1, -1, sizeof(base), 0, 0, &base);
  Int out;
  mpz_pow_ui(out.get_mpz_t(), b.get_mpz_t(), exp);
  return out;
}

double log_abs(const Int& x) {
  if (x == 0) return -HUGE_VAL;
  long exp = 0;
  double mant = mpz_get_d_2exp(&exp, x.get_mpz_t());
  return std::log(std::fabs(mant)) + static_cast<double>(exp) * std::log(2.0);
}

}  // namespace toreq
