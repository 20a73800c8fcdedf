#include "toreq/resultant.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numeric>

#include "toreq/arith.hpp"
#include "toreq/cyclotomic.hpp"
#include "toreq/error.hpp"

namespace toreq {
namespace {

constexpr std::uint64_t kPrimeCeiling = (1ULL << 62);

// Primes below 2^62 in descending order, extended on demand.
std::uint64_t crt_prime(std::size_t index) {
  static std::mutex mutex;
  static std::vector<std::uint64_t> primes;
  std::lock_guard<std::mutex> lock(mutex);
  std::uint64_t candidate = primes.empty() ? kPrimeCeiling - 1 : primes.back() - 2;
  while (primes.size() <= index) {
    while (!is_prime_u64(candidate)) candidate -= 2;
    primes.push_back(candidate);
    candidate -= 2;
  }
  return primes[index];
}

struct RootedPrime {
  std::uint64_t q;
  std::uint64_t root;  // an element of exact order N mod q
};

// Primes q = 1 (mod N) below 2^62, descending, each with an N-th root of unity.
RootedPrime cyclotomic_prime(std::uint64_t n, std::size_t index) {
  static std::mutex mutex;
  static std::map<std::uint64_t, std::vector<RootedPrime>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& list = cache[n];
  if (list.size() > index) return list[index];
  const auto n_primes = factor_u64(n);
  std::uint64_t k = list.empty() ? (kPrimeCeiling - 2) / n : (list.back().q - 1) / n - 1;
  while (list.size() <= index) {
    std::uint64_t q = k * n + 1;
    --k;
    if (!is_prime_u64(q)) continue;
    for (std::uint64_t x = 2;; ++x) {
      std::uint64_t r = pow_mod(x, (q - 1) / n, q);
      bool primitive = true;
      for (auto [l, e] : n_primes) {
        if (pow_mod(r, n / l, q) == 1) {
          primitive = false;
          break;
        }
      }
      if (primitive) {
        list.push_back({q, r});
        break;
      }
    }
  }
  return list[index];
}

std::vector<std::uint64_t> reduce(const UPoly& f, std::uint64_t q) {
  std::vector<std::uint64_t> out(f.coeffs().size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = reduce_mod(f.coeffs()[i], q);
  return out;
}

void trim(std::vector<std::uint64_t>& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

// In-place f <- f mod g over F_q (g monic after scaling by inv lead).
void poly_rem(std::vector<std::uint64_t>& f, const std::vector<std::uint64_t>& g, std::uint64_t q) {
  const std::size_t dg = g.size() - 1;
  const std::uint64_t inv = inv_mod(g.back(), q);
  while (f.size() > dg) {
    const std::size_t shift = f.size() - 1 - dg;
    const std::uint64_t c = mul_mod(f.back(), inv, q);
    if (c != 0) {
      for (std::size_t j = 0; j <= dg; ++j) f[shift + j] = sub_mod(f[shift + j], mul_mod(c, g[j], q), q);
    }
    f.pop_back();
    trim(f);
    if (f.empty()) break;
  }
}

class CrtAccumulator {
 public:
  void add(std::uint64_t residue, std::uint64_t q) {
    Int qq = Int(static_cast<unsigned long>(q));
    if (modulus_ == 1) {
      value_ = Int(static_cast<unsigned long>(residue));
      modulus_ = qq;
      return;
    }
    std::uint64_t current = reduce_mod(value_, q);
    std::uint64_t m_mod = reduce_mod(modulus_, q);
    std::uint64_t t = mul_mod(sub_mod(residue, current, q), inv_mod(m_mod, q), q);
    value_ += modulus_ * Int(static_cast<unsigned long>(t));
    modulus_ *= qq;
  }
  double log2_modulus() const { return log_abs(modulus_) / std::log(2.0); }
  Int symmetric() const {
    Int half = modulus_ / 2;
    return value_ > half ? Int(value_ - modulus_) : value_;
  }

 private:
  Int value_ = 0;
  Int modulus_ = 1;
};

}  // namespace

std::uint64_t resultant_mod(std::vector<std::uint64_t> f, std::vector<std::uint64_t> g, std::uint64_t q) {
  trim(f);
  trim(g);
  if (f.empty() || g.empty()) return 0;
  std::uint64_t res = 1;
  for (;;) {
    const std::size_t m = f.size() - 1;
    const std::size_t n = g.size() - 1;
    if (m == 0) return mul_mod(res, pow_mod(f[0], n, q), q);
    if (n == 0) return mul_mod(res, pow_mod(g[0], m, q), q);
    std::vector<std::uint64_t> r = f;
    poly_rem(r, g, q);
    if (r.empty()) return 0;
    const std::size_t k = r.size() - 1;
    // Res(f,g) = (-1)^{mn} lc(g)^{m-k} Res(g, f mod g)
    res = mul_mod(res, pow_mod(g.back(), m - k, q), q);
    if ((m & 1) && (n & 1)) res = res == 0 ? 0 : q - res;
    f = std::move(g);
    g = std::move(r);
  }
}

Int resultant(const UPoly& f, const UPoly& g) {
  if (f.is_zero() || g.is_zero()) return 0;
  const long m = f.degree();
  const long n = g.degree();
  if (m == 0) {
    Int out;
    mpz_pow_ui(out.get_mpz_t(), f.lead().get_mpz_t(), static_cast<unsigned long>(n));
    return out;
  }
  if (n == 0) {
    Int out;
    mpz_pow_ui(out.get_mpz_t(), g.lead().get_mpz_t(), static_cast<unsigned long>(m));
    return out;
  }
  const double bound_bits = static_cast<double>(n) * f.log2_l2_norm() +
                            static_cast<double>(m) * g.log2_l2_norm();
  const double target = bound_bits + 2.0 + 1e-9 * std::fabs(bound_bits);
  CrtAccumulator crt;
  for (std::size_t i = 0; crt.log2_modulus() <= target; ++i) {
    std::uint64_t q = crt_prime(i);
    if (reduce_mod(f.lead(), q) == 0 || reduce_mod(g.lead(), q) == 0) continue;
    crt.add(resultant_mod(reduce(f, q), reduce(g, q), q), q);
  }
  return crt.symmetric();
}

namespace {

struct SparseTerms {
  std::vector<std::uint64_t> exponents;
  std::vector<const Int*> coeffs;
};

SparseTerms sparse_view(const UPoly& g, std::uint64_t n) {
  SparseTerms t;
  for (std::size_t i = 0; i < g.coeffs().size(); ++i) {
    if (g.coeffs()[i] == 0) continue;
    t.exponents.push_back(i % n);
    t.coeffs.push_back(&g.coeffs()[i]);
  }
  return t;
}

std::uint64_t norm_mod(const SparseTerms& t, std::uint64_t n, const RootedPrime& rp,
                       std::vector<std::uint64_t>& powers, std::vector<std::uint64_t>& coeffs) {
  const std::uint64_t q = rp.q;
  powers.resize(n);
  powers[0] = 1;
  for (std::uint64_t i = 1; i < n; ++i) powers[i] = mul_mod(powers[i - 1], rp.root, q);
  coeffs.resize(t.coeffs.size());
  for (std::size_t j = 0; j < coeffs.size(); ++j) coeffs[j] = reduce_mod(*t.coeffs[j], q);
  std::uint64_t acc = 1;
  for (std::uint64_t a = 1; a <= n; ++a) {
    if (std::gcd(a, n) != 1) continue;
    std::uint64_t value = 0;
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
      std::uint64_t idx = static_cast<std::uint64_t>((static_cast<unsigned __int128>(t.exponents[j]) * a) % n);
      value = add_mod(value, mul_mod(coeffs[j], powers[idx], q), q);
    }
    acc = mul_mod(acc, value, q);
    if (acc == 0) break;
  }
  return acc;
}

double norm_bound_bits(std::uint64_t n, const UPoly& g) {
  const double phi = static_cast<double>(euler_phi(n));
  const double l1 = phi * g.log2_l1_norm();
  const double hadamard = static_cast<double>(g.degree()) * cyclotomic(n).log2_l2_norm() + phi * g.log2_l2_norm();
  return std::min(l1, hadamard);
}

}  // namespace

Int cyclotomic_norm(std::uint64_t n, const UPoly& g) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "cyclotomic_norm: N must be positive");
  if (g.is_zero()) return 0;
  if (g.degree() == 0) {
    Int out;
    mpz_pow_ui(out.get_mpz_t(), g.lead().get_mpz_t(), static_cast<unsigned long>(euler_phi(n)));
    return out;
  }
  const SparseTerms terms = sparse_view(g, n);
  const double bits = norm_bound_bits(n, g);
  const double target = bits + 2.0 + 1e-9 * std::fabs(bits);
  CrtAccumulator crt;
  std::vector<std::uint64_t> powers, coeffs;
  for (std::size_t i = 0; crt.log2_modulus() <= target; ++i) {
    RootedPrime rp = cyclotomic_prime(n, i);
    crt.add(norm_mod(terms, n, rp, powers, coeffs), rp.q);
  }
  return crt.symmetric();
}

bool vanishes_on_cyclotomic(std::uint64_t n, const UPoly& g) {
  if (g.is_zero()) return true;
  if (g.degree() == 0) return false;
  const SparseTerms terms = sparse_view(g, n);
  const double bits = norm_bound_bits(n, g);
  const double target = bits + 2.0 + 1e-9 * std::fabs(bits);
  double covered = 0.0;
  std::vector<std::uint64_t> powers, coeffs;
  for (std::size_t i = 0; covered <= target; ++i) {
    RootedPrime rp = cyclotomic_prime(n, i);
    if (norm_mod(terms, n, rp, powers, coeffs) != 0) return false;
    covered += std::log2(static_cast<double>(rp.q));
  }
  return true;
}

}  // namespace toreq
