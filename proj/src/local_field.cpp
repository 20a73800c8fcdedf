#include "toreq/local_field.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <random>
#include <tuple>

#include "toreq/cyclotomic.hpp"
#include "toreq/error.hpp"
#include "toreq/orbit.hpp"
#include "toreq/resultant.hpp"

namespace toreq {

namespace {

using Fp = std::vector<std::uint64_t>;  // coefficients low -> high

void trim(Fp& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Fp fp_sub(Fp a, const Fp& b, std::uint64_t p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = sub_mod(a[i], b[i], p);
  trim(a);
  return a;
}

Fp fp_add(Fp a, const Fp& b, std::uint64_t p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = add_mod(a[i], b[i], p);
  trim(a);
  return a;
}

Fp fp_mul(const Fp& a, const Fp& b, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Fp r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = add_mod(r[i + j], mul_mod(a[i], b[j], p), p);
  }
  trim(r);
  return r;
}

// a = q*b + r with deg r < deg b; b nonzero.
void fp_divmod(Fp a, const Fp& b, std::uint64_t p, Fp* q, Fp* r) {
  const std::size_t db = b.size() - 1;
  const std::uint64_t inv = inv_mod(b.back(), p);
  Fp quot(a.size() >= b.size() ? a.size() - db : 0, 0);
  for (std::size_t i = a.size(); i-- > db;) {
    if (a[i] == 0) continue;
    std::uint64_t c = mul_mod(a[i], inv, p);
    quot[i - db] = c;
    for (std::size_t j = 0; j <= db; ++j) a[i - db + j] = sub_mod(a[i - db + j], mul_mod(c, b[j], p), p);
  }
  trim(a);
  trim(quot);
  if (q) *q = std::move(quot);
  if (r) *r = std::move(a);
}

Fp fp_mod(const Fp& a, const Fp& b, std::uint64_t p) {
  Fp r;
  fp_divmod(a, b, p, nullptr, &r);
  return r;
}

Fp fp_monic(Fp a, std::uint64_t p) {
  if (a.empty()) return a;
  std::uint64_t inv = inv_mod(a.back(), p);
  for (auto& c : a) c = mul_mod(c, inv, p);
  return a;
}

Fp fp_gcd(Fp a, Fp b, std::uint64_t p) {
  while (!b.empty()) {
    Fp r = fp_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return fp_monic(std::move(a), p);
}

// s*a + t*b = 1 for coprime a, b.
void fp_ext_gcd(const Fp& a, const Fp& b, std::uint64_t p, Fp& s, Fp& t) {
  Fp r0 = a, r1 = b, s0{1}, s1{}, t0{}, t1{1};
  while (!r1.empty()) {
    Fp q, r;
    fp_divmod(r0, r1, p, &q, &r);
    Fp s2 = fp_sub(s0, fp_mul(q, s1, p), p);
    Fp t2 = fp_sub(t0, fp_mul(q, t1, p), p);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.size() != 1) throw Error(ErrorKind::InvalidArgument, "Hensel lift: factors are not coprime mod p");
  std::uint64_t inv = inv_mod(r0[0], p);
  for (auto& c : s0) c = mul_mod(c, inv, p);
  for (auto& c : t0) c = mul_mod(c, inv, p);
  s = std::move(s0);
  t = std::move(t0);
}

Fp fp_powmod(Fp base, const Int& exp, const Fp& mod, std::uint64_t p) {
  Fp result{1};
  base = fp_mod(base, mod, p);
  const std::size_t bits = mpz_sizeinbase(exp.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = fp_mod(fp_mul(result, result, p), mod, p);
    if (mpz_tstbit(exp.get_mpz_t(), i)) result = fp_mod(fp_mul(result, base, p), mod, p);
  }
  return result;
}

// Splits a squarefree monic f whose irreducible factors all have degree d.
void equal_degree_split(const Fp& f, std::size_t d, std::uint64_t p, std::mt19937_64& rng,
                        std::vector<Fp>& out) {
  const std::size_t n = f.size() - 1;
  if (n == d) {
    out.push_back(f);
    return;
  }
  Int half;
  if (p != 2) {
    Int q = int_pow(p, static_cast<unsigned>(d));
    half = (q - 1) / 2;
  }
  for (;;) {
    Fp a(n, 0);
    for (auto& c : a) c = rng() % p;
    trim(a);
    if (a.empty()) continue;
    Fp b;
    if (p == 2) {
      Fp term = a;
      b = a;
      for (std::size_t i = 1; i < d; ++i) {
        term = fp_mod(fp_mul(term, term, p), f, p);
        b = fp_add(b, term, p);
      }
    } else {
      b = fp_sub(fp_powmod(a, half, f, p), Fp{1}, p);
    }
    Fp g = fp_gcd(f, b, p);
    if (g.size() <= 1 || g.size() == f.size()) continue;
    Fp q;
    fp_divmod(f, g, p, &q, nullptr);
    equal_degree_split(g, d, p, rng, out);
    equal_degree_split(fp_monic(q, p), d, p, rng, out);
    return;
  }
}

using IPoly = std::vector<Int>;

IPoly to_ipoly(const Fp& a) {
  IPoly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = Int(static_cast<unsigned long>(a[i]));
  return r;
}

IPoly ipoly_mul(const IPoly& a, const IPoly& b) {
  if (a.empty() || b.empty()) return {};
  IPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

Fp ipoly_reduce_p(const IPoly& a, std::uint64_t p) {
  Fp r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = reduce_mod(a[i], p);
  trim(r);
  return r;
}

// Lifts Phi_m = h0 * g0 (mod p) to h (mod p^E), h monic.
IPoly hensel_lift(std::uint64_t m, std::uint64_t p, const Fp& h0, unsigned precision) {
  const UPoly& phi = cyclotomic(m);
  const Fp phi_p = ipoly_reduce_p(phi.coeffs(), p);
  Fp g0;
  fp_divmod(phi_p, h0, p, &g0, nullptr);
  Fp s, t;
  fp_ext_gcd(h0, g0, p, s, t);
  IPoly h = to_ipoly(h0), g = to_ipoly(g0);
  Int pj = static_cast<unsigned long>(p);
  for (unsigned j = 1; j < precision; ++j) {
    IPoly prod = ipoly_mul(h, g);
    IPoly diff(phi.coeffs());
    diff.resize(std::max(diff.size(), prod.size()));
    for (std::size_t i = 0; i < prod.size(); ++i) diff[i] -= prod[i];
    for (auto& c : diff) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), pj.get_mpz_t());
    Fp delta = ipoly_reduce_p(diff, p);
    Fp q, a;
    fp_divmod(fp_mul(delta, t, p), h0, p, &q, &a);
    Fp b = fp_add(fp_mul(delta, s, p), fp_mul(q, g0, p), p);
    for (std::size_t i = 0; i < a.size(); ++i) h[i] += pj * static_cast<unsigned long>(a[i]);
    if (g.size() < b.size()) g.resize(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) g[i] += pj * static_cast<unsigned long>(b[i]);
    pj *= static_cast<unsigned long>(p);
  }
  for (auto& c : h) mpz_mod(c.get_mpz_t(), c.get_mpz_t(), pj.get_mpz_t());
  return h;
}

struct LocalRing {
  Int modulus;                          // p^E
  std::size_t f = 1;                    // residue degree
  std::size_t e = 1;                    // ramification index
  std::vector<std::vector<Int>> ypow;   // Y^r mod h, r < m
  std::vector<std::vector<Int>> pipow;  // (1+pi)^s mod E(pi), s < p^k
};

std::unique_ptr<LocalRing> build_ring(const LocalPlace& place, unsigned precision) {
  auto ring = std::make_unique<LocalRing>();
  const std::uint64_t p = place.p;
  ring->modulus = int_pow(p, precision);
  const Int& mod = ring->modulus;
  auto reduce = [&](Int& x) { mpz_mod(x.get_mpz_t(), x.get_mpz_t(), mod.get_mpz_t()); };

  const auto& factor = factor_cyclotomic_mod_p(place.m, p).at(place.factor_index);
  IPoly h = hensel_lift(place.m, p, factor, precision);
  const std::size_t f = h.size() - 1;
  ring->f = f;
  ring->ypow.assign(place.m, std::vector<Int>(f));
  std::vector<Int> cur(f);
  cur[0] = 1;
  for (std::uint64_t r = 0; r < place.m; ++r) {
    ring->ypow[r] = cur;
    // cur <- Y * cur mod h (h monic)
    Int top = cur[f - 1];
    for (std::size_t i = f - 1; i > 0; --i) cur[i] = cur[i - 1] - top * h[i];
    cur[0] = -top * h[0];
    for (auto& c : cur) reduce(c);
  }

  const std::uint64_t pk = place.n / place.m;
  const std::size_t e = static_cast<std::size_t>(place.ramification);
  ring->e = e;
  // Eisenstein polynomial Phi_{p^k}(1 + pi), monic of degree e.
  std::vector<Int> eis;
  if (place.k == 0) {
    eis = {Int(0), Int(1)};
  } else {
    const UPoly& phi = cyclotomic(pk);
    std::vector<Int> c = phi.coeffs();
    // Taylor shift x -> x + 1.
    for (std::size_t i = 0; i < c.size(); ++i)
      for (std::size_t j = c.size() - 1; j > i; --j) c[j - 1] += c[j];
    eis = std::move(c);
  }
  ring->pipow.assign(pk, std::vector<Int>(e));
  std::vector<Int> pw(e);
  pw[0] = 1;
  for (std::uint64_t s = 0; s < pk; ++s) {
    ring->pipow[s] = pw;
    if (e == 1 && place.k == 0) break;
    // pw <- (1 + pi) * pw
    std::vector<Int> next(pw);
    Int top = pw[e - 1];
    for (std::size_t i = e - 1; i > 0; --i) next[i] += pw[i - 1];
    for (std::size_t i = 0; i < e; ++i) next[i] -= top * eis[i];
    for (auto& c : next) reduce(c);
    pw = std::move(next);
  }
  return ring;
}

std::mutex ring_mutex;
std::map<std::tuple<std::uint64_t, std::uint64_t, std::size_t, unsigned>, std::unique_ptr<LocalRing>> ring_cache;

const LocalRing& ring_for(const LocalPlace& place, unsigned precision) {
  auto key = std::make_tuple(place.p, place.n, place.factor_index, precision);
  {
    std::lock_guard<std::mutex> lock(ring_mutex);
    auto it = ring_cache.find(key);
    if (it != ring_cache.end()) return *it->second;
  }
  auto ring = build_ring(place, precision);
  std::lock_guard<std::mutex> lock(ring_mutex);
  auto [it, inserted] = ring_cache.emplace(key, std::move(ring));
  return *it->second;
}

// Valuation of G(x^a) in the ring, or nullopt when it is 0 mod p^E.
std::optional<Rat> ring_valuation(const LocalRing& ring, const LocalPlace& place, const std::vector<Int>& g,
                                  std::int64_t a) {
  const std::size_t e = ring.e, f = ring.f;
  std::vector<Int> acc(e * f);
  const auto n = static_cast<std::int64_t>(place.n);
  const auto m = static_cast<std::int64_t>(place.m);
  const auto pk = n / m;
  Int gt, cg;
  for (std::size_t t = 0; t < g.size(); ++t) {
    if (g[t] == 0) continue;
    mpz_mod(gt.get_mpz_t(), g[t].get_mpz_t(), ring.modulus.get_mpz_t());
    const std::int64_t idx =
        static_cast<std::int64_t>((static_cast<__int128>(mod_floor(a, n)) * static_cast<__int128>(t)) % n);
    const auto& yp = ring.ypow[static_cast<std::size_t>(idx % m)];
    const auto& pp = ring.pipow[static_cast<std::size_t>(idx % pk)];
    for (std::size_t i = 0; i < e; ++i) {
      if (pp[i] == 0) continue;
      cg = pp[i] * gt;
      for (std::size_t j = 0; j < f; ++j) mpz_addmul(acc[i * f + j].get_mpz_t(), cg.get_mpz_t(), yp[j].get_mpz_t());
    }
  }
  std::optional<Rat> best;
  for (std::size_t i = 0; i < e; ++i) {
    for (std::size_t j = 0; j < f; ++j) {
      Int& c = acc[i * f + j];
      mpz_mod(c.get_mpz_t(), c.get_mpz_t(), ring.modulus.get_mpz_t());
      if (c == 0) continue;
      Rat v(Int(valuation(c, place.p)) * static_cast<unsigned long>(e) + static_cast<unsigned long>(i),
            Int(static_cast<unsigned long>(e)));
      v.canonicalize();
      if (!best || v < *best) best = v;
    }
  }
  return best;
}

}  // namespace

const std::vector<std::vector<std::uint64_t>>& factor_cyclotomic_mod_p(std::uint64_t m, std::uint64_t p) {
  static std::mutex mutex;
  static std::map<std::pair<std::uint64_t, std::uint64_t>, std::unique_ptr<std::vector<Fp>>> cache;
  if (m == 0 || m % p == 0) throw Error(ErrorKind::InvalidArgument, "factor_cyclotomic_mod_p: p divides m");
  {
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find({m, p});
    if (it != cache.end()) return *it->second;
  }
  Fp phi = ipoly_reduce_p(cyclotomic(m).coeffs(), p);
  const std::size_t d = static_cast<std::size_t>(multiplicative_order(p % m, m));
  std::mt19937_64 rng(0x5eed ^ (m * 1315423911ULL) ^ p);
  auto out = std::make_unique<std::vector<Fp>>();
  equal_degree_split(phi, d, p, rng, *out);
  std::sort(out->begin(), out->end());
  std::lock_guard<std::mutex> lock(mutex);
  auto [it, inserted] = cache.emplace(std::make_pair(m, p), std::move(out));
  return *it->second;
}

LocalPlace make_place(std::uint64_t p, std::uint64_t n, std::size_t factor_index) {
  if (!is_prime_u64(p)) throw Error(ErrorKind::InvalidArgument, std::to_string(p) + " is not prime");
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "N must be positive");
  LocalPlace place;
  place.p = p;
  place.n = n;
  place.m = n;
  std::uint64_t pk = 1;
  while (place.m % p == 0) {
    place.m /= p;
    pk *= p;
    ++place.k;
  }
  place.ramification = euler_phi(pk);
  place.residue_degree = static_cast<unsigned>(multiplicative_order(p % place.m, place.m));
  const std::size_t count = factor_cyclotomic_mod_p(place.m, p).size();
  if (factor_index >= count)
    throw Error(ErrorKind::InvalidArgument, "place index " + std::to_string(factor_index) + " out of range (" +
                                                std::to_string(count) + " places above " + std::to_string(p) + ")");
  place.factor_index = factor_index;
  return place;
}

std::vector<LocalPlace> places_above(std::uint64_t p, std::uint64_t n) {
  LocalPlace first = make_place(p, n, 0);
  std::vector<LocalPlace> out{first};
  const std::size_t count = factor_cyclotomic_mod_p(first.m, p).size();
  for (std::size_t i = 1; i < count; ++i) {
    out.push_back(first);
    out.back().factor_index = i;
  }
  return out;
}

std::vector<Rat> local_valuations(const LPoly& f, const TorsionPoint& zeta, const LocalPlace& place,
                                  const std::vector<std::int64_t>& residues, unsigned precision_max) {
  if (static_cast<std::uint64_t>(zeta.modulus()) != place.n)
    throw Error(ErrorKind::InvalidArgument, "torsion point modulus does not match the place");
  auto [g, scale] = specialize_to_orbit(f, zeta);
  if (g.is_zero() || vanishes_on_cyclotomic(place.n, g))
    throw Error(ErrorKind::VanishesAtPoint, "F vanishes at " + zeta.to_string());
  const long scale_val = static_cast<long>(valuation(scale, place.p));
  std::vector<Rat> out;
  out.reserve(residues.size());
  for (std::int64_t a : residues) {
    if (std::gcd(mod_floor(a, zeta.modulus()), zeta.modulus()) != 1)
      throw Error(ErrorKind::InvalidArgument, "residue " + std::to_string(a) + " is not a unit mod N");
    std::optional<Rat> v;
    for (unsigned prec = 8;; prec *= 2) {
      prec = std::min(prec, precision_max);
      v = ring_valuation(ring_for(place, prec), place, g.coeffs(), a);
      if (v || prec >= precision_max) break;
    }
    if (!v)
      throw Error(ErrorKind::PrecisionExhausted,
                  "valuation exceeds p-adic precision " + std::to_string(precision_max));
    out.push_back(*v - scale_val);
  }
  return out;
}

Rat local_valuation(const LPoly& f, const TorsionPoint& zeta, const LocalPlace& place, std::int64_t a,
                    unsigned precision_max) {
  return local_valuations(f, zeta, place, {a}, precision_max).front();
}

PadicLogValue subgroup_average_padic(const LPoly& f, const TorsionPoint& zeta, const GaloisSubgroup& g,
                                     const LocalPlace& place, unsigned precision_max) {
  if (g.modulus() != zeta.modulus())
    throw Error(ErrorKind::InvalidArgument, "subgroup modulus does not match the torsion point");
  auto vals = local_valuations(f, zeta, place, g.elements(), precision_max);
  Rat sum = 0;
  for (const auto& v : vals) sum += v;
  return {place.p, sum / Rat(static_cast<long>(vals.size()))};
}

}  // namespace toreq
