#include "toreq/sunit.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "toreq/arch.hpp"
#include "toreq/error.hpp"
#include "toreq/orbit.hpp"
#include "toreq/parallel.hpp"
#include "toreq/resultant.hpp"

namespace toreq {

PrimeSet::PrimeSet(std::vector<std::uint64_t> primes) : primes_(std::move(primes)) {
  for (auto p : primes_)
    if (!is_prime_u64(p)) throw Error(ErrorKind::InvalidArgument, std::to_string(p) + " is not prime");
  std::sort(primes_.begin(), primes_.end());
  primes_.erase(std::unique(primes_.begin(), primes_.end()), primes_.end());
}

PrimeSet PrimeSet::parse(std::string_view text) {
  std::vector<std::uint64_t> out;
  while (!text.empty()) {
    auto comma = text.find(',');
    std::string_view item = text.substr(0, comma);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || ec != std::errc() || ptr != item.data() + item.size())
      throw Error(ErrorKind::InvalidArgument, "invalid prime '" + std::string(item) + "'");
    out.push_back(v);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return PrimeSet(std::move(out));
}

bool PrimeSet::contains(std::uint64_t p) const { return std::binary_search(primes_.begin(), primes_.end(), p); }

bool s_integer_coeffs(const LPoly& p, const PrimeSet& s) {
  for (const auto& [e, c] : p.terms()) {
    Int d = c.get_den();
    for (auto q : s.primes()) {
      Int qq = static_cast<unsigned long>(q);
      mpz_remove(d.get_mpz_t(), d.get_mpz_t(), qq.get_mpz_t());
    }
    if (d != 1) return false;
  }
  return true;
}

std::string format_factorization(const PrimeExponents& f) {
  if (f.empty()) return "1";
  std::string s;
  for (const auto& [p, e] : f) {
    if (!s.empty()) s += "*";
    s += std::to_string(p) + "^" + std::to_string(e);
  }
  return s;
}

SUnitResult s_unit_test(const LPoly& p, const TorsionPoint& zeta, const PrimeSet& s, std::uint64_t trial_bound,
                        bool find_witness) {
  if (!p.has_integer_coefficients())
    throw Error(ErrorKind::InvalidArgument, "S-unit test needs integer coefficients");
  SUnitResult res;
  auto spec = specialize_to_orbit(p, zeta);
  res.norm = cyclotomic_norm(static_cast<std::uint64_t>(zeta.modulus()), spec.g);
  if (res.norm == 0) {
    res.status = SUnitStatus::Zero;
    res.reason = "P vanishes at the point";
    return res;
  }
  Int rest = abs(res.norm);
  for (auto q : s.primes()) {
    Int qq = static_cast<unsigned long>(q);
    unsigned e = static_cast<unsigned>(mpz_remove(rest.get_mpz_t(), rest.get_mpz_t(), qq.get_mpz_t()));
    if (e) res.factors[q] = e;
  }
  res.cofactor = rest;
  if (rest == 1) {
    res.status = SUnitStatus::Yes;
    return res;
  }
  res.status = SUnitStatus::No;
  if (!find_witness) {
    res.reason = "norm is not S-smooth";
    return res;
  }
  for (auto q : primes_up_to(static_cast<std::uint32_t>(std::min<std::uint64_t>(trial_bound, 0xffffffffu)))) {
    if (mpz_divisible_ui_p(rest.get_mpz_t(), q)) {
      res.witness = Int(static_cast<unsigned long>(q));
      res.reason = "prime " + std::to_string(q) + " divides the norm";
      return res;
    }
  }
  if (is_prime(rest)) {
    res.witness = rest;
    res.reason = "prime " + rest.get_str() + " divides the norm";
  } else {
    res.reason = "composite cofactor";
  }
  return res;
}

ProductFormulaResult product_formula_check(const LPoly& p, std::uint64_t budget, std::uint64_t seed) {
  if (p.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "product formula for the zero polynomial");
  ProductFormulaResult res;
  MahlerResult m = mahler(p, budget, seed);
  res.mahler = m.value;
  res.error_bound = m.error_bound;
  // v_p of the Gauss norm is v_p(content), so only primes of the content
  // can contribute.
  Rat content = content_primitive(p).content;
  std::map<std::uint64_t, long> vals;
  for (const Int* part : {&content.get_num(), &content.get_den()}) {
    Int x = abs(*part);
    if (!mpz_fits_ulong_p(x.get_mpz_t()))
      throw Error(ErrorKind::InvalidArgument, "content too large to factor");
    for (auto [q, e] : factor_u64(x.get_ui())) vals[q] = valuation(content, q);
  }
  double sum = m.value;
  for (auto [q, v] : vals) {
    double contrib = -static_cast<double>(v) * std::log(static_cast<double>(q));
    res.per_prime[q] = contrib;
    sum += contrib;
  }
  res.sum = sum;
  return res;
}

ScanStrategy ScanStrategy::parse(std::string_view text) {
  ScanStrategy s;
  if (text == "all") {
    s.kind = All;
  } else if (text == "coprime-only") {
    s.kind = CoprimeOnly;
  } else if (text.substr(0, 7) == "random(" && text.size() > 8 && text.back() == ')') {
    s.kind = Random;
    std::string_view num = text.substr(7, text.size() - 8);
    auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), s.count);
    if (ec != std::errc() || ptr != num.data() + num.size() || s.count == 0)
      throw Error(ErrorKind::InvalidArgument, "invalid random count in '" + std::string(text) + "'");
  } else {
    throw Error(ErrorKind::InvalidArgument,
                "unknown strategy '" + std::string(text) + "' (expected all, coprime-only or random(count))");
  }
  return s;
}

std::string ScanStrategy::to_string() const {
  switch (kind) {
    case All:
      return "all";
    case CoprimeOnly:
      return "coprime-only";
    case Random:
      return "random(" + std::to_string(count) + ")";
  }
  return "";
}

namespace {

bool next_vector(std::vector<std::int64_t>& u, std::int64_t n) {
  for (std::size_t i = u.size(); i-- > 0;) {
    if (++u[i] < n) return true;
    u[i] = 0;
  }
  return false;
}

std::int64_t gcd_with(const std::vector<std::int64_t>& u, std::int64_t n) {
  std::int64_t g = n;
  for (auto x : u) g = std::gcd(g, x);
  return g;
}

}  // namespace

std::vector<TorsionPoint> scan_points(std::size_t dims, std::int64_t n, const ScanStrategy& strategy,
                                      std::uint64_t seed) {
  if (dims == 0) throw Error(ErrorKind::InvalidArgument, "dimension must be positive");
  std::vector<TorsionPoint> out;
  std::vector<std::int64_t> u(dims, 0);
  switch (strategy.kind) {
    case ScanStrategy::All:
      do out.emplace_back(n, u);
      while (next_vector(u, n));
      break;
    case ScanStrategy::CoprimeOnly: {
      const auto units = units_mod(n);
      const double cells = std::pow(static_cast<double>(n), static_cast<double>(dims));
      auto index = [&](const std::vector<std::int64_t>& v) {
        std::size_t k = 0;
        for (auto x : v) k = k * static_cast<std::size_t>(n) + static_cast<std::size_t>(x);
        return k;
      };
      if (cells > static_cast<double>(std::size_t{1} << 30))
        throw Error(ErrorKind::InvalidArgument, "coprime-only scan too large for N^n");
      std::vector<bool> seen(static_cast<std::size_t>(cells), false);
      do {
        if (gcd_with(u, n) != 1 || seen[index(u)]) continue;
        out.emplace_back(n, u);
        for (auto c : units) {
          std::vector<std::int64_t> v(dims);
          for (std::size_t i = 0; i < dims; ++i)
            v[i] = static_cast<std::int64_t>((static_cast<__int128>(u[i]) * c) % n);
          seen[index(v)] = true;
        }
      } while (next_vector(u, n));
      break;
    }
    case ScanStrategy::Random: {
      std::mt19937_64 rng(seed ^ (static_cast<std::uint64_t>(n) * 0x9e3779b97f4a7c15ULL));
      std::uniform_int_distribution<std::int64_t> dist(0, n - 1);
      std::set<std::vector<std::int64_t>> chosen;
      for (std::size_t tries = 0; chosen.size() < strategy.count && tries < 100 * strategy.count; ++tries) {
        for (auto& x : u) x = dist(rng);
        if (gcd_with(u, n) == 1 && chosen.insert(u).second) out.emplace_back(n, u);
      }
      break;
    }
  }
  return out;
}

ScanReport ih_scan(const LPoly& p, const PrimeSet& s, std::size_t dims, std::int64_t n_max,
                   const ScanStrategy& strategy, std::uint64_t seed) {
  if (p.nvars() != dims)
    throw Error(ErrorKind::DimensionMismatch, "polynomial has " + std::to_string(p.nvars()) + " variables, scan uses " +
                                                  std::to_string(dims));
  if (n_max < 1) throw Error(ErrorKind::InvalidArgument, "N_max must be positive");
  struct PerN {
    std::vector<SUnitHit> hits;
    std::size_t tested = 0;
  };
  auto per_n = parallel_map(static_cast<std::size_t>(n_max), [&](std::size_t i) {
    const auto n = static_cast<std::int64_t>(i + 1);
    PerN r;
    for (const auto& z : scan_points(dims, n, strategy, seed)) {
      check_cancelled();
      ++r.tested;
      SUnitResult t = s_unit_test(p, z, s, 0, false);
      if (t.status != SUnitStatus::Yes) continue;
      r.hits.push_back({z, t.factors, t.norm < 0 ? -1 : 1, delta(z)});
    }
    return r;
  });
  ScanReport rep;
  for (auto& r : per_n) {
    rep.points_tested += r.tested;
    for (auto& h : r.hits) rep.hits.push_back(std::move(h));
  }
  std::stable_sort(rep.hits.begin(), rep.hits.end(),
                   [](const SUnitHit& a, const SUnitHit& b) { return a.delta > b.delta; });
  for (const auto& h : rep.hits) {
    rep.max_delta = std::max(rep.max_delta, h.delta);
    ++rep.delta_histogram[h.delta];
  }
  return rep;
}

}  // namespace toreq
