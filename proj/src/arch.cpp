#include "toreq/arch.hpp"

#include <cfloat>
#include <cmath>
#include <complex>
#include <numeric>

#include "toreq/error.hpp"
#include "toreq/orbit.hpp"
#include "toreq/parallel.hpp"
#include "toreq/resultant.hpp"

namespace toreq {

std::string to_string(MahlerMethod m) { return m == MahlerMethod::UnivariateRoots ? "univariate-roots" : "quadrature"; }

namespace {

constexpr long double kTwoPiL = 6.283185307179586476925286766559L;
constexpr double kTwoPi = 6.283185307179586;

// Neumaier's variant of Kahan summation.
template <class T>
struct CompensatedSum {
  T sum = 0, comp = 0;
  void add(T x) {
    T t = sum + x;
    if (std::fabs(sum) >= std::fabs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  }
  T value() const { return sum + comp; }
};

long double to_ld(const Int& x) {
  long exp = 0;
  double mant = mpz_get_d_2exp(&exp, x.get_mpz_t());
  return std::ldexp(static_cast<long double>(mant), static_cast<int>(exp));
}

}  // namespace

double orbit_average_arch(const LPoly& p, const TorsionPoint& zeta) {
  auto [g, scale] = specialize_to_orbit(p, zeta);
  const auto n = static_cast<std::uint64_t>(zeta.modulus());
  if (g.is_zero() || vanishes_on_cyclotomic(n, g))
    throw Error(ErrorKind::VanishesOnOrbit, "P vanishes on the orbit of " + zeta.to_string());
  std::vector<std::pair<std::uint64_t, long double>> terms;
  for (std::size_t t = 0; t < g.coeffs().size(); ++t)
    if (g.coeffs()[t] != 0) terms.emplace_back(t, to_ld(g.coeffs()[t]));
  CompensatedSum<long double> acc;
  std::uint64_t count = 0;
  for (std::uint64_t a = 0; a < n; ++a) {
    if (std::gcd(a, n) != 1) continue;
    std::complex<long double> z = 0;
    for (const auto& [t, c] : terms) {
      std::uint64_t idx = static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * t) % n);
      long double ang = kTwoPiL * static_cast<long double>(idx) / static_cast<long double>(n);
      z += c * std::complex<long double>(std::cos(ang), std::sin(ang));
    }
    long double mag = std::abs(z);
    if (mag < 1e-300L)
      throw Error(ErrorKind::NumericalUnderflow, "|P| underflows at a conjugate of " + zeta.to_string());
    acc.add(std::log(mag));
    ++count;
  }
  long double avg = acc.value() / static_cast<long double>(count) - std::log(to_ld(scale));
  return static_cast<double>(avg);
}

namespace {

using cld = std::complex<long double>;

struct Horner {
  cld value;
  cld deriv;
  long double abs_sum;  // sum |a_k| |z|^k
};

Horner horner(const std::vector<long double>& a, cld z) {
  cld v = 0, d = 0;
  long double s = 0, az = std::abs(z);
  for (std::size_t k = a.size(); k-- > 0;) {
    d = d * z + v;
    v = v * z + a[k];
    s = s * az + std::fabs(a[k]);
  }
  return {v, d, s};
}

// Sum of log+ |alpha| over the roots of a squarefree integer polynomial of
// degree >= 1 with nonzero constant term, plus a certified error bound.
std::pair<long double, long double> log_plus_root_sum(const UPoly& p) {
  const std::size_t d = static_cast<std::size_t>(p.degree());
  std::vector<long double> a(d + 1);
  for (std::size_t i = 0; i <= d; ++i) a[i] = to_ld(p.coeff(i));
  const long double lead = std::fabs(a[d]);
  const long double eps = LDBL_EPSILON;

  std::vector<cld> z(d);
  {
    long double r = std::pow(std::fabs(a[0]) / lead, 1.0L / static_cast<long double>(d));
    if (!(r > 0) || !std::isfinite(r)) r = 1;
    for (std::size_t i = 0; i < d; ++i) {
      long double ang = kTwoPiL * static_cast<long double>(i) / static_cast<long double>(d) + 0.4L;
      z[i] = std::polar(r, ang);
    }
  }
  const int max_iter = 2000;
  int settled = 0;
  for (int it = 0; it < max_iter && settled < 3; ++it) {
    bool small = true;
    for (std::size_t i = 0; i < d; ++i) {
      Horner h = horner(a, z[i]);
      if (h.value == cld(0)) continue;
      cld ratio = h.deriv == cld(0) ? cld(1e-3L, 1e-3L) : h.value / h.deriv;
      cld s = 0;
      for (std::size_t j = 0; j < d; ++j)
        if (j != i) s += 1.0L / (z[i] - z[j]);
      cld w = ratio / (1.0L - ratio * s);
      z[i] -= w;
      if (std::abs(w) > 16 * eps * std::max(1.0L, std::abs(z[i]))) small = false;
    }
    settled = small ? settled + 1 : 0;
  }

  // Inclusion discs D(z_i, r_i); a connected union of k discs holds k roots.
  std::vector<long double> r(d);
  for (std::size_t i = 0; i < d; ++i) {
    Horner h = horner(a, z[i]);
    long double upper = std::abs(h.value) + (8.0L * static_cast<long double>(d) + 16.0L) * eps * h.abs_sum;
    long double prod = lead;
    for (std::size_t j = 0; j < d; ++j)
      if (j != i) prod *= std::abs(z[i] - z[j]);
    r[i] = static_cast<long double>(d) * upper / prod * (1.0L + 8.0L * static_cast<long double>(d) * eps);
    if (!std::isfinite(r[i])) r[i] = std::numeric_limits<long double>::infinity();
  }
  std::vector<std::size_t> parent(d);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j)
      if (std::abs(z[i] - z[j]) <= r[i] + r[j]) parent[find(i)] = find(j);

  auto log_plus = [](long double x) { return x > 1 ? std::log(x) : 0.0L; };
  long double total = 0, error = 0;
  std::vector<long double> lo(d, std::numeric_limits<long double>::infinity()), hi(d, 0);
  std::vector<std::size_t> size(d, 0);
  for (std::size_t i = 0; i < d; ++i) {
    std::size_t c = find(i);
    long double m = std::abs(z[i]);
    lo[c] = std::min(lo[c], std::max(0.0L, m - r[i]));
    hi[c] = std::max(hi[c], m + r[i]);
    ++size[c];
    total += log_plus(m);
  }
  for (std::size_t c = 0; c < d; ++c)
    if (size[c]) error += static_cast<long double>(size[c]) * (log_plus(hi[c]) - log_plus(lo[c]));
  error += static_cast<long double>(d) * 4 * eps * (1 + std::fabs(total));
  return {total, error};
}

}  // namespace

MahlerResult mahler_univariate(const UPoly& p) {
  if (p.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "Mahler measure of the zero polynomial");
  MahlerResult res;
  res.method = MahlerMethod::UnivariateRoots;
  UPoly q = p.shift_down(p.low_degree());
  long double value = std::log(std::fabs(to_ld(q.content())));
  long double error = 0;
  if (q.degree() > 0) {
    auto parts = squarefree_decomposition(q);
    for (std::size_t i = 0; i < parts.size(); ++i) {
      const UPoly& part = parts[i];
      const long double mult = static_cast<long double>(i + 1);
      value += mult * std::log(std::fabs(to_ld(part.lead())));
      if (part.degree() <= 0) continue;
      auto [s, e] = log_plus_root_sum(part);
      value += mult * s;
      error += mult * e;
    }
  }
  res.value = static_cast<double>(value);
  res.error_bound = static_cast<double>(error) + 4 * DBL_EPSILON * (1 + std::fabs(res.value));
  if (!(res.error_bound <= 1e-9))
    throw Error(ErrorKind::RootFindingFailure,
                "root isolation did not reach 1e-9 (bound " + std::to_string(res.error_bound) + ")");
  return res;
}

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double unit_uniform(std::uint64_t& state) { return static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53; }

struct LatticeRule {
  std::uint64_t points = 1;
  std::vector<std::uint64_t> generator;
};

// Worst-case error criterion P_2 of a rank-1 lattice rule.
double p2_criterion(std::uint64_t m, const std::vector<std::uint64_t>& z) {
  double sum = 0;
  for (std::uint64_t j = 0; j < m; ++j) {
    double prod = 1;
    for (auto zi : z) {
      double x = static_cast<double>((static_cast<unsigned __int128>(j) * zi) % m) / static_cast<double>(m);
      prod *= 1 + 2 * M_PI * M_PI * (x * x - x + 1.0 / 6.0);
    }
    sum += prod;
  }
  return sum / static_cast<double>(m) - 1;
}

LatticeRule choose_rule(std::size_t n, std::uint64_t points) {
  LatticeRule rule;
  if (n == 1) {
    rule.points = points;
    rule.generator = {1};
  } else if (n == 2) {
    std::uint64_t a = 1, b = 2;
    while (a + b <= points) {
      std::uint64_t c = a + b;
      a = b;
      b = c;
    }
    rule.points = b;
    rule.generator = {1, a};
  } else {
    std::uint64_t m = points;
    while (m > 2 && !is_prime_u64(m)) --m;
    rule.points = m;
    // Korobov generator (1, a, a^2, ...) with a from a fixed candidate set,
    // keeping the best P_2.
    double best = std::numeric_limits<double>::infinity();
    const double golden = 0.6180339887498949;
    for (int k = 1; k <= 24; ++k) {
      std::uint64_t a = 2 + static_cast<std::uint64_t>(std::fmod(k * golden, 1.0) * static_cast<double>(m - 3));
      std::vector<std::uint64_t> z(n);
      z[0] = 1;
      for (std::size_t i = 1; i < n; ++i) z[i] = mul_mod(z[i - 1], a, m);
      double crit = p2_criterion(m, z);
      if (crit < best) {
        best = crit;
        rule.generator = z;
      }
    }
  }
  return rule;
}

struct Term {
  double coeff;
  Exponent exponent;
};

}  // namespace

MahlerResult mahler_multivariate(const LPoly& p, std::uint64_t budget, std::uint64_t seed) {
  if (p.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "Mahler measure of the zero polynomial");
  if (budget < 1000) throw Error(ErrorKind::BudgetTooSmall, "quadrature budget must be at least 1000");
  MahlerResult res;
  res.method = MahlerMethod::Quadrature;
  if (p.num_terms() == 1) {
    res.value = std::log(std::fabs(p.leading_coefficient().get_d()));
    return res;
  }
  constexpr std::size_t kShifts = 16;
  const std::size_t n = p.nvars();
  const LatticeRule rule = choose_rule(n, budget / kShifts);
  const std::uint64_t m = rule.points;
  std::vector<Term> terms;
  std::vector<std::uint64_t> step;
  for (const auto& [e, c] : p.terms()) {
    terms.push_back({c.get_d(), e});
    __int128 k = 0;
    for (std::size_t i = 0; i < n; ++i) k += static_cast<__int128>(e[i]) * static_cast<__int128>(rule.generator[i]);
    step.push_back(static_cast<std::uint64_t>(mod_floor(static_cast<std::int64_t>(k % static_cast<__int128>(m)),
                                                        static_cast<std::int64_t>(m))));
  }
  auto estimates = parallel_map(kShifts, [&](std::size_t shift) {
    std::uint64_t state = seed * 0x100000001b3ULL + shift;
    for (int attempt = 0; attempt < 10; ++attempt) {
      check_cancelled();
      std::vector<double> delta(n);
      for (auto& x : delta) x = unit_uniform(state);
      std::vector<double> phase0(terms.size());
      for (std::size_t t = 0; t < terms.size(); ++t) {
        double s = 0;
        for (std::size_t i = 0; i < n; ++i) s += static_cast<double>(terms[t].exponent[i]) * delta[i];
        phase0[t] = s - std::floor(s);
      }
      CompensatedSum<double> acc;
      bool hit = false;
      for (std::uint64_t j = 0; j < m && !hit; ++j) {
        double re = 0, im = 0;
        for (std::size_t t = 0; t < terms.size(); ++t) {
          std::uint64_t idx = static_cast<std::uint64_t>((static_cast<unsigned __int128>(j) * step[t]) % m);
          double ang = kTwoPi * (static_cast<double>(idx) / static_cast<double>(m) + phase0[t]);
          re += terms[t].coeff * std::cos(ang);
          im += terms[t].coeff * std::sin(ang);
        }
        double mag = std::hypot(re, im);
        if (mag < 1e-300)
          hit = true;
        else
          acc.add(std::log(mag));
      }
      if (!hit) return acc.value() / static_cast<double>(m);
    }
    throw Error(ErrorKind::ToralZeroHits, "10 consecutive quadrature shifts hit a zero of P on the torus");
  });
  CompensatedSum<double> total;
  for (double e : estimates) total.add(e);
  const double mean = total.value() / static_cast<double>(kShifts);
  double var = 0;
  for (double e : estimates) var += (e - mean) * (e - mean);
  var /= static_cast<double>(kShifts - 1);
  res.value = mean;
  res.error_bound = 3 * std::sqrt(var / static_cast<double>(kShifts)) + 16 * DBL_EPSILON * (1 + std::fabs(mean));
  return res;
}

MahlerResult mahler(const LPoly& p, std::uint64_t budget, std::uint64_t seed) {
  if (p.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "Mahler measure of the zero polynomial");
  if (p.nvars() == 1) {
    auto split = content_primitive(normalize_monomial(p).poly);
    MahlerResult r = mahler_univariate(split.primitive.to_upoly());
    r.value += std::log(std::fabs(split.content.get_d()));
    return r;
  }
  return mahler_multivariate(p, budget, seed);
}

namespace {

constexpr double kWiden = 4e-16;

struct Interval {
  double lo, hi;
};

// cos(2 pi t) for t in [a, b], widened outward.
Interval cos_turns(double a, double b) {
  if (b - a >= 1) return {-1, 1};
  double ca = std::cos(kTwoPi * a), cb = std::cos(kTwoPi * b);
  Interval r{std::min(ca, cb) - kWiden, std::max(ca, cb) + kWiden};
  if (std::floor(b) >= a) r.hi = 1;              // contains an integer
  if (std::floor(b - 0.5) >= a - 0.5) r.lo = -1;  // contains a half-integer
  r.lo = std::max(r.lo, -1.0);
  r.hi = std::min(r.hi, 1.0);
  return r;
}

struct PolyTerms {
  std::vector<double> coeff;
  std::vector<Exponent> exps;
  double abs_sum = 0;
};

double cell_lower_bound(const PolyTerms& pt, const std::vector<double>& lo, double width, double* center_abs) {
  const std::size_t n = lo.size();
  // Centered (mean-value) form.
  double re = 0, im = 0, radius = 0, rounding = 0;
  // Rectangle enclosure.
  double rlo = 0, rhi = 0, ilo = 0, ihi = 0;
  for (std::size_t t = 0; t < pt.coeff.size(); ++t) {
    const auto& e = pt.exps[t];
    const double c = pt.coeff[t];
    double mid = 0, spread = 0, l1 = 0;
    for (std::size_t i = 0; i < n; ++i) {
      double x = static_cast<double>(e[i]);
      mid += x * (lo[i] + width / 2);
      spread += std::fabs(x) * width / 2;
      l1 += std::fabs(x);
    }
    double ang = kTwoPi * mid;
    re += c * std::cos(ang);
    im += c * std::sin(ang);
    radius += std::fabs(c) * kTwoPi * spread;
    rounding += std::fabs(c) * (8 + kTwoPi * (std::fabs(mid) + l1)) * 2.3e-16;

    Interval co = cos_turns(mid - spread, mid + spread);
    Interval si = cos_turns(mid - spread - 0.25, mid + spread - 0.25);
    double a1 = c * co.lo, a2 = c * co.hi, b1 = c * si.lo, b2 = c * si.hi;
    rlo += std::min(a1, a2);
    rhi += std::max(a1, a2);
    ilo += std::min(b1, b2);
    ihi += std::max(b1, b2);
  }
  const double slack = pt.abs_sum * static_cast<double>(pt.coeff.size() + 2) * kWiden;
  rlo -= slack;
  rhi += slack;
  ilo -= slack;
  ihi += slack;
  double dx = std::max({0.0, rlo, -rhi}), dy = std::max({0.0, ilo, -ihi});
  double rect = std::sqrt(dx * dx + dy * dy) * (1 - 1e-15);
  double mag = std::hypot(re, im);
  *center_abs = mag;
  double centered = mag - radius - rounding - 1e-15 * mag;
  return std::max(rect, centered);
}

}  // namespace

ToralCertificate certify_toral_emptiness(const LPoly& p, unsigned depth) {
  if (p.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "zero polynomial vanishes everywhere");
  const std::size_t n = p.nvars();
  PolyTerms pt;
  for (const auto& [e, c] : p.terms()) {
    // Round the coefficient toward zero in magnitude only matters for the
    // rectangle; the widening slack absorbs the conversion error.
    pt.coeff.push_back(c.get_d());
    pt.exps.push_back(e);
    pt.abs_sum += std::fabs(c.get_d());
  }
  ToralCertificate cert;
  if (pt.coeff.size() == 1) {
    cert.certified = true;
    cert.lower_bound = std::fabs(pt.coeff[0]) * (1 - 1e-15);
    cert.cells = 1;
    return cert;
  }
  const double cap = std::pow(4.0, depth) * static_cast<double>(n);
  std::vector<std::vector<double>> level{std::vector<double>(n, 0.0)};
  double width = 1;
  double best = std::numeric_limits<double>::infinity();
  for (unsigned d = 0;; ++d) {
    check_cancelled();
    std::vector<std::vector<double>> next;
    for (const auto& lo : level) {
      double center_abs = 0;
      double lb = cell_lower_bound(pt, lo, width, &center_abs);
      ++cert.cells;
      if (lb > 0 && (lb >= 0.5 * center_abs || d == depth)) {
        best = std::min(best, lb);
        continue;
      }
      if (d == depth) return cert;
      for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        std::vector<double> child(lo);
        for (std::size_t i = 0; i < n; ++i)
          if (mask >> i & 1) child[i] += width / 2;
        next.push_back(std::move(child));
      }
      if (static_cast<double>(next.size()) > cap) return cert;
    }
    if (next.empty()) break;
    level = std::move(next);
    width /= 2;
  }
  cert.certified = true;
  cert.lower_bound = best;
  return cert;
}

}  // namespace toreq
