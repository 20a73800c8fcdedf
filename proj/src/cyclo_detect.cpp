#include "toreq/cyclo_detect.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "toreq/cyclotomic.hpp"
#include "toreq/error.hpp"

namespace toreq {

namespace {

std::int64_t vector_gcd(const std::vector<std::int64_t>& a) {
  std::int64_t g = 0;
  for (auto x : a) g = std::gcd(g, x);
  return g;
}

// Unimodular T (columns) with a * T = (+-gcd, 0, ..., 0).
std::vector<std::vector<std::int64_t>> unimodular_for(std::vector<std::int64_t> row) {
  const std::size_t n = row.size();
  std::vector<std::vector<std::int64_t>> t(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i) t[i][i] = 1;
  auto col_op = [&](std::size_t dst, std::size_t src, std::int64_t q) {
    row[dst] -= q * row[src];
    for (std::size_t r = 0; r < n; ++r) t[r][dst] -= q * t[r][src];
  };
  auto swap_cols = [&](std::size_t i, std::size_t j) {
    std::swap(row[i], row[j]);
    for (std::size_t r = 0; r < n; ++r) std::swap(t[r][i], t[r][j]);
  };
  for (;;) {
    std::size_t pivot = n;
    for (std::size_t j = 0; j < n; ++j)
      if (row[j] != 0 && (pivot == n || std::abs(row[j]) < std::abs(row[pivot]))) pivot = j;
    if (pivot == n) break;
    bool done = true;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == pivot || row[j] == 0) continue;
      col_op(j, pivot, row[j] / row[pivot]);
      done = false;
    }
    if (done) {
      swap_cols(0, pivot);
      break;
    }
  }
  return t;
}

}  // namespace

LPoly make_extended_cyclotomic(std::uint64_t m, const std::vector<std::int64_t>& a) {
  if (m == 0) throw Error(ErrorKind::InvalidArgument, "cyclotomic index must be positive");
  if (a.empty() || vector_gcd(a) != 1)
    throw Error(ErrorKind::InvalidArgument, "exponent vector must have coprime entries");
  const UPoly& phi = cyclotomic(m);
  const std::int64_t deg = phi.degree();
  Exponent b(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) b[i] = std::max<std::int64_t>(0, -a[i] * deg);
  LPoly out(a.size());
  for (std::int64_t k = 0; k <= deg; ++k) {
    const Int& c = phi.coeffs()[static_cast<std::size_t>(k)];
    if (c == 0) continue;
    Exponent e(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) e[i] = k * a[i] + b[i];
    out += LPoly::monomial(e, Rat(c));
  }
  return out;
}

KroneckerResult kronecker_test(const UPoly& p) {
  if (p.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "Kronecker test of the zero polynomial");
  KroneckerResult res;
  res.monomial_exponent = p.low_degree();
  UPoly q = p.shift_down(res.monomial_exponent);
  res.sign = q.lead() < 0 ? -1 : 1;
  Int content = q.content();
  UPoly rest = q.primitive();
  const long deg = rest.degree();
  const std::uint64_t limit = 2 * static_cast<std::uint64_t>(deg) * static_cast<std::uint64_t>(deg) + 1;
  for (std::uint64_t m = 1; m <= limit && rest.degree() > 0; ++m) {
    if (euler_phi(m) > static_cast<std::uint64_t>(rest.degree())) continue;
    const UPoly& phi = cyclotomic(m);
    unsigned mult = 0;
    for (;;) {
      UDivision d = divide_monic(rest, phi);
      if (!d.remainder.is_zero()) break;
      rest = std::move(d.quotient);
      ++mult;
    }
    if (mult) res.factors.push_back({m, mult});
  }
  // rest is primitive with positive leading coefficient, so it is 1 exactly
  // when nothing but cyclotomic factors was present.
  res.cyclotomic = rest == UPoly({1}) && content == 1;
  if (!res.cyclotomic) res.witness = content * rest;
  return res;
}

std::string TorsionCoset::to_string() const {
  std::string s = "x^(";
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(a[i]);
  }
  return s + ") = zeta_" + std::to_string(m);
}

namespace {

// Factor as +-x^e0 * U(x^dir); returns false when the support is not collinear.
bool pull_back(const LPoly& f, std::vector<std::int64_t>& dir, UPoly& u) {
  const auto& terms = f.terms();
  const Exponent& base = terms.begin()->first;
  const std::size_t n = f.nvars();
  dir.assign(n, 0);
  for (const auto& [e, c] : terms) {
    Exponent diff(n);
    for (std::size_t i = 0; i < n; ++i) diff[i] = e[i] - base[i];
    if (std::all_of(diff.begin(), diff.end(), [](std::int64_t x) { return x == 0; })) continue;
    std::int64_t g = vector_gcd(diff);
    for (auto& x : diff) x /= g;
    auto first = std::find_if(diff.begin(), diff.end(), [](std::int64_t x) { return x != 0; });
    if (*first < 0)
      for (auto& x : diff) x = -x;
    if (std::all_of(dir.begin(), dir.end(), [](std::int64_t x) { return x == 0; }))
      dir = diff;
    else if (diff != dir)
      return false;
  }
  // Position of each exponent along dir.
  std::size_t pivot = 0;
  while (dir[pivot] == 0) ++pivot;
  std::vector<std::pair<std::int64_t, Int>> pos;
  std::int64_t tmin = 0;
  for (const auto& [e, c] : terms) {
    std::int64_t t = (e[pivot] - base[pivot]) / dir[pivot];
    tmin = std::min(tmin, t);
    pos.emplace_back(t, c.get_num());
  }
  std::int64_t tmax = 0;
  for (auto& [t, c] : pos) tmax = std::max(tmax, t - tmin);
  std::vector<Int> coeffs(static_cast<std::size_t>(tmax + 1));
  for (auto& [t, c] : pos) coeffs[static_cast<std::size_t>(t - tmin)] = c;
  u = UPoly(std::move(coeffs));
  return true;
}

}  // namespace

BoydResult boyd_check(const std::vector<LPoly>& factors) {
  BoydResult res;
  std::set<std::pair<std::vector<std::int64_t>, std::uint64_t>> seen;
  for (std::size_t idx = 0; idx < factors.size(); ++idx) {
    const LPoly& f = factors[idx];
    bool ok = !f.is_zero() && f.has_integer_coefficients();
    if (ok && f.num_terms() == 1) {
      ok = abs(f.leading_coefficient()) == 1;
    } else if (ok) {
      std::vector<std::int64_t> dir;
      UPoly u;
      ok = pull_back(f, dir, u);
      if (ok) {
        KroneckerResult k = kronecker_test(u);
        ok = k.cyclotomic;
        if (ok)
          for (const auto& fac : k.factors)
            if (seen.insert({dir, fac.m}).second) res.cosets.push_back({dir, fac.m});
      }
    }
    if (!ok) {
      res.all_extended_cyclotomic = false;
      res.failed_index = idx;
      res.cosets.clear();
      return res;
    }
  }
  res.all_extended_cyclotomic = true;
  return res;
}

std::vector<TorsionPoint> sample_coset(const TorsionCoset& coset, std::size_t count) {
  const std::size_t n = coset.a.size();
  if (n == 0 || vector_gcd(coset.a) != 1)
    throw Error(ErrorKind::InvalidArgument, "coset direction must be primitive");
  auto t = unimodular_for(coset.a);
  // a * t[:,0] = +-1; the other columns span the kernel of a.
  std::int64_t s0 = 0;
  for (std::size_t i = 0; i < n; ++i) s0 += coset.a[i] * t[i][0];
  std::vector<std::int64_t> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = t[i][0] * s0;
  const auto m = static_cast<std::int64_t>(coset.m);
  std::vector<TorsionPoint> out;
  for (std::int64_t s = 1; out.size() < count; ++s) {
    for (std::int64_t j = 1; j <= m && out.size() < count; ++j) {
      if (std::gcd(j, m) != 1) continue;
      for (std::int64_t c = 0; c < s && out.size() < count; ++c) {
        std::vector<std::int64_t> v(n);
        for (std::size_t i = 0; i < n; ++i) {
          v[i] = j * s * w[i];
          for (std::size_t k = 1; k < n; ++k) v[i] += m * ((c + static_cast<std::int64_t>(k) - 1) % s) * t[i][k];
        }
        out.emplace_back(m * s, std::move(v));
      }
    }
    if (n == 1) break;  // x^(+-1) = zeta_m has only phi(m) solutions
  }
  return out;
}

}  // namespace toreq
