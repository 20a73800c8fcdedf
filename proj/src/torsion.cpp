#include "toreq/torsion.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <set>

#include "toreq/error.hpp"

namespace toreq {

TorsionPoint::TorsionPoint(std::int64_t modulus, std::vector<std::int64_t> exponents)
    : modulus_(modulus), exponents_(std::move(exponents)) {
  if (modulus <= 0) throw Error(ErrorKind::InvalidArgument, "torsion point modulus must be positive");
  if (exponents_.empty()) throw Error(ErrorKind::InvalidArgument, "torsion point needs at least one coordinate");
  std::int64_t g = modulus_;
  for (auto& u : exponents_) {
    u = mod_floor(u, modulus_);
    g = std::gcd(g, u);
  }
  order_ = modulus_ / g;
}

TorsionPoint TorsionPoint::conjugate(std::int64_t c) const {
  if (std::gcd(mod_floor(c, modulus_), modulus_) != 1)
    throw Error(ErrorKind::InvalidArgument, "conjugate: multiplier not coprime to N");
  std::vector<std::int64_t> v(exponents_.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    v[i] = static_cast<std::int64_t>((static_cast<__int128>(exponents_[i]) * mod_floor(c, modulus_)) % modulus_);
  return TorsionPoint(modulus_, std::move(v));
}

std::string TorsionPoint::to_string() const {
  std::string s = std::to_string(modulus_) + ":";
  for (std::size_t i = 0; i < exponents_.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(exponents_[i]);
  }
  return s;
}

namespace {

std::int64_t parse_int(std::string_view text, const char* what) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw Error(ErrorKind::InvalidArgument, std::string("invalid ") + what + ": '" + std::string(text) + "'");
  return v;
}

}  // namespace

TorsionPoint TorsionPoint::parse(std::string_view text) {
  auto colon = text.find(':');
  if (colon == std::string_view::npos)
    throw Error(ErrorKind::InvalidArgument, "torsion point must look like N:u1,...,un");
  std::int64_t n = parse_int(text.substr(0, colon), "modulus");
  std::vector<std::int64_t> u;
  std::string_view rest = text.substr(colon + 1);
  while (true) {
    auto comma = rest.find(',');
    u.push_back(parse_int(rest.substr(0, comma), "exponent"));
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  return TorsionPoint(n, std::move(u));
}

Int RelationLattice::determinant() const {
  Int d = 1;
  for (std::size_t i = 0; i < basis.size(); ++i) d *= basis[i][i];
  return abs(d);
}

bool RelationLattice::contains(const std::vector<std::int64_t>& a) const {
  const std::size_t n = basis.size();
  if (a.size() != n) return false;
  std::vector<Int> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    Int rhs = a[i];
    for (std::size_t j = 0; j < i; ++j) rhs -= basis[i][j] * x[j];
    if (!mpz_divisible_p(rhs.get_mpz_t(), basis[i][i].get_mpz_t())) return false;
    mpz_divexact(x[i].get_mpz_t(), rhs.get_mpz_t(), basis[i][i].get_mpz_t());
  }
  return true;
}

std::vector<std::vector<Int>> column_hnf(std::vector<std::vector<Int>> m) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  auto combine = [&](std::size_t i, std::size_t j, const Int& x, const Int& y, const Int& u, const Int& v) {
    // (col_i, col_j) <- (x col_i + y col_j, u col_i + v col_j)
    for (std::size_t r = 0; r < rows; ++r) {
      Int ci = m[r][i], cj = m[r][j];
      m[r][i] = x * ci + y * cj;
      m[r][j] = u * ci + v * cj;
    }
  };
  for (std::size_t i = 0; i < rows; ++i) {
    if (i >= cols) throw Error(ErrorKind::InvalidArgument, "column_hnf: rank deficient");
    for (std::size_t j = i + 1; j < cols; ++j) {
      if (m[i][j] == 0) continue;
      Int g, x, y;
      mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), m[i][i].get_mpz_t(), m[i][j].get_mpz_t());
      Int a = m[i][i] / g;
      Int b = m[i][j] / g;
      combine(i, j, x, y, -b, a);
    }
    if (m[i][i] == 0) throw Error(ErrorKind::InvalidArgument, "column_hnf: rank deficient");
    if (m[i][i] < 0)
      for (std::size_t r = 0; r < rows; ++r) m[r][i] = -m[r][i];
    for (std::size_t j = 0; j < i; ++j) {
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), m[i][j].get_mpz_t(), m[i][i].get_mpz_t());
      if (q == 0) continue;
      for (std::size_t r = 0; r < rows; ++r) m[r][j] -= q * m[r][i];
    }
  }
  for (auto& row : m) row.resize(rows);
  return m;
}

RelationLattice relation_lattice(const TorsionPoint& zeta) {
  const std::size_t n = zeta.dim();
  const std::int64_t modulus = zeta.modulus();
  // Kernel of (u_1, ..., u_n, N) by unimodular column reduction.
  std::vector<Int> row(n + 1);
  for (std::size_t i = 0; i < n; ++i) row[i] = zeta.exponents()[i];
  row[n] = modulus;
  std::vector<std::vector<Int>> t(n + 1, std::vector<Int>(n + 1));
  for (std::size_t i = 0; i <= n; ++i) t[i][i] = 1;
  for (;;) {
    std::size_t pivot = n + 1;
    for (std::size_t j = 0; j <= n; ++j)
      if (row[j] != 0 && (pivot > n || abs(row[j]) < abs(row[pivot]))) pivot = j;
    bool reduced = false;
    for (std::size_t j = 0; j <= n; ++j) {
      if (j == pivot || row[j] == 0) continue;
      Int q;
      mpz_tdiv_q(q.get_mpz_t(), row[j].get_mpz_t(), row[pivot].get_mpz_t());
      row[j] -= q * row[pivot];
      for (std::size_t r = 0; r <= n; ++r) t[r][j] -= q * t[r][pivot];
      reduced = true;
    }
    if (!reduced) {
      std::vector<std::vector<Int>> gens(n, std::vector<Int>());
      for (std::size_t j = 0; j <= n; ++j) {
        if (j == pivot) continue;
        for (std::size_t r = 0; r < n; ++r) gens[r].push_back(t[r][j]);
      }
      for (std::size_t e = 0; e < n; ++e)
        for (std::size_t r = 0; r < n; ++r) gens[r].push_back(r == e ? Int(modulus) : Int(0));
      return RelationLattice{column_hnf(std::move(gens))};
    }
  }
}

namespace {

// Calls visit(prefix) for every vector of length len with sup-norm exactly r.
template <class Visit>
void for_each_shell(std::size_t len, std::int64_t r, Visit&& visit) {
  std::vector<std::int64_t> v(len, -r);
  if (len == 0) {
    if (r == 0) visit(v);
    return;
  }
  for (;;) {
    std::int64_t mx = 0;
    for (auto x : v) mx = std::max(mx, x < 0 ? -x : x);
    if (mx == r) visit(v);
    std::size_t i = 0;
    while (i < len && v[i] == r) v[i++] = -r;
    if (i == len) return;
    ++v[i];
  }
}

}  // namespace

ShortVector shortest_relation(const TorsionPoint& zeta) {
  const std::size_t n = zeta.dim();
  const std::int64_t N = zeta.modulus();
  const auto& u = zeta.exponents();
  const std::int64_t un = u[n - 1];
  const std::int64_t gn = std::gcd(un, N);
  const std::int64_t step = N / gn;
  std::int64_t inv = 0;
  {
    std::int64_t x, y;
    ext_gcd_i64(mod_floor(un / gn, step), step, x, y);
    inv = step == 1 ? 0 : mod_floor(x, step);
  }
  ShortVector best{zeta.order(), std::vector<std::int64_t>(n, 0)};
  best.witness[0] = zeta.order();
  for (std::int64_t r = 0; r < best.norm; ++r) {
    for_each_shell(n - 1, r, [&](const std::vector<std::int64_t>& prefix) {
      __int128 s = 0;
      for (std::size_t i = 0; i + 1 < n; ++i) s += static_cast<__int128>(u[i]) * prefix[i];
      std::int64_t target = mod_floor(static_cast<std::int64_t>((-s) % N), N);
      if (target % gn != 0) return;
      std::int64_t an = static_cast<std::int64_t>((static_cast<__int128>(target / gn) * inv) % step);
      if (an > step - an) an -= step;
      if (r == 0 && an == 0) an = step;
      std::int64_t cand = std::max(r, an < 0 ? -an : an);
      if (cand < best.norm) {
        best.norm = cand;
        best.witness.assign(prefix.begin(), prefix.end());
        best.witness.push_back(an);
      }
    });
  }
  return best;
}

std::optional<ShortVector> rho(const std::vector<std::int64_t>& u) {
  const std::size_t n = u.size();
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "rho of an empty vector");
  for (std::size_t i = 0; i < n; ++i) {
    if (u[i] == 0) {
      std::vector<std::int64_t> w(n, 0);
      w[i] = 1;
      return ShortVector{1, w};
    }
  }
  if (n == 1) return std::nullopt;
  ShortVector best;
  {
    std::int64_t g = std::gcd(u[0], u[1]);
    best.witness.assign(n, 0);
    best.witness[0] = u[1] / g;
    best.witness[1] = -u[0] / g;
    best.norm = std::max(std::abs(best.witness[0]), std::abs(best.witness[1]));
  }
  const std::int64_t un = u[n - 1];
  for (std::int64_t r = 0; r < best.norm; ++r) {
    for_each_shell(n - 1, r, [&](const std::vector<std::int64_t>& prefix) {
      if (r == 0) return;  // prefix 0 forces the last entry to 0
      __int128 s = 0;
      for (std::size_t i = 0; i + 1 < n; ++i) s += static_cast<__int128>(u[i]) * prefix[i];
      if (s % un != 0) return;
      std::int64_t an = static_cast<std::int64_t>(-s / un);
      std::int64_t cand = std::max(r, an < 0 ? -an : an);
      if (cand < best.norm) {
        best.norm = cand;
        best.witness.assign(prefix.begin(), prefix.end());
        best.witness.push_back(an);
      }
    });
  }
  return best;
}

bool GaloisSubgroup::contains(std::int64_t a) const {
  return std::binary_search(elements_.begin(), elements_.end(), mod_floor(a, modulus_));
}

std::vector<std::int64_t> units_mod(std::int64_t n) {
  if (n <= 0) throw Error(ErrorKind::InvalidArgument, "units_mod: N must be positive");
  std::vector<std::int64_t> out;
  for (std::int64_t a = 0; a < n; ++a)
    if (std::gcd(a, n) == 1) out.push_back(a);
  return out;
}

GaloisSubgroup GaloisSubgroup::full(std::int64_t n) {
  GaloisSubgroup g;
  g.modulus_ = n;
  g.elements_ = units_mod(n);
  // Generators are all units; a smaller set is not needed for any caller.
  g.generators_ = g.elements_;
  return g;
}

GaloisSubgroup subgroup_from_generators(std::int64_t n, const std::vector<std::int64_t>& gens) {
  if (n <= 0) throw Error(ErrorKind::InvalidArgument, "subgroup modulus must be positive");
  GaloisSubgroup g;
  g.modulus_ = n;
  for (auto x : gens) {
    std::int64_t r = mod_floor(x, n);
    if (std::gcd(r, n) != 1)
      throw Error(ErrorKind::InvalidArgument, "generator " + std::to_string(x) + " is not coprime to " + std::to_string(n));
    g.generators_.push_back(r);
  }
  std::set<std::int64_t> seen{1 % n};
  std::vector<std::int64_t> frontier{1 % n};
  while (!frontier.empty()) {
    std::vector<std::int64_t> next;
    for (auto a : frontier) {
      for (auto s : g.generators_) {
        std::int64_t b = static_cast<std::int64_t>((static_cast<__int128>(a) * s) % n);
        if (seen.insert(b).second) next.push_back(b);
      }
    }
    frontier = std::move(next);
  }
  g.elements_.assign(seen.begin(), seen.end());
  return g;
}

namespace {

// ker((Z/N)^* -> (Z/f)^*) is contained in G.
bool kernel_inside(const GaloisSubgroup& g, std::int64_t f) {
  const std::int64_t n = g.modulus();
  if (n == 1) return true;
  for (std::int64_t a = 1 % f; a < n; a += f)
    if (std::gcd(a, n) == 1 && !g.contains(a)) return false;
  return true;
}

}  // namespace

std::int64_t conductor(const GaloisSubgroup& g) {
  std::int64_t f = g.modulus();
  bool progress = true;
  while (progress) {
    progress = false;
    for (auto [l, e] : factor_u64(static_cast<std::uint64_t>(f))) {
      std::int64_t smaller = f / static_cast<std::int64_t>(l);
      if (kernel_inside(g, smaller)) {
        f = smaller;
        progress = true;
        break;
      }
    }
  }
  return f;
}

std::int64_t conductor_by_definition(const GaloisSubgroup& g) {
  const std::int64_t n = g.modulus();
  const auto units = units_mod(n);
  for (std::uint64_t f : divisors(static_cast<std::uint64_t>(n))) {
    bool ok = true;
    for (auto a : units) {
      if (mod_floor(a - 1, static_cast<std::int64_t>(f)) == 0 && !g.contains(a)) {
        ok = false;
        break;
      }
    }
    if (ok) return static_cast<std::int64_t>(f);
  }
  return n;
}

}  // namespace toreq
