#include "toreq/upoly.hpp"

#include <cmath>
#include <sstream>

#include "toreq/error.hpp"

namespace toreq {

UPoly::UPoly(std::vector<Int> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

UPoly::UPoly(std::initializer_list<long> coeffs) {
  for (long c : coeffs) coeffs_.emplace_back(c);
  trim();
}

UPoly UPoly::monomial(std::size_t degree, const Int& coeff) {
  std::vector<Int> c(degree + 1);
  c[degree] = coeff;
  return UPoly(std::move(c));
}

UPoly UPoly::x_pow_minus_one(std::size_t degree) {
  std::vector<Int> c(degree + 1);
  c[degree] = 1;
  c[0] -= 1;
  return UPoly(std::move(c));
}

void UPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

std::size_t UPoly::low_degree() const {
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    if (coeffs_[i] != 0) return i;
  return 0;
}

UPoly UPoly::operator-() const {
  UPoly r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

UPoly operator+(const UPoly& a, const UPoly& b) {
  std::vector<Int> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] += b.coeffs_[i];
  return UPoly(std::move(c));
}

UPoly operator-(const UPoly& a, const UPoly& b) {
  std::vector<Int> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] -= b.coeffs_[i];
  return UPoly(std::move(c));
}

UPoly operator*(const UPoly& a, const UPoly& b) {
  if (a.is_zero() || b.is_zero()) return UPoly();
  std::vector<Int> c(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
      mpz_addmul(c[i + j].get_mpz_t(), a.coeffs_[i].get_mpz_t(), b.coeffs_[j].get_mpz_t());
    }
  }
  return UPoly(std::move(c));
}

UPoly operator*(const Int& k, const UPoly& a) {
  std::vector<Int> c = a.coeffs_;
  for (auto& x : c) x *= k;
  return UPoly(std::move(c));
}

UPoly UPoly::derivative() const {
  if (coeffs_.size() <= 1) return UPoly();
  std::vector<Int> c(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) c[i - 1] = coeffs_[i] * static_cast<unsigned long>(i);
  return UPoly(std::move(c));
}

UPoly UPoly::shift_down(std::size_t k) const {
  if (k == 0 || is_zero()) return *this;
  if (low_degree() < k) throw Error(ErrorKind::InvalidArgument, "shift_down: not divisible by x^k");
  return UPoly(std::vector<Int>(coeffs_.begin() + static_cast<long>(k), coeffs_.end()));
}

Int UPoly::evaluate(const Int& x) const {
  Int acc = 0;
  for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + coeffs_[i];
  return acc;
}

Int UPoly::content() const {
  Int g = 0;
  for (const auto& c : coeffs_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

UPoly UPoly::primitive() const {
  if (is_zero()) throw Error(ErrorKind::ZeroPolynomial, "primitive part of the zero polynomial");
  Int g = content();
  if (lead() < 0) g = -g;
  std::vector<Int> c = coeffs_;
  for (auto& x : c) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  return UPoly(std::move(c));
}

double UPoly::log2_l1_norm() const {
  Int s = 0;
  for (const auto& c : coeffs_) s += abs(c);
  if (s == 0) return -HUGE_VAL;
  return log_abs(s) / std::log(2.0);
}

double UPoly::log2_l2_norm() const {
  Int s = 0;
  for (const auto& c : coeffs_) s += c * c;
  if (s == 0) return -HUGE_VAL;
  return 0.5 * log_abs(s) / std::log(2.0);
}

std::string UPoly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    const Int& c = coeffs_[i];
    if (c == 0) continue;
    Int mag = abs(c);
    if (first) {
      if (c < 0) out << "-";
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (i == 0) {
      out << mag.get_str();
      continue;
    }
    if (mag != 1) out << mag.get_str() << "*";
    out << var;
    if (i > 1) out << "^" << i;
  }
  return out.str();
}

UDivision divide_monic(const UPoly& num, const UPoly& den) {
  if (den.is_zero()) throw Error(ErrorKind::InvalidArgument, "division by zero polynomial");
  if (abs(den.lead()) != 1) throw Error(ErrorKind::InvalidArgument, "divide_monic: leading coefficient must be +-1");
  const bool neg = den.lead() < 0;
  std::vector<Int> r = num.coeffs();
  const long dn = den.degree();
  if (num.degree() < dn) return {UPoly(), num};
  std::vector<Int> q(static_cast<std::size_t>(num.degree() - dn + 1));
  const auto& d = den.coeffs();
  for (long i = num.degree(); i >= dn; --i) {
    Int c = r[static_cast<std::size_t>(i)];
    if (neg) c = -c;
    if (c == 0) continue;
    q[static_cast<std::size_t>(i - dn)] = c;
    for (long j = 0; j <= dn; ++j) {
      mpz_submul(r[static_cast<std::size_t>(i - dn + j)].get_mpz_t(), c.get_mpz_t(),
                 d[static_cast<std::size_t>(j)].get_mpz_t());
    }
  }
  return {UPoly(std::move(q)), UPoly(std::move(r))};
}

UDivision divide_exact(const UPoly& num, const UPoly& den) {
  if (den.is_zero()) throw Error(ErrorKind::InvalidArgument, "division by zero polynomial");
  std::vector<Int> r = num.coeffs();
  const long dn = den.degree();
  if (num.degree() < dn) return {UPoly(), num};
  std::vector<Int> q(static_cast<std::size_t>(num.degree() - dn + 1));
  const auto& d = den.coeffs();
  const Int& lc = den.lead();
  for (long i = num.degree(); i >= dn; --i) {
    Int& top = r[static_cast<std::size_t>(i)];
    if (top == 0) continue;
    if (!mpz_divisible_p(top.get_mpz_t(), lc.get_mpz_t())) return {UPoly(), num};
    Int c;
    mpz_divexact(c.get_mpz_t(), top.get_mpz_t(), lc.get_mpz_t());
    q[static_cast<std::size_t>(i - dn)] = c;
    for (long j = 0; j <= dn; ++j) {
      mpz_submul(r[static_cast<std::size_t>(i - dn + j)].get_mpz_t(), c.get_mpz_t(),
                 d[static_cast<std::size_t>(j)].get_mpz_t());
    }
  }
  return {UPoly(std::move(q)), UPoly(std::move(r))};
}

UPoly pseudo_remainder(const UPoly& a, const UPoly& b) {
  if (b.is_zero()) throw Error(ErrorKind::InvalidArgument, "pseudo_remainder by zero");
  std::vector<Int> r = a.coeffs();
  const long bn = b.degree();
  const auto& bc = b.coeffs();
  const Int& lc = b.lead();
  long rd = a.degree();
  while (rd >= bn) {
    Int top = r[static_cast<std::size_t>(rd)];
    for (auto& x : r) x *= lc;
    for (long j = 0; j <= bn; ++j) {
      mpz_submul(r[static_cast<std::size_t>(rd - bn + j)].get_mpz_t(), top.get_mpz_t(),
                 bc[static_cast<std::size_t>(j)].get_mpz_t());
    }
    r.resize(static_cast<std::size_t>(rd));
    --rd;
    while (rd >= 0 && r[static_cast<std::size_t>(rd)] == 0) {
      r.pop_back();
      --rd;
    }
  }
  return UPoly(std::move(r));
}

UPoly gcd(const UPoly& a, const UPoly& b) {
  if (a.is_zero() && b.is_zero()) return UPoly();
  if (a.is_zero()) return b.primitive();
  if (b.is_zero()) return a.primitive();
  UPoly x = a.primitive();
  UPoly y = b.primitive();
  if (x.degree() < y.degree()) std::swap(x, y);
  while (!y.is_zero()) {
    UPoly r = pseudo_remainder(x, y);
    x = std::move(y);
    y = r.is_zero() ? UPoly() : r.primitive();
  }
  return x.primitive();
}

namespace {

UPoly exact_quotient(const UPoly& a, const UPoly& b) {
  auto [q, r] = divide_exact(a, b);
  if (!r.is_zero()) throw Error(ErrorKind::InvalidArgument, "exact_quotient: inexact division");
  return q;
}

}  // namespace

std::vector<UPoly> squarefree_decomposition(const UPoly& f) {
  std::vector<UPoly> out;
  if (f.degree() <= 0) return out;
  UPoly p = f.primitive();
  UPoly a0 = gcd(p, p.derivative());
  UPoly b = exact_quotient(p, a0);
  UPoly c = exact_quotient(p.derivative(), a0);
  UPoly d = c - b.derivative();
  while (b.degree() > 0) {
    UPoly a = d.is_zero() ? b : gcd(b, d);
    out.push_back(a);
    b = exact_quotient(b, a);
    c = d.is_zero() ? UPoly() : exact_quotient(d, a);
    d = c - b.derivative();
  }
  return out;
}

}  // namespace toreq
