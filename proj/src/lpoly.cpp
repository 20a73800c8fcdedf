#include "toreq/lpoly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "toreq/error.hpp"

namespace toreq {

bool GrlexLess::operator()(const Exponent& a, const Exponent& b) const {
  std::int64_t da = std::accumulate(a.begin(), a.end(), std::int64_t{0});
  std::int64_t db = std::accumulate(b.begin(), b.end(), std::int64_t{0});
  if (da != db) return da < db;
  return a < b;
}

LPoly::LPoly(std::size_t nvars) : nvars_(nvars) {
  if (nvars == 0) throw Error(ErrorKind::InvalidArgument, "LPoly needs at least one variable");
}

LPoly::LPoly(std::size_t nvars, TermMap terms) : LPoly(nvars) {
  for (auto& [e, c] : terms) add_term(e, c);
}

LPoly LPoly::constant(std::size_t nvars, const Rat& c) {
  LPoly p(nvars);
  p.add_term(Exponent(nvars, 0), c);
  return p;
}

LPoly LPoly::variable(std::size_t nvars, std::size_t index) {
  if (index >= nvars) throw Error(ErrorKind::InvalidArgument, "variable index out of range");
  Exponent e(nvars, 0);
  e[index] = 1;
  LPoly p(nvars);
  p.add_term(e, Rat(1));
  return p;
}

LPoly LPoly::monomial(Exponent exponent, const Rat& c) {
  LPoly p(exponent.size());
  p.add_term(exponent, c);
  return p;
}

LPoly LPoly::from_upoly(const UPoly& f, std::size_t nvars) {
  LPoly p(nvars);
  for (std::size_t i = 0; i < f.coeffs().size(); ++i) {
    Exponent e(nvars, 0);
    e[0] = static_cast<std::int64_t>(i);
    p.add_term(e, Rat(f.coeffs()[i]));
  }
  return p;
}

void LPoly::add_term(const Exponent& e, const Rat& c) {
  if (e.size() != nvars_) throw Error(ErrorKind::DimensionMismatch, "exponent length does not match nvars");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

bool LPoly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  const auto& e = terms_.begin()->first;
  return std::all_of(e.begin(), e.end(), [](std::int64_t x) { return x == 0; });
}

Rat LPoly::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rat(0) : it->second;
}

const Exponent& LPoly::leading_exponent() const {
  if (terms_.empty()) throw Error(ErrorKind::ZeroPolynomial, "leading term of the zero polynomial");
  return terms_.rbegin()->first;
}

const Rat& LPoly::leading_coefficient() const {
  if (terms_.empty()) throw Error(ErrorKind::ZeroPolynomial, "leading term of the zero polynomial");
  return terms_.rbegin()->second;
}

bool LPoly::has_integer_coefficients() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const auto& t) { return t.second.get_den() == 1; });
}

std::int64_t LPoly::max_abs_exponent() const {
  std::int64_t m = 0;
  for (const auto& [e, c] : terms_)
    for (auto x : e) m = std::max(m, x < 0 ? -x : x);
  return m;
}

LPoly LPoly::operator-() const {
  LPoly r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

LPoly& LPoly::operator+=(const LPoly& other) {
  if (other.nvars_ != nvars_) throw Error(ErrorKind::DimensionMismatch, "nvars mismatch in addition");
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

LPoly& LPoly::operator-=(const LPoly& other) {
  if (other.nvars_ != nvars_) throw Error(ErrorKind::DimensionMismatch, "nvars mismatch in subtraction");
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

LPoly operator*(const LPoly& a, const LPoly& b) {
  if (a.nvars_ != b.nvars_) throw Error(ErrorKind::DimensionMismatch, "nvars mismatch in multiplication");
  LPoly r(a.nvars_);
  Exponent e(a.nvars_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  }
  return r;
}

LPoly operator*(const Rat& c, const LPoly& a) {
  LPoly r(a.nvars_);
  if (c == 0) return r;
  for (const auto& [e, x] : a.terms_) r.terms_.emplace(e, c * x);
  return r;
}

std::string LPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    Rat mag = abs(c);
    if (first) {
      if (c < 0) out << "-";
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool has_var = std::any_of(e.begin(), e.end(), [](std::int64_t x) { return x != 0; });
    bool wrote = false;
    if (!has_var || mag != 1) {
      out << mag.get_str();
      wrote = true;
    }
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (wrote) out << "*";
      out << "x" << (i + 1);
      if (e[i] != 1) out << "^" << e[i];
      wrote = true;
    }
  }
  return out.str();
}

UPoly LPoly::to_upoly() const {
  if (nvars_ != 1) throw Error(ErrorKind::DimensionMismatch, "to_upoly requires one variable");
  std::int64_t deg = 0;
  for (const auto& [e, c] : terms_) {
    if (e[0] < 0) throw Error(ErrorKind::InvalidArgument, "to_upoly: negative exponent");
    if (c.get_den() != 1) throw Error(ErrorKind::InvalidArgument, "to_upoly: non-integer coefficient");
    deg = std::max(deg, e[0]);
  }
  std::vector<Int> coeffs(static_cast<std::size_t>(deg) + 1);
  for (const auto& [e, c] : terms_) coeffs[static_cast<std::size_t>(e[0])] = c.get_num();
  return UPoly(std::move(coeffs));
}

ExpMatrix::ExpMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

ExpMatrix::ExpMatrix(std::size_t rows, std::size_t cols, std::vector<std::int64_t> row_major)
    : rows_(rows), cols_(cols), data_(std::move(row_major)) {
  if (data_.size() != rows * cols) throw Error(ErrorKind::DimensionMismatch, "ExpMatrix: wrong entry count");
}

ExpMatrix ExpMatrix::identity(std::size_t n) {
  ExpMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

ExpMatrix operator*(const ExpMatrix& a, const ExpMatrix& b) {
  if (a.cols_ != b.rows_) throw Error(ErrorKind::DimensionMismatch, "ExpMatrix product dimension mismatch");
  ExpMatrix r(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k)
      for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += a(i, k) * b(k, j);
  return r;
}

LPoly substitute_monomial(const LPoly& f, const ExpMatrix& a) {
  if (a.rows() != f.nvars())
    throw Error(ErrorKind::DimensionMismatch, "substitute_monomial: matrix rows must equal nvars");
  LPoly::TermMap out;
  for (const auto& [e, c] : f.terms()) {
    Exponent ne(a.cols(), 0);
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (std::size_t i = 0; i < a.rows(); ++i) ne[j] += a(i, j) * e[i];
    out[ne] += c;
  }
  return LPoly(a.cols(), std::move(out));
}

NormalizedSubstitution normalize_monomial(const LPoly& f) {
  Exponent shift(f.nvars(), 0);
  if (f.is_zero()) return {f, shift};
  for (std::size_t i = 0; i < f.nvars(); ++i) {
    std::int64_t lo = f.terms().begin()->first[i];
    for (const auto& [e, c] : f.terms()) lo = std::min(lo, e[i]);
    shift[i] = -lo;
  }
  LPoly::TermMap out;
  for (const auto& [e, c] : f.terms()) {
    Exponent ne = e;
    for (std::size_t i = 0; i < ne.size(); ++i) ne[i] += shift[i];
    out.emplace(std::move(ne), c);
  }
  return {LPoly(f.nvars(), std::move(out)), shift};
}

NormalizedSubstitution substitute_monomial_normalized(const LPoly& f, const ExpMatrix& a) {
  return normalize_monomial(substitute_monomial(f, a));
}

namespace {

Rat rational_content(const std::vector<Rat>& coeffs, bool leading_negative) {
  Int num = 0;
  Int den = 1;
  for (const auto& c : coeffs) {
    mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), c.get_num_mpz_t());
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  }
  Rat content(num, den);
  content.canonicalize();
  if (leading_negative) content = -content;
  return content;
}

}  // namespace

ContentSplit<LPoly> content_primitive(const LPoly& f) {
  if (f.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "content of the zero polynomial");
  std::vector<Rat> coeffs;
  for (const auto& [e, c] : f.terms()) coeffs.push_back(c);
  Rat content = rational_content(coeffs, f.leading_coefficient() < 0);
  Rat inv = 1 / content;
  return {content, inv * f};
}

ContentSplit<UPoly> content_primitive(const UPoly& f) {
  if (f.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "content of the zero polynomial");
  Int g = f.content();
  if (f.lead() < 0) g = -g;
  return {Rat(g), f.primitive()};
}

}  // namespace toreq
