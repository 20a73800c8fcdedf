#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "toreq/arith.hpp"
#include "toreq/upoly.hpp"

namespace toreq {

using Exponent = std::vector<std::int64_t>;

/// Graded lexicographic order: total degree first, then lexicographic.
struct GrlexLess {
  bool operator()(const Exponent& a, const Exponent& b) const;
};

/// Sparse multivariate Laurent polynomial over Q.
///
/// Terms with zero coefficient are never stored; the zero polynomial is the
/// empty map. Iteration order is ascending graded-lex, so the leading term
/// is the last entry.
class LPoly {
 public:
  using TermMap = std::map<Exponent, Rat, GrlexLess>;

  explicit LPoly(std::size_t nvars = 1);
  LPoly(std::size_t nvars, TermMap terms);

  static LPoly constant(std::size_t nvars, const Rat& c);
  /// The variable x_{index+1} (0-based index).
  static LPoly variable(std::size_t nvars, std::size_t index);
  static LPoly monomial(Exponent exponent, const Rat& c);
  /// Embeds a univariate polynomial in x1 of an n-variable ring.
  static LPoly from_upoly(const UPoly& f, std::size_t nvars = 1);

  std::size_t nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  std::size_t num_terms() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rat coefficient(const Exponent& e) const;
  const Exponent& leading_exponent() const;
  const Rat& leading_coefficient() const;
  bool has_integer_coefficients() const;
  /// Largest absolute value of any exponent entry.
  std::int64_t max_abs_exponent() const;

  LPoly operator-() const;
  LPoly& operator+=(const LPoly& other);
  LPoly& operator-=(const LPoly& other);
  friend LPoly operator+(LPoly a, const LPoly& b) { return a += b; }
  friend LPoly operator-(LPoly a, const LPoly& b) { return a -= b; }
  friend LPoly operator*(const LPoly& a, const LPoly& b);
  friend LPoly operator*(const Rat& c, const LPoly& a);
  friend bool operator==(const LPoly& a, const LPoly& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const LPoly& a, const LPoly& b) { return !(a == b); }

  /// Canonical rendering in descending graded-lex order, e.g. "x1*x2 - 1".
  /// The output is accepted by parse_poly.
  std::string to_string() const;

  /// Converts a polynomial in one variable with integer coefficients and
  /// non-negative exponents to dense form.
  UPoly to_upoly() const;

 private:
  void add_term(const Exponent& e, const Rat& c);
  std::size_t nvars_;
  TermMap terms_;
};

/// Integer matrix used for monomial substitution x -> x^A.
class ExpMatrix {
 public:
  ExpMatrix(std::size_t rows, std::size_t cols);
  ExpMatrix(std::size_t rows, std::size_t cols, std::vector<std::int64_t> row_major);
  static ExpMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::int64_t operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::int64_t& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  friend ExpMatrix operator*(const ExpMatrix& a, const ExpMatrix& b);
  friend bool operator==(const ExpMatrix& a, const ExpMatrix& b) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::int64_t> data_;
};

/// F(x^A): each variable x_i of F becomes prod_j y_j^{A(i,j)}, so an
/// exponent vector alpha maps to A^T alpha. Requires A.rows() == F.nvars();
/// the result has A.cols() variables. Satisfies
/// substitute(substitute(F, A), B) == substitute(F, A * B).
LPoly substitute_monomial(const LPoly& f, const ExpMatrix& a);

struct NormalizedSubstitution {
  LPoly poly;      ///< x^shift * F(x^A), a polynomial coprime to x1...xn
  Exponent shift;  ///< the minimal monomial exponent applied
};
NormalizedSubstitution substitute_monomial_normalized(const LPoly& f, const ExpMatrix& a);

/// Multiplies by the minimal monomial making every exponent non-negative
/// and the result coprime to x1...xn.
NormalizedSubstitution normalize_monomial(const LPoly& f);

template <class P>
struct ContentSplit {
  Rat content;
  P primitive;
};

/// F = content * primitive, primitive has coprime integer coefficients and
/// a positive leading coefficient (graded-lex leading term).
ContentSplit<LPoly> content_primitive(const LPoly& f);
ContentSplit<UPoly> content_primitive(const UPoly& f);

}  // namespace toreq
