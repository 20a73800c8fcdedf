#pragma once

#include <string>
#include <vector>

#include "toreq/arith.hpp"

namespace toreq {

/// Dense univariate polynomial with arbitrary-precision integer coefficients.
/// Index = exponent; trailing zero coefficients are never stored, so the
/// zero polynomial has an empty coefficient vector and degree -1.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<Int> coeffs);
  UPoly(std::initializer_list<long> coeffs);

  static UPoly monomial(std::size_t degree, const Int& coeff = 1);
  static UPoly x_pow_minus_one(std::size_t degree);

  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Int>& coeffs() const { return coeffs_; }
  Int coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Int(0); }
  const Int& lead() const { return coeffs_.back(); }
  /// Index of the lowest nonzero coefficient (0 for the zero polynomial).
  std::size_t low_degree() const;

  UPoly operator-() const;
  friend UPoly operator+(const UPoly& a, const UPoly& b);
  friend UPoly operator-(const UPoly& a, const UPoly& b);
  friend UPoly operator*(const UPoly& a, const UPoly& b);
  friend UPoly operator*(const Int& c, const UPoly& a);
  friend bool operator==(const UPoly& a, const UPoly& b) { return a.coeffs_ == b.coeffs_; }
  friend bool operator!=(const UPoly& a, const UPoly& b) { return !(a == b); }

  UPoly derivative() const;
  /// Divides by x^k (requires low_degree() >= k).
  UPoly shift_down(std::size_t k) const;
  Int evaluate(const Int& x) const;
  Int content() const;
  /// Content-free part with positive leading coefficient.
  UPoly primitive() const;

  /// Sum of absolute values of coefficients, as a base-2 logarithm.
  double log2_l1_norm() const;
  double log2_l2_norm() const;

  /// Renders in descending powers, e.g. "x^2 - x + 1".
  std::string to_string(const std::string& var = "x") const;

 private:
  void trim();
  std::vector<Int> coeffs_;
};

struct UDivision {
  UPoly quotient;
  UPoly remainder;
};

/// Euclidean division over Z by a divisor whose leading coefficient is +-1.
UDivision divide_monic(const UPoly& num, const UPoly& den);
/// Exact quotient num/den over Z; remainder.is_zero() reports exactness.
/// Fails fast (returns nonzero remainder) when an intermediate quotient
/// coefficient is not integral.
UDivision divide_exact(const UPoly& num, const UPoly& den);
/// Pseudo-remainder prem(a, b) = lc(b)^(deg a - deg b + 1) a mod b.
UPoly pseudo_remainder(const UPoly& a, const UPoly& b);
/// Primitive gcd over Z[x] (positive leading coefficient).
UPoly gcd(const UPoly& a, const UPoly& b);

/// Square-free decomposition: returns P_1, P_2, ... with
/// primitive(f) = prod P_i^i, each P_i square-free and primitive.
std::vector<UPoly> squarefree_decomposition(const UPoly& f);

}  // namespace toreq
