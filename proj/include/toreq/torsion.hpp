#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "toreq/arith.hpp"

namespace toreq {

/// The torsion point (w^u_1, ..., w^u_n) of G_m^n for w a primitive N-th
/// root of unity. Exponents are stored reduced into [0, N).
class TorsionPoint {
 public:
  TorsionPoint(std::int64_t modulus, std::vector<std::int64_t> exponents);

  std::int64_t modulus() const { return modulus_; }
  const std::vector<std::int64_t>& exponents() const { return exponents_; }
  std::size_t dim() const { return exponents_.size(); }
  /// N / gcd(N, u_1, ..., u_n).
  std::int64_t order() const { return order_; }

  /// The Galois conjugate u -> c*u mod N; c must be coprime to N.
  TorsionPoint conjugate(std::int64_t c) const;

  /// "N:u1,u2,...,un"
  std::string to_string() const;
  static TorsionPoint parse(std::string_view text);

  friend bool operator==(const TorsionPoint& a, const TorsionPoint& b) {
    return a.modulus_ == b.modulus_ && a.exponents_ == b.exponents_;
  }
  friend bool operator<(const TorsionPoint& a, const TorsionPoint& b) {
    if (a.modulus_ != b.modulus_) return a.modulus_ < b.modulus_;
    return a.exponents_ < b.exponents_;
  }

 private:
  std::int64_t modulus_;
  std::vector<std::int64_t> exponents_;
  std::int64_t order_;
};

/// Column basis of {a in Z^n : <u, a> = 0 mod N} in Hermite normal form:
/// lower triangular, positive diagonal, entries left of the diagonal
/// reduced into [0, diagonal).
struct RelationLattice {
  std::vector<std::vector<Int>> basis;  // basis[row][col]

  std::size_t dim() const { return basis.size(); }
  Int determinant() const;
  bool contains(const std::vector<std::int64_t>& a) const;
};

RelationLattice relation_lattice(const TorsionPoint& zeta);

/// Column Hermite normal form of the lattice spanned by the given columns.
/// The lattice must have full rank (rows == rank).
std::vector<std::vector<Int>> column_hnf(std::vector<std::vector<Int>> columns_by_row);

struct ShortVector {
  std::int64_t norm;  ///< sup-norm
  std::vector<std::int64_t> witness;
};

/// Shortest nonzero relation in sup-norm; norm is delta(zeta).
ShortVector shortest_relation(const TorsionPoint& zeta);
inline std::int64_t delta(const TorsionPoint& zeta) { return shortest_relation(zeta).norm; }

/// Shortest nonzero integer vector orthogonal to u; std::nullopt stands for
/// infinity (n = 1 and u != 0).
std::optional<ShortVector> rho(const std::vector<std::int64_t>& u);

/// Subgroup of (Z/NZ)^* with its materialized, sorted element list.
class GaloisSubgroup {
 public:
  std::int64_t modulus() const { return modulus_; }
  const std::vector<std::int64_t>& generators() const { return generators_; }
  const std::vector<std::int64_t>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  bool contains(std::int64_t a) const;

  static GaloisSubgroup full(std::int64_t n);
  friend GaloisSubgroup subgroup_from_generators(std::int64_t n, const std::vector<std::int64_t>& gens);

 private:
  std::int64_t modulus_ = 1;
  std::vector<std::int64_t> generators_;
  std::vector<std::int64_t> elements_;
};

/// Closure of gens under multiplication mod N; throws on a generator not
/// coprime to N.
GaloisSubgroup subgroup_from_generators(std::int64_t n, const std::vector<std::int64_t>& gens);

/// Residues in [0, N) coprime to N (for N = 1 this is {0}).
std::vector<std::int64_t> units_mod(std::int64_t n);

/// Least divisor f of N with ker((Z/N)^* -> (Z/f)^*) contained in G.
/// Greedy descent through prime divisors of N.
std::int64_t conductor(const GaloisSubgroup& g);
/// Same quantity by scanning divisors in increasing order against the
/// literal definition.
std::int64_t conductor_by_definition(const GaloisSubgroup& g);

}  // namespace toreq
