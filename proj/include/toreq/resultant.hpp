#pragma once

#include <cstdint>
#include <vector>

#include "toreq/upoly.hpp"

namespace toreq {

/// Res(f, g) over Z, computed modulo word-sized primes until their product
/// exceeds twice the Hadamard bound of the Sylvester matrix, then lifted by
/// CRT into the symmetric range. Res(f, 0) = Res(0, g) = 0; for nonzero
/// constants Res(c, g) = c^deg(g).
Int resultant(const UPoly& f, const UPoly& g);

/// Res(Phi_N, g) = prod over primitive N-th roots w of g(w).
///
/// Uses primes q = 1 (mod N), where Phi_N splits into linear factors, so each
/// residue is a product of evaluations at powers of an N-th root of unity
/// mod q. The CRT bound is min(Hadamard, ||g||_1^phi(N)).
Int cyclotomic_norm(std::uint64_t n, const UPoly& g);

/// True iff Phi_N divides g (equivalently g vanishes at one, hence every,
/// primitive N-th root of unity).
bool vanishes_on_cyclotomic(std::uint64_t n, const UPoly& g);

/// Res(f, g) mod q by the Euclidean algorithm over F_q. Inputs are
/// coefficient vectors reduced mod q; the true leading coefficients must be
/// nonzero mod q.
std::uint64_t resultant_mod(std::vector<std::uint64_t> f, std::vector<std::uint64_t> g, std::uint64_t q);

}  // namespace toreq
