#pragma once

#include <cstdint>

#include "toreq/upoly.hpp"

namespace toreq {

/// The m-th cyclotomic polynomial, monic of degree phi(m). Built from the
/// Moebius product over divisors; results are memoized and the returned
/// reference stays valid for the life of the program.
const UPoly& cyclotomic(std::uint64_t m);

}  // namespace toreq
