#include "toreq/cyclotomic.hpp"

#include <map>
#include <mutex>

#include "toreq/arith.hpp"
#include "toreq/error.hpp"

namespace toreq {
namespace {

UPoly build_cyclotomic(std::uint64_t m) {
  const auto divs = divisors(m);
  std::vector<Int> c{Int(1)};
  // Multiply in the (x^d - 1) with positive Moebius sign first, then divide.
  for (std::uint64_t d : divs) {
    if (mobius(m / d) != 1) continue;
    std::vector<Int> next(c.size() + d);
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i + d] += c[i];
      next[i] -= c[i];
    }
    c = std::move(next);
  }
  for (std::uint64_t d : divs) {
    if (mobius(m / d) != -1) continue;
    std::vector<Int> q(c.size() - d);
    for (std::size_t i = 0; i < q.size(); ++i) {
      q[i] = -c[i];
      if (i >= d) q[i] += q[i - d];
    }
    c = std::move(q);
  }
  UPoly result(std::move(c));
  if (result.lead() < 0) result = -result;
  return result;
}

}  // namespace

const UPoly& cyclotomic(std::uint64_t m) {
  if (m == 0) throw Error(ErrorKind::InvalidArgument, "cyclotomic: m must be positive");
  static std::mutex mutex;
  static std::map<std::uint64_t, UPoly> cache;
  {
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
  }
  UPoly built = build_cyclotomic(m);
  std::lock_guard<std::mutex> lock(mutex);
  return cache.emplace(m, std::move(built)).first->second;
}

}  // namespace toreq
