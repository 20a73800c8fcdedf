#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "toreq/arch.hpp"
#include "toreq/cyclotomic.hpp"
#include "toreq/error.hpp"
#include "toreq/parse.hpp"
#include "toreq/sunit.hpp"

using namespace toreq;

namespace {

LPoly P(const char* s, std::size_t n) { return parse_poly(s, n); }

}  // namespace

TEST(PrimeSet, ParseAndValidate) {
  EXPECT_EQ(PrimeSet::parse("5,2,5").primes(), (std::vector<std::uint64_t>{2, 5}));
  EXPECT_TRUE(PrimeSet::parse("").empty());
  EXPECT_THROW(PrimeSet::parse("4"), Error);
  EXPECT_THROW(PrimeSet::parse("2,,3"), Error);
  EXPECT_THROW(PrimeSet::parse("x"), Error);
}

TEST(SIntegerCoeffs, Examples) {
  EXPECT_TRUE(s_integer_coeffs(P("x1 + 3", 1), PrimeSet()));
  EXPECT_TRUE(s_integer_coeffs(P("1/2*x1 + 1", 1), PrimeSet({2})));
  EXPECT_FALSE(s_integer_coeffs(P("1/2*x1 + 1", 1), PrimeSet({3})));
}

TEST(SIntegerCoeffs, MonotoneInS) {
  std::mt19937_64 rng(51);
  const std::vector<std::uint64_t> pool{2, 3, 5, 7, 11};
  for (int it = 0; it < 200; ++it) {
    LPoly f = P("x1", 1) + LPoly::constant(1, Rat(1 + static_cast<long>(rng() % 30), 1 + static_cast<long>(rng() % 30)));
    std::vector<std::uint64_t> s;
    bool prev = s_integer_coeffs(f, PrimeSet(s));
    for (auto q : pool) {
      s.push_back(q);
      bool now = s_integer_coeffs(f, PrimeSet(s));
      EXPECT_TRUE(!prev || now);
      prev = now;
    }
  }
}

TEST(SUnitTest, Examples) {
  auto a = s_unit_test(P("x1 - 1", 1), TorsionPoint(4, {1}), PrimeSet({2}));
  EXPECT_EQ(a.status, SUnitStatus::Yes);
  EXPECT_EQ(a.factors, (PrimeExponents{{2, 1}}));
  EXPECT_EQ(format_factorization(a.factors), "2^1");
  auto b = s_unit_test(P("x1 - 1", 1), TorsionPoint(4, {1}), PrimeSet({3}));
  EXPECT_EQ(b.status, SUnitStatus::No);
  ASSERT_TRUE(b.witness.has_value());
  EXPECT_EQ(*b.witness, 2);
  auto c = s_unit_test(P("x1 + 1", 1), TorsionPoint(3, {1}), PrimeSet());
  EXPECT_EQ(c.status, SUnitStatus::Yes);
  EXPECT_TRUE(c.factors.empty());
  EXPECT_EQ(format_factorization(c.factors), "1");
  EXPECT_EQ(s_unit_test(P("x1 - 1", 1), TorsionPoint(1, {0}), PrimeSet()).status, SUnitStatus::Zero);
  EXPECT_THROW(s_unit_test(P("1/2*x1", 1), TorsionPoint(3, {1}), PrimeSet()), Error);
}

TEST(SUnitTest, LargePrimeAndCompositeCofactors) {
  // At N = 1 the norm of x - c is 1 - c.
  auto a = s_unit_test(P("x1 - 1000004", 1), TorsionPoint(1, {0}), PrimeSet(), 1000);
  ASSERT_EQ(a.status, SUnitStatus::No);
  EXPECT_EQ(*a.witness, 1000003);
  // 1000003 * 1000033 has no factor below the trial bound.
  auto b = s_unit_test(P("x1 - 1000036000100", 1), TorsionPoint(1, {0}), PrimeSet(), 1000);
  ASSERT_EQ(b.status, SUnitStatus::No);
  EXPECT_FALSE(b.witness.has_value());
  EXPECT_EQ(b.reason, "composite cofactor");
}

TEST(SUnitTest, YesFactorizationReproducesNorm) {
  std::mt19937_64 rng(52);
  PrimeSet s({2, 3, 5, 7});
  int yes = 0;
  for (int it = 0; it < 300; ++it) {
    LPoly f = oracle::random_lpoly(rng, 2, 2, 3, 3);
    std::int64_t N = 1 + static_cast<std::int64_t>(rng() % 30);
    TorsionPoint z(N, {static_cast<std::int64_t>(rng() % 30), static_cast<std::int64_t>(rng() % 30)});
    auto r = s_unit_test(f, z, s);
    if (r.status != SUnitStatus::Yes) continue;
    ++yes;
    Int prod = 1;
    for (auto [q, e] : r.factors) prod *= int_pow(q, e);
    EXPECT_EQ(prod, abs(r.norm));
  }
  EXPECT_GT(yes, 10);
}

TEST(SUnitTest, ConjugationInvariance) {
  std::mt19937_64 rng(53);
  PrimeSet s({2, 3});
  for (int it = 0; it < 100; ++it) {
    LPoly f = oracle::random_lpoly(rng, 2, 3, 3, 4);
    std::int64_t N = 2 + static_cast<std::int64_t>(rng() % 40);
    TorsionPoint z(N, {static_cast<std::int64_t>(rng() % 40), static_cast<std::int64_t>(rng() % 40)});
    auto units = units_mod(N);
    auto a = s_unit_test(f, z, s);
    auto b = s_unit_test(f, z.conjugate(units[rng() % units.size()]), s);
    EXPECT_EQ(a.status, b.status);
    EXPECT_EQ(a.norm, b.norm);
  }
}

TEST(ProductFormula, Examples) {
  auto a = product_formula_check(LPoly::from_upoly(cyclotomic(6)), 10000);
  EXPECT_NEAR(a.sum, 0, 1e-9);
  auto b = product_formula_check(P("2*x1 - 2", 1), 10000);
  EXPECT_NEAR(b.sum, 0, 1e-9);
  EXPECT_NEAR(b.per_prime.at(2), -std::log(2.0), 1e-15);
  auto c = product_formula_check(P("x1 + x2 + 3", 2), 100000);
  EXPECT_LE(std::fabs(c.sum - std::log(3.0)), c.error_bound);
  EXPECT_TRUE(c.per_prime.empty());
  auto d = product_formula_check(P("3/4*x1 - 3/4", 1), 10000);
  EXPECT_NEAR(d.sum, 0, 1e-9);
}

TEST(ProductFormula, VanishesForExtendedCyclotomicTimesContent) {
  // m(c Q) + sum log |c Q|_p = 0 for Q of measure zero and content 1.
  for (long c : {1L, 6L, 12L, 35L}) {
    LPoly f = LPoly::constant(2, Rat(c)) * parse_poly("x1^2*x2^2 + x1*x2 + 1", 2);
    auto r = product_formula_check(f, 100000);
    EXPECT_LE(std::fabs(r.sum), std::max(r.error_bound, 1e-9)) << c;
  }
}

TEST(ScanPoints, CoprimeOnlyCoversEveryOrbitOnce) {
  for (std::int64_t N = 1; N <= 12; ++N) {
    auto pts = scan_points(2, N, ScanStrategy{}, 0);
    std::set<std::vector<std::int64_t>> covered;
    for (const auto& z : pts) {
      EXPECT_EQ(z.order(), N);
      for (auto c : units_mod(N)) EXPECT_TRUE(covered.insert(z.conjugate(c).exponents()).second || N <= 2);
    }
    std::size_t full = 0;
    for (std::int64_t a = 0; a < N; ++a)
      for (std::int64_t b = 0; b < N; ++b)
        if (std::gcd(std::gcd(a, b), N) == 1) ++full;
    EXPECT_EQ(covered.size(), full);
  }
  EXPECT_EQ(scan_points(2, 5, ScanStrategy{ScanStrategy::All, 0}, 0).size(), 25u);
  auto r = scan_points(2, 50, ScanStrategy::parse("random(7)"), 3);
  EXPECT_EQ(r.size(), 7u);
  EXPECT_EQ(r.front(), scan_points(2, 50, ScanStrategy::parse("random(7)"), 3).front());
  for (const auto& z : r) EXPECT_EQ(z.order(), 50);
  EXPECT_THROW(ScanStrategy::parse("random(0)"), Error);
  EXPECT_THROW(ScanStrategy::parse("most"), Error);
}

TEST(IhScan, Examples) {
  // Units count as S-units: Phi_N(1) = 1 when N is not a prime power, so
  // those N are hits with an empty factorization. The hits carrying a
  // nontrivial S-part are the powers of 2, where Phi_N(1) = 2.
  auto a = ih_scan(P("x1 - 1", 1), PrimeSet({2}), 1, 20, ScanStrategy{});
  std::vector<std::int64_t> with_s_part, units;
  for (const auto& h : a.hits) {
    (h.factors.empty() ? units : with_s_part).push_back(h.zeta.modulus());
    EXPECT_EQ(h.delta, h.zeta.modulus());
  }
  EXPECT_EQ(with_s_part, (std::vector<std::int64_t>{16, 8, 4, 2}));
  EXPECT_EQ(units, (std::vector<std::int64_t>{20, 18, 15, 14, 12, 10, 6}));
  EXPECT_EQ(a.max_delta, 20);

  auto b = ih_scan(P("x1 + x2 + 3", 2), PrimeSet(), 2, 50, ScanStrategy{});
  for (const auto& h : b.hits) {
    auto t = s_unit_test(P("x1 + x2 + 3", 2), h.zeta, PrimeSet());
    EXPECT_EQ(t.status, SUnitStatus::Yes);
    EXPECT_EQ(abs(t.norm), 1);
  }

  auto c = ih_scan(P("x1", 1), PrimeSet(), 1, 10, ScanStrategy{ScanStrategy::All, 0});
  EXPECT_EQ(c.hits.size(), 55u);
  EXPECT_EQ(c.points_tested, 55u);
  std::size_t total = 0;
  for (auto [d, k] : c.delta_histogram) total += k;
  EXPECT_EQ(total, 55u);
}
