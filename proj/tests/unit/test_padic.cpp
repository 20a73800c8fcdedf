#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "toreq/cyclotomic.hpp"
#include "toreq/error.hpp"
#include "toreq/local_field.hpp"
#include "toreq/padic.hpp"
#include "toreq/parse.hpp"
#include "toreq/resultant.hpp"

using namespace toreq;

namespace {

LPoly P(const char* s, std::size_t n) { return parse_poly(s, n); }

}  // namespace

TEST(PadicLogValue, Rendering) {
  EXPECT_EQ((PadicLogValue{5, Rat(1, 4)}).to_string(), "5^(-1/4)");
  EXPECT_EQ((PadicLogValue{5, Rat(0)}).to_string(), "5^(0)");
  EXPECT_EQ((PadicLogValue{3, Rat(-2)}).to_string(), "3^(2)");
  EXPECT_NEAR((PadicLogValue{5, Rat(1, 4)}).value(), -0.25 * std::log(5.0), 1e-15);
  EXPECT_EQ((PadicLogValue{5, Rat(1, 4)} + PadicLogValue{5, Rat(1, 4)}).valuation, Rat(1, 2));
  EXPECT_THROW((PadicLogValue{5, 0} + PadicLogValue{3, 0}), Error);
}

TEST(GaussNorm, Examples) {
  EXPECT_EQ(gauss_norm_log(P("3*x1^2 + 5", 1), 5).valuation, 0);
  EXPECT_EQ(gauss_norm_log(P("5*x1 + 25", 1), 5).valuation, 1);
  EXPECT_EQ(gauss_norm_log(P("1/5*x1 - 1", 1), 5).valuation, -1);
  EXPECT_THROW(gauss_norm_log(LPoly(1), 5), Error);
  EXPECT_THROW(gauss_norm_log(P("x1", 1), 6), Error);
}

TEST(OrbitAverage, Examples) {
  EXPECT_EQ(orbit_average_padic(P("x1 - 1", 1), TorsionPoint(5, {1}), 5).valuation, Rat(1, 4));
  for (std::uint64_t p : {2, 3, 5, 7}) {
    EXPECT_EQ(orbit_average_padic(P("x1 - 1", 1), TorsionPoint(6, {1}), p).valuation, 0);
    EXPECT_EQ(orbit_average_padic(P("x1 + x2", 2), TorsionPoint(3, {1, 2}), p).valuation, 0);
  }
  try {
    orbit_average_padic(P("x1*x2 - 1", 2), TorsionPoint(4, {1, 3}), 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ZeroSpecialization);
  }
  try {
    orbit_average_padic(P("x1 + 1", 1), TorsionPoint(2, {1}), 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::VanishesOnOrbit);
  }
}

TEST(OrbitAverage, RationalCoefficients) {
  // (1/5)(x - 1) at N = 5: 1/4 - 1.
  EXPECT_EQ(orbit_average_padic(P("1/5*x1 - 1/5", 1), TorsionPoint(5, {1}), 5).valuation, Rat(-3, 4));
  EXPECT_EQ(orbit_average_padic(P("10*x1 - 10", 1), TorsionPoint(5, {1}), 5).valuation, Rat(5, 4));
}

TEST(OrbitAverage, BoundedByGaussNorm) {
  std::mt19937_64 rng(21);
  for (int it = 0; it < 200; ++it) {
    std::size_t n = 1 + rng() % 2;
    LPoly f = oracle::random_lpoly(rng, n, 3, 4, 30);
    std::int64_t N = 1 + static_cast<std::int64_t>(rng() % 40);
    std::vector<std::int64_t> u(n);
    for (auto& x : u) x = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(N));
    for (std::uint64_t p : {2, 3, 5}) {
      try {
        EXPECT_GE(orbit_average_padic(f, TorsionPoint(N, u), p).valuation, gauss_norm_log(f, p).valuation);
      } catch (const Error&) {
      }
    }
  }
}

TEST(RootOfUnityDistance, Examples) {
  EXPECT_EQ(root_of_unity_distance(6, 5).valuation, 0);
  EXPECT_EQ(root_of_unity_distance(3, 3).valuation, Rat(1, 2));
  EXPECT_EQ(root_of_unity_distance(8, 2).valuation, Rat(1, 4));
  EXPECT_EQ(root_of_unity_distance(9, 2).valuation, 0);
  try {
    root_of_unity_distance(1, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DegenerateDistance);
  }
}

TEST(RootOfUnityDistance, MatchesCyclotomicValue) {
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61}) {
    for (std::uint64_t q = p; q <= 64; q *= p) {
      Rat expected(Int(valuation(cyclotomic(q).evaluate(1), p)), Int(static_cast<unsigned long>(euler_phi(q))));
      expected.canonicalize();
      EXPECT_EQ(root_of_unity_distance(q, p).valuation, expected);
      EXPECT_EQ(orbit_average_padic(P("x1 - 1", 1), TorsionPoint(static_cast<std::int64_t>(q), {1}), p).valuation,
                expected);
    }
  }
}

TEST(CyclotomicModP, FactorsMultiplyBack) {
  for (std::uint64_t p : {2, 3, 5, 7, 11}) {
    for (std::uint64_t m = 1; m <= 60; ++m) {
      if (m % p == 0) continue;
      const auto& fs = factor_cyclotomic_mod_p(m, p);
      const std::uint64_t f = multiplicative_order(p % m, m);
      EXPECT_EQ(fs.size() * f, euler_phi(m));
      std::vector<std::uint64_t> prod{1};
      for (const auto& h : fs) {
        EXPECT_EQ(h.size() - 1, f);
        EXPECT_EQ(h.back(), 1u);
        std::vector<std::uint64_t> r(prod.size() + h.size() - 1, 0);
        for (std::size_t i = 0; i < prod.size(); ++i)
          for (std::size_t j = 0; j < h.size(); ++j) r[i + j] = (r[i + j] + prod[i] * h[j]) % p;
        prod = r;
      }
      const auto& phi = cyclotomic(m).coeffs();
      ASSERT_EQ(prod.size(), phi.size());
      for (std::size_t i = 0; i < phi.size(); ++i) EXPECT_EQ(prod[i], reduce_mod(phi[i], p));
      EXPECT_TRUE(std::is_sorted(fs.begin(), fs.end()));
    }
  }
}

TEST(LocalValuation, Examples) {
  EXPECT_EQ(local_valuation(P("x1 - 1", 1), TorsionPoint(5, {1}), make_place(2, 5, 0), 1), 0);
  EXPECT_EQ(make_place(2, 5, 0).residue_degree, 4u);
  EXPECT_EQ(local_valuation(P("x1 - 1", 1), TorsionPoint(3, {1}), make_place(3, 3, 0), 1), Rat(1, 2));
  try {
    local_valuation(P("x1 + 1", 1), TorsionPoint(2, {1}), make_place(2, 2, 0), 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::VanishesAtPoint);
  }
  EXPECT_THROW(make_place(2, 7, 5), Error);
}

TEST(LocalValuation, RootOfUnityMinusOne) {
  // |w - 1|_p for every conjugate of every root of unity of order N.
  for (std::uint64_t p : {2, 3, 5}) {
    for (std::uint64_t n = 2; n <= 40; ++n) {
      Rat expected = root_of_unity_distance(n, p).valuation;
      for (const auto& place : places_above(p, n))
        for (auto a : units_mod(static_cast<std::int64_t>(n)))
          EXPECT_EQ(local_valuation(P("x1 - 1", 1), TorsionPoint(static_cast<std::int64_t>(n), {1}), place, a),
                    expected)
              << p << " " << n << " " << a;
    }
  }
}

TEST(LocalValuation, HighValuationNeedsMorePrecision) {
  // x - 1 + 2^20 at N = 1: valuation 20 > initial precision 8.
  EXPECT_EQ(local_valuation(P("x1 + 1048575", 1), TorsionPoint(1, {0}), make_place(2, 1, 0), 0), 20);
  try {
    local_valuation(P("x1 + 1048575", 1), TorsionPoint(1, {0}), make_place(2, 1, 0), 0, 16);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::PrecisionExhausted);
  }
}

TEST(SubgroupAverage, Examples) {
  LPoly f = P("x1 - 1", 1);
  EXPECT_EQ(subgroup_average_padic(f, TorsionPoint(8, {1}), subgroup_from_generators(8, {7}), make_place(2, 8, 0))
                .valuation,
            Rat(1, 4));
  EXPECT_EQ(subgroup_average_padic(f, TorsionPoint(5, {1}), subgroup_from_generators(5, {4}), make_place(2, 5, 0))
                .valuation,
            0);
}

TEST(SubgroupAverage, FullGroupMatchesResultant) {
  std::mt19937_64 rng(22);
  for (int it = 0; it < 6; ++it) {
    std::size_t n = 1 + rng() % 2;
    LPoly f = oracle::random_lpoly(rng, n, 3, 3, 12);
    for (std::int64_t N = 1; N <= 40; ++N) {
      std::vector<std::int64_t> u(n);
      for (auto& x : u) x = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(N));
      TorsionPoint z(N, u);
      for (std::uint64_t p : {2, 3, 5}) {
        Rat expected;
        try {
          expected = orbit_average_padic(f, z, p).valuation;
        } catch (const Error&) {
          continue;
        }
        for (const auto& place : places_above(p, static_cast<std::uint64_t>(N)))
          EXPECT_EQ(subgroup_average_padic(f, z, GaloisSubgroup::full(N), place).valuation, expected)
              << f.to_string() << " " << z.to_string() << " p=" << p << " place " << place.factor_index;
      }
    }
  }
}

TEST(LocalValuation, SumOverPlaceMatchesConjugateProduct) {
  // N = 7, p = 2: Phi_7 = (x^3 + x + 1)(x^3 + x^2 + 1) mod 2. The two places see
  // the conjugates in complementary ways but have the same total.
  LPoly f = P("x1^3 + x1 + 1", 1);
  TorsionPoint z(7, {1});
  Rat total0 = 0, total1 = 0;
  auto places = places_above(2, 7);
  ASSERT_EQ(places.size(), 2u);
  for (auto a : units_mod(7)) {
    total0 += local_valuation(f, z, places[0], a);
    total1 += local_valuation(f, z, places[1], a);
  }
  EXPECT_EQ(total0, Rat(Int(valuation(cyclotomic_norm(7, UPoly({1, 1, 0, 1})), 2))));
  EXPECT_EQ(total0, total1);
  EXPECT_GT(total0, 0);
}

TEST(CEstimate, Examples) {
  std::vector<TorsionPoint> sample;
  for (std::int64_t N = 1; N <= 12; ++N) sample.emplace_back(N, std::vector<std::int64_t>{1});
  EXPECT_EQ(c_estimate(P("x1", 1), sample, 3).gap, 0);

  std::vector<TorsionPoint> s2{TorsionPoint(2, {1}), TorsionPoint(3, {1}), TorsionPoint(4, {1})};
  auto c = c_estimate(P("x1 - 1", 1), s2, 2);
  EXPECT_EQ(c.gap, 1);
  EXPECT_NEAR(c.value, std::log(2.0), 1e-15);
  EXPECT_EQ(c.witness, TorsionPoint(2, {1}));

  std::vector<TorsionPoint> s3;
  for (std::int64_t N : {77, 91, 143, 187, 221}) s3.emplace_back(N, std::vector<std::int64_t>{1});
  for (std::uint64_t p : {2, 3, 5}) EXPECT_EQ(c_estimate(P("x1 - 1", 1), s3, p).gap, 0);

  try {
    c_estimate(P("x1 - 1", 1), {TorsionPoint(1, {0})}, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::AllVanish);
  }
}

TEST(CEstimate, MonotoneInSample) {
  LPoly f = P("x1^2 + x1 + 7", 1);
  std::vector<TorsionPoint> sample;
  Rat prev = 0;
  for (std::int64_t N = 1; N <= 30; ++N) {
    sample.emplace_back(N, std::vector<std::int64_t>{1});
    Rat now = c_estimate(f, sample, 7).gap;
    EXPECT_GE(now, prev);
    EXPECT_GE(now, 0);
    prev = now;
  }
}

TEST(CountingBound, UnramifiedValuationSum) {
  for (const char* text : {"x1^2 + x1 + 7", "3*x1^3 + x1 + 5", "x1^4 - x1 + 1"}) {
    LPoly f = P(text, 1);
    UPoly g = f.to_upoly();
    for (std::uint64_t p : {2, 3, 5, 7}) {
      if (gauss_norm_log(f, p).valuation != 0) continue;
      Int sum = 0;
      for (std::uint64_t N = 1; N <= 50; ++N)
        if (N % p) sum += valuation(cyclotomic_norm(N, g), p);
      EXPECT_LE(sum, g.degree()) << text << " p=" << p;
    }
  }
}
