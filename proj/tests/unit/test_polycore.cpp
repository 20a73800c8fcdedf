#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "toreq/cyclotomic.hpp"
#include "toreq/error.hpp"
#include "toreq/lpoly.hpp"
#include "toreq/orbit.hpp"
#include "toreq/parse.hpp"
#include "toreq/resultant.hpp"

using namespace toreq;

namespace {

LPoly P(const char* s, std::size_t n) { return parse_poly(s, n); }

}  // namespace

TEST(Parse, Examples) {
  LPoly f = P("x1*x2 - 1", 2);
  EXPECT_EQ(f.num_terms(), 2u);
  EXPECT_EQ(f.coefficient({1, 1}), Rat(1));
  EXPECT_EQ(f.coefficient({0, 0}), Rat(-1));

  LPoly g = P("3*x1^2 + 3*x1^2", 1);
  EXPECT_EQ(g.num_terms(), 1u);
  EXPECT_EQ(g.coefficient({2}), Rat(6));

  LPoly h = P("x1^-1 - x2", 2);
  EXPECT_EQ(h.coefficient({-1, 0}), Rat(1));
  EXPECT_EQ(h.coefficient({0, 1}), Rat(-1));
}

TEST(Parse, RationalsParensAndCancellation) {
  EXPECT_EQ(P("1/2*x1 + 1/2*x1", 1), P("x1", 1));
  EXPECT_EQ(P("(x1 + 1)*(x1 - 1)", 1), P("x1^2 - 1", 1));
  EXPECT_TRUE(P("x1 - x1", 1).is_zero());
  EXPECT_EQ(P("-3/6", 1), LPoly::constant(1, Rat(-1, 2)));
  EXPECT_EQ(P("x", 1), P("x1", 1));
}

TEST(Parse, Errors) {
  try {
    parse_poly("x1 +\n  * x2", 2);
    FAIL();
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.line(), 2);
    EXPECT_EQ(e.column(), 3);
  }
  EXPECT_THROW(parse_poly("x3", 2), SyntaxError);
  EXPECT_THROW(parse_poly("(x1 + 1", 1), SyntaxError);
  EXPECT_THROW(parse_poly("1/0", 1), SyntaxError);
  EXPECT_THROW(parse_poly("", 1), SyntaxError);
  EXPECT_THROW(parse_poly("x0", 1), SyntaxError);
}

TEST(Parse, RoundTrip) {
  std::mt19937_64 rng(1);
  for (int it = 0; it < 200; ++it) {
    std::size_t n = 1 + rng() % 3;
    LPoly f = oracle::random_lpoly(rng, n, 1 + static_cast<int>(rng() % 5), 4, 9);
    // Laurent and rational coefficients.
    f = f * LPoly::monomial(Exponent(n, -1), Rat(1, 1 + static_cast<long>(rng() % 4)));
    EXPECT_EQ(parse_poly(f.to_string(), n), f) << f.to_string();
  }
}

TEST(Cyclotomic, Examples) {
  EXPECT_EQ(cyclotomic(1), UPoly({-1, 1}));
  EXPECT_EQ(cyclotomic(4), UPoly({1, 0, 1}));
  EXPECT_EQ(cyclotomic(6), UPoly({1, -1, 1}));
  EXPECT_EQ(cyclotomic(6).to_string(), "x^2 - x + 1");
}

TEST(Cyclotomic, ProductOverDivisorsIsXmMinusOne) {
  for (std::uint64_t m = 1; m <= 200; ++m) {
    UPoly prod({1});
    for (auto d : divisors(m)) prod = prod * cyclotomic(d);
    EXPECT_EQ(prod, UPoly::x_pow_minus_one(m)) << m;
    EXPECT_EQ(cyclotomic(m).degree(), static_cast<long>(euler_phi(m)));
  }
}

TEST(Cyclotomic, MatchesIteratedDivision) {
  for (std::uint64_t m = 1; m <= 60; ++m) EXPECT_EQ(cyclotomic(m), oracle::cyclotomic_by_division(m)) << m;
  for (std::uint64_t m : {105u, 210u, 385u}) EXPECT_EQ(cyclotomic(m), oracle::cyclotomic_by_division(m));
}

TEST(Resultant, Examples) {
  EXPECT_EQ(resultant(UPoly({1, 0, 1}), UPoly({-1, 1})), 2);
  EXPECT_EQ(resultant(UPoly({-1, 1}), UPoly({-1, 1})), 0);
  EXPECT_EQ(resultant(cyclotomic(5), UPoly({-1, 1})), 5);
}

TEST(Resultant, AgreesWithSylvester) {
  std::mt19937_64 rng(2);
  for (int it = 0; it < 200; ++it) {
    UPoly f = oracle::random_upoly(rng, 12, 50), g = oracle::random_upoly(rng, 12, 50);
    EXPECT_EQ(resultant(f, g), oracle::sylvester_resultant(f, g));
  }
}

TEST(Resultant, SwapSign) {
  std::mt19937_64 rng(3);
  for (int it = 0; it < 200; ++it) {
    UPoly f = oracle::random_upoly(rng, 12, 20), g = oracle::random_upoly(rng, 12, 20);
    Int sign = ((f.degree() * g.degree()) % 2) ? -1 : 1;
    EXPECT_EQ(resultant(f, g), sign * resultant(g, f));
  }
}

TEST(Resultant, Multiplicative) {
  std::mt19937_64 rng(4);
  for (int it = 0; it < 100; ++it) {
    UPoly f = oracle::random_upoly(rng, 8, 20), g = oracle::random_upoly(rng, 8, 20),
          h = oracle::random_upoly(rng, 8, 20);
    EXPECT_EQ(resultant(f, g * h), resultant(f, g) * resultant(f, h));
  }
}

TEST(Resultant, LargeCoefficients) {
  std::mt19937_64 rng(5);
  for (int it = 0; it < 20; ++it) {
    UPoly f = oracle::random_upoly(rng, 10, 1 << 30);
    UPoly g = Int("123456789012345678901234567890") * oracle::random_upoly(rng, 10, 1000);
    EXPECT_EQ(resultant(f, g), oracle::sylvester_resultant(f, g));
  }
}

TEST(Resultant, CyclotomicNormMatchesGeneric) {
  std::mt19937_64 rng(6);
  for (std::uint64_t n = 1; n <= 80; ++n) {
    UPoly g = oracle::random_upoly(rng, static_cast<int>(n), 30);
    EXPECT_EQ(cyclotomic_norm(n, g), resultant(cyclotomic(n), g)) << n;
    EXPECT_EQ(vanishes_on_cyclotomic(n, g), resultant(cyclotomic(n), g) == 0);
  }
  EXPECT_EQ(cyclotomic_norm(12, cyclotomic(12) * UPoly({3, 1})), 0);
  EXPECT_TRUE(vanishes_on_cyclotomic(12, cyclotomic(12) * UPoly({3, 1})));
}

TEST(Substitute, Examples) {
  LPoly f = P("x1*x2 - 1", 2);
  EXPECT_EQ(substitute_monomial(f, ExpMatrix::identity(2)), f);
  EXPECT_EQ(substitute_monomial(f, ExpMatrix(2, 1, {1, 1})), P("x1^2 - 1", 1));
  EXPECT_EQ(substitute_monomial(P("x1 - x2", 2), ExpMatrix(2, 2, {0, 1, 1, 0})), P("x2 - x1", 2));
  EXPECT_THROW(substitute_monomial(f, ExpMatrix(3, 1, {1, 1, 1})), Error);
}

TEST(Substitute, CompositionLaw) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> entry(-3, 3);
  for (int it = 0; it < 100; ++it) {
    std::size_t n = 1 + rng() % 3, k = 1 + rng() % 3, l = 1 + rng() % 3;
    LPoly f = oracle::random_lpoly(rng, n, 4, 3, 5);
    ExpMatrix a(n, k), b(k, l);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < k; ++j) a(i, j) = entry(rng);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < l; ++j) b(i, j) = entry(rng);
    EXPECT_EQ(substitute_monomial(substitute_monomial(f, a), b), substitute_monomial(f, a * b));
  }
}

TEST(Substitute, Normalized) {
  auto r = substitute_monomial_normalized(P("x1*x2^-1 - 1", 2), ExpMatrix::identity(2));
  EXPECT_EQ(r.poly, P("x1 - x2", 2));
  EXPECT_EQ(r.shift, (Exponent{0, 1}));
}

TEST(ContentPrimitive, Examples) {
  auto a = content_primitive(UPoly({4, 6}));
  EXPECT_EQ(a.content, Rat(2));
  EXPECT_EQ(a.primitive, UPoly({2, 3}));
  auto b = content_primitive(P("1/3*x1 - 1", 1));
  EXPECT_EQ(b.content, Rat(1, 3));
  EXPECT_EQ(b.primitive, P("x1 - 3", 1));
  auto c = content_primitive(P("-2*x1", 1));
  EXPECT_EQ(c.content, Rat(-2));
  EXPECT_EQ(c.primitive, P("x1", 1));
  EXPECT_THROW(content_primitive(LPoly(1)), Error);
  EXPECT_EQ(content_primitive(P("6*x1*x2 - 4", 2)).primitive, P("3*x1*x2 - 2", 2));
}

TEST(Specialize, Examples) {
  auto a = specialize_to_orbit(P("x1*x2 - 1", 2), TorsionPoint(5, {1, 2}));
  EXPECT_EQ(a.g, UPoly({-1, 0, 0, 1}));
  EXPECT_EQ(a.scale, 1);
  EXPECT_TRUE(specialize_to_orbit(P("x1*x2 - 1", 2), TorsionPoint(4, {1, 3})).g.is_zero());
  EXPECT_EQ(specialize_to_orbit(P("x1 + x2", 2), TorsionPoint(3, {1, 2})).g, UPoly({0, 1, 1}));
  auto d = specialize_to_orbit(P("1/2*x1^-1 + 1/3", 1), TorsionPoint(4, {1}));
  EXPECT_EQ(d.scale, 6);
  EXPECT_EQ(d.g, UPoly({2, 0, 0, 3}));
}
