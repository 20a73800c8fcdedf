#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "oracles.hpp"
#include "toreq/arith.hpp"
#include "toreq/error.hpp"
#include "toreq/parse.hpp"
#include "toreq/sweep.hpp"

using namespace toreq;

namespace {

LPoly P(const char* s, std::size_t n) { return parse_poly(s, n); }

SweepRecord synthetic(std::int64_t n, std::int64_t d, double err) {
  SweepRecord r;
  r.zeta = TorsionPoint(n, {1});
  r.delta = d;
  r.err = err;
  return r;
}

}  // namespace

TEST(FamilySpec, ParseRoundTrip) {
  for (const char* s : {"diagonal-golden", "random-primitive", "u-fixed(1,-2,3)"})
    EXPECT_EQ(FamilySpec::parse(s).to_string(), s);
  EXPECT_THROW(FamilySpec::parse("golden"), Error);
  EXPECT_THROW(FamilySpec::parse("u-fixed(1,x)"), Error);
}

TEST(ParseNList, Forms) {
  EXPECT_EQ(parse_n_list("7,11,13"), (std::vector<std::int64_t>{7, 11, 13}));
  EXPECT_EQ(parse_n_list("2-10:4"), (std::vector<std::int64_t>{2, 6, 10}));
  EXPECT_EQ(parse_n_list("8-20", true), (std::vector<std::int64_t>{11, 13, 17, 19}));
  EXPECT_THROW(parse_n_list("10-2"), Error);
  EXPECT_THROW(parse_n_list("24-28", true), Error);
  EXPECT_THROW(parse_n_list(""), Error);
}

TEST(SweepSide, Parse) {
  EXPECT_EQ(SweepSide::parse("padic:7").p, 7u);
  EXPECT_FALSE(SweepSide::parse("arch").padic);
  EXPECT_THROW(SweepSide::parse("padic:9"), Error);
  EXPECT_THROW(SweepSide::parse("complex"), Error);
}

TEST(GenerateFamily, OneDimensionDeltaIsN) {
  for (auto spec : {FamilySpec::parse("diagonal-golden"), FamilySpec::parse("random-primitive"),
                    FamilySpec::parse("u-fixed(1)")})
    for (const auto& z : generate_family(1, {5, 7, 11}, spec)) EXPECT_EQ(delta(z), z.modulus());
}

TEST(GenerateFamily, GoldenN89) {
  auto fam = generate_family(2, {89}, FamilySpec::parse("diagonal-golden"));
  EXPECT_EQ(fam[0].exponents(), (std::vector<std::int64_t>{1, 55}));
  EXPECT_GE(delta(fam[0]), 8);
  EXPECT_EQ(delta(fam[0]), oracle::brute_delta(fam[0], 20));
}

TEST(GenerateFamily, UFixedControl) {
  auto fam = generate_family(2, {10}, FamilySpec::parse("u-fixed(1,1)"));
  EXPECT_EQ(delta(fam[0]), 1);
  EXPECT_THROW(generate_family(3, {10}, FamilySpec::parse("u-fixed(1,1)")), Error);
  EXPECT_THROW(generate_family(2, {}, FamilySpec::parse("u-fixed(1,1)")), Error);
}

TEST(GenerateFamily, RandomPrimitiveHasExactOrder) {
  FamilySpec spec = FamilySpec::parse("random-primitive");
  spec.seed = 3;
  auto ns = parse_n_list("2-300");
  for (std::size_t dims : {1, 2, 3}) {
    auto fam = generate_family(dims, ns, spec);
    ASSERT_EQ(fam.size(), ns.size());
    for (std::size_t i = 0; i < fam.size(); ++i) EXPECT_EQ(fam[i].order(), ns[i]);
    EXPECT_EQ(fam, generate_family(dims, ns, spec));
  }
}

TEST(GenerateFamily, GoldenDeltaGrows) {
  auto fam = generate_family(2, {101, 1009, 10007}, FamilySpec::parse("diagonal-golden"));
  EXPECT_LT(delta(fam[0]), delta(fam[1]));
  EXPECT_LT(delta(fam[1]), delta(fam[2]));
  auto fam3 = generate_family(3, {101, 1009, 10007}, FamilySpec::parse("diagonal-golden"));
  EXPECT_LT(delta(fam3[0]), delta(fam3[2]));
}

TEST(RunSweep, CoprimeCompositeErrZero) {
  std::vector<std::int64_t> ns;
  for (std::int64_t n = 6; n <= 120; ++n)
    if (n % 5 != 0 && factor_u64(static_cast<std::uint64_t>(n)).size() >= 2) ns.push_back(n);
  auto recs = run_sweep(P("x1 - 1", 1), generate_family(1, ns, FamilySpec::parse("u-fixed(1)")),
                        SweepSide::parse("padic:5"));
  ASSERT_EQ(recs.size(), ns.size());
  for (const auto& r : recs) {
    EXPECT_EQ(r.err, 0.0) << r.zeta.to_string();
    EXPECT_EQ(*r.avg_val, *r.limit_val);
  }
}

TEST(RunSweep, PrimePowerErr) {
  std::vector<std::int64_t> ns{5, 25, 125, 625, 3125};
  auto recs = run_sweep(P("x1 - 1", 1), generate_family(1, ns, FamilySpec::parse("u-fixed(1)")),
                        SweepSide::parse("padic:5"));
  for (std::size_t i = 0; i < recs.size(); ++i) {
    EXPECT_EQ(*recs[i].avg_val, Rat(1, euler_phi(static_cast<std::uint64_t>(ns[i]))));
    EXPECT_NEAR(recs[i].err, std::log(5.0) / static_cast<double>(recs[i].phi_n), 1e-15);
    if (i) EXPECT_LT(recs[i].err, recs[i - 1].err);
  }
}

TEST(RunSweep, ErrZeroIffValuationsMatch) {
  std::mt19937_64 rng(77);
  for (int it = 0; it < 10; ++it) {
    LPoly f = oracle::random_lpoly(rng, 2, 3, 3, 6);
    FamilySpec spec = FamilySpec::parse("random-primitive");
    spec.seed = it;
    auto recs = run_sweep(f, generate_family(2, parse_n_list("2-40"), spec), SweepSide::parse("padic:3"));
    for (const auto& r : recs) {
      if (r.vanished) {
        EXPECT_TRUE(std::isnan(r.err));
        continue;
      }
      EXPECT_GE(r.err, 0.0);
      EXPECT_EQ(r.err == 0.0, *r.avg_val == *r.limit_val);
    }
  }
}

TEST(RunSweep, VanishingRecordedInBand) {
  // x1 + x2 + 1 vanishes at (zeta_3, zeta_3^2).
  auto recs = run_sweep(P("x1 + x2 + 1", 2), {TorsionPoint(3, {1, 2}), TorsionPoint(5, {1, 2})},
                        SweepSide::parse("padic:2"));
  EXPECT_TRUE(recs[0].vanished);
  EXPECT_TRUE(std::isnan(recs[0].err));
  EXPECT_FALSE(recs[1].vanished);
}

TEST(RunSweep, PadicDeterministic) {
  auto fam = generate_family(2, parse_n_list("2-200"), FamilySpec::parse("diagonal-golden"));
  auto f = P("x1 + x2 + 3", 2);
  auto csv = [&] {
    std::string s = sweep_csv_header();
    for (const auto& r : run_sweep(f, fam, SweepSide::parse("padic:7"))) s += sweep_csv_row(r);
    return s;
  };
  EXPECT_EQ(csv(), csv());
}

TEST(RunSweep, ArchErrDecreases) {
  auto fam = generate_family(2, {13, 34, 89, 233, 610, 1597}, FamilySpec::parse("diagonal-golden"));
  SweepOptions opt;
  opt.budget = 200000;
  auto recs = run_sweep(P("x1 + x2 + 3", 2), fam, SweepSide::parse("arch"), opt);
  EXPECT_NEAR(recs[0].limit_float, std::log(3.0), 1e-3);
  EXPECT_LT(recs.back().err, recs.front().err);
  EXPECT_LT(recs.back().err, 1e-3);
}

TEST(SweepCsv, HeaderAndRow) {
  EXPECT_EQ(sweep_csv_header(),
            "side,p,N,u,delta,phiN,avg_val_num,avg_val_den,limit_val_num,limit_val_den,avg_float,limit_float,err,"
            "vanished,micros\n");
  auto recs = run_sweep(P("x1 - 1", 1), {TorsionPoint(5, {1})}, SweepSide::parse("padic:5"));
  EXPECT_EQ(sweep_csv_row(recs[0]).substr(0, 31), "padic,5,5,1,5,4,1,4,0,1,-0.4023");
}

TEST(FitDecay, ExactPowerLaws) {
  std::vector<SweepRecord> one, half;
  for (std::int64_t d = 2; d <= 40; d += 3) {
    one.push_back(synthetic(d, d, 1.0 / static_cast<double>(d)));
    half.push_back(synthetic(d, d, 3.0 / std::sqrt(static_cast<double>(d))));
  }
  auto f1 = fit_decay(one, 1);
  EXPECT_NEAR(f1.kappa_hat, 1.0, 1e-9);
  EXPECT_NEAR(f1.intercept, 0.0, 1e-9);
  EXPECT_NEAR(f1.r_squared, 1.0, 1e-9);
  EXPECT_TRUE(f1.significant);
  auto f2 = fit_decay(half, 1);
  EXPECT_NEAR(f2.kappa_hat, 0.5, 1e-9);
  EXPECT_NEAR(f2.intercept, -std::log(3.0), 1e-9);
}

TEST(FitDecay, DuplicateInvariant) {
  std::mt19937_64 rng(5);
  std::vector<SweepRecord> recs;
  for (std::int64_t d = 2; d <= 30; ++d)
    recs.push_back(synthetic(d, d, std::pow(static_cast<double>(d), -0.7) * (1 + 0.3 * (rng() % 100) / 100.0)));
  auto base = fit_decay(recs, 1);
  auto dup = recs;
  dup.push_back(recs[3]);
  dup.push_back(recs[3]);
  dup.insert(dup.begin(), recs[10]);
  auto again = fit_decay(dup, 1);
  EXPECT_EQ(base.kappa_hat, again.kappa_hat);
  EXPECT_EQ(base.r_squared, again.r_squared);
  EXPECT_EQ(base.points_used, again.points_used);
}

TEST(FitDecay, DeltaMinAndInsufficient) {
  std::vector<SweepRecord> recs;
  for (std::int64_t d = 1; d <= 8; ++d) recs.push_back(synthetic(d, d, 1.0 / static_cast<double>(d)));
  recs.push_back(synthetic(100, 100, 0.0));
  EXPECT_EQ(fit_decay(recs, 1).points_used, 8u);
  try {
    fit_decay(recs, 5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InsufficientData);
  }
}

TEST(FitDecay, ControlFamilyNotSignificant) {
  // Constant delta: either too few distinct points or zero variance in log delta.
  auto fam = generate_family(2, parse_n_list("20-80"), FamilySpec::parse("u-fixed(1,1)"));
  auto recs = run_sweep(P("x1 + x2 + 3", 2), fam, SweepSide::parse("arch"), SweepOptions{20000, 0, false});
  for (const auto& r : recs) EXPECT_EQ(r.delta, 1);
  try {
    auto fit = fit_decay(recs, 1);
    EXPECT_FALSE(fit.significant);
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InsufficientData);
  }
}

TEST(FitDecay, PrimePowerSlopeApproachesOne) {
  std::vector<std::int64_t> ns;
  for (int k = 1; k <= 7; ++k) ns.push_back(int_pow(5, k).get_si());
  auto recs = run_sweep(P("x1 - 1", 1), generate_family(1, ns, FamilySpec::parse("u-fixed(1)")),
                        SweepSide::parse("padic:5"));
  auto fit = fit_decay(recs, 1);
  EXPECT_NEAR(fit.kappa_hat, 1.0, 1e-9);
  EXPECT_NEAR(fit.r_squared, 1.0, 1e-9);
  EXPECT_EQ(fit.points_used, 7u);
}

TEST(FitDecay, SummaryFormat) {
  std::vector<SweepRecord> recs;
  for (std::int64_t d = 2; d <= 6; ++d) recs.push_back(synthetic(d, d, 1.0 / static_cast<double>(d)));
  auto s = fit_decay(recs, 1).summary();
  EXPECT_EQ(s.rfind("kappa_hat=", 0), 0u);
  EXPECT_NE(s.find("\nr_squared="), std::string::npos);
  EXPECT_NE(s.find("\npoints_used=5\n"), std::string::npos);
}
