#include <prefspace/econ.hpp>

#include <gtest/gtest.h>

using namespace prefspace;

namespace {

// Max |CES - target| over the 21x21 grid; reproduced independently with
// 40-digit mpmath (agreement within 2e-15).
const std::vector<double> kCobbDouglasDeviations{1.2444725900224363, 0.27063238818655022, 0.027049483690824161,
                                                 0.0027053311546818559};
const std::vector<double> kLeontiefDeviations{1.7138732734810569, 0.52364620176576437, 0.055809933745041285,
                                              0.0055132875898848965};

}  // namespace

TEST(Utility, Examples) {
  EXPECT_DOUBLE_EQ(utility(cobb_douglas(0.5), 4.0, 9.0), 6);
  EXPECT_DOUBLE_EQ(utility(leontief(0.5), 4.0, 9.0), 2);
  EXPECT_DOUBLE_EQ(utility(ces_rho(0.5, 1), 1.0, 1.0), 1);
  EXPECT_DOUBLE_EQ(ces_rho(0.5, 1).sigma, 0.5);
  for (double s : {0.001, 0.1, 0.5, 1.001, 2.0, 10.0}) EXPECT_NEAR(utility(ces(0.3, s), 2.5, 2.5), 2.5, 1e-12) << s;
}

TEST(Utility, Domain) {
  EXPECT_THROW(utility(cobb_douglas(0.5), -1.0, 1.0), DomainError);
  EXPECT_THROW(utility(ces(0.5, 0.5), 0.0, 1.0), DomainError);  // rho = 1
  EXPECT_NO_THROW(utility(ces(0.5, 2), 0.0, 1.0));
  EXPECT_NEAR(utility(ces(0.5, 2), 0.0, 1.0), 0.25, 1e-15);  // 0.5^2 * 1
  EXPECT_THROW(cobb_douglas(1), DomainError);
  EXPECT_THROW(ces(0.5, 1), DomainError);
  EXPECT_THROW(ces(0.5, 0), DomainError);
  EXPECT_THROW(ces_rho(0.5, -1), DomainError);
}

TEST(Utility, HomogeneousOfDegreeOne) {
  Rng rng(5);
  for (int i = 0; i < 500; ++i) {
    const auto p = ces(rng.uniform(0.05, 0.95), rng.coin() ? rng.uniform(0.05, 0.95) : rng.uniform(1.05, 8));
    const double x1 = rng.uniform(0.1, 10), x2 = rng.uniform(0.1, 10), l = rng.uniform(0.1, 10);
    EXPECT_NEAR(utility(p, l * x1, l * x2), l * utility(p, x1, x2), 1e-12 * l * utility(p, x1, x2));
  }
}

TEST(Demand, Examples) {
  const auto cd = demand(cobb_douglas(0.3), {1, 1, 10});
  EXPECT_NEAR(cd.x1, 3, 1e-14);
  EXPECT_NEAR(cd.x2, 7, 1e-14);
  EXPECT_EQ(leontief_demand(Rational(1, 2), Budget<Rational>{1, 1, 10}), (Bundle<Rational>{5, 5}));
  EXPECT_EQ(cobb_douglas_demand(Rational(3, 10), Budget<Rational>{1, 1, 10}), (Bundle<Rational>{3, 7}));
  for (const Budget<double>& b : lattice_budgets()) {
    const auto p = ces(0.5, 2);
    EXPECT_LE(relative_error(demand_oracle(p, b), demand(p, b)), 1e-8);
  }
  EXPECT_THROW(demand(cobb_douglas(0.5), {0, 1, 1}), DomainError);
}

TEST(Demand, OracleAgreesOnKinks) {
  for (double a : {0.2, 0.5, 0.8}) {
    const Budget<double> b{2, 3, 12};
    EXPECT_LE(relative_error(demand_oracle(leontief(a), b), demand(leontief(a), b)), 1e-8);
    EXPECT_LE(relative_error(demand_oracle(cobb_douglas(a), b), demand(cobb_douglas(a), b)), 1e-8);
  }
}

TEST(Demand, WalrasAndZeroHomogeneity) {
  Rng rng(9);
  for (int i = 0; i < 300; ++i) {
    const Budget<double> b{rng.uniform(0.1, 5), rng.uniform(0.1, 5), rng.uniform(1, 50)};
    const double a = rng.uniform(0.05, 0.95);
    for (const auto& p : {cobb_douglas(a), leontief(a), ces(a, rng.uniform(0.1, 4))}) {
      const auto x = demand(p, b);
      EXPECT_NEAR(b.p1 * x.x1 + b.p2 * x.x2, b.w, 1e-12 * b.w);
      for (double l : {0.5, 2.0, 10.0}) {
        const auto y = demand(p, {l * b.p1, l * b.p2, l * b.w});
        EXPECT_LE(relative_error(y, x), 1e-13);
      }
    }
  }
}

TEST(Demand, ExactShareOverRationals) {
  Rng rng(1);
  EXPECT_EQ(cobb_douglas_share_failures(rng, 1000), 0);
  const Budget<Rational> b{Rational(7, 3), Rational(5, 11), Rational(40, 7)};
  const auto x = leontief_demand(Rational(2, 9), b);
  EXPECT_EQ(Rational(2, 9) * x.x1, Rational(7, 9) * x.x2);
  EXPECT_EQ(b.p1 * x.x1 + b.p2 * x.x2, b.w);
}

TEST(Oracle, Lattice) {
  const auto r = oracle_lattice();
  EXPECT_EQ(r.cases, 1200);
  EXPECT_LE(r.max_relative_error, 1e-8);
  EXPECT_LE(r.max_oracle_walras_residual, 1e-10);
  EXPECT_LE(r.max_walras_residual, 1e-14);
}

TEST(LimitCheck, FrozenDeviations) {
  const auto grid = log_grid();
  ASSERT_EQ(grid.size(), 441u);
  const auto cd = limit_check(LimitTarget::CobbDouglas, 0.5, grid, default_schedule(LimitTarget::CobbDouglas));
  const auto le = limit_check(LimitTarget::Leontief, 0.5, grid, default_schedule(LimitTarget::Leontief));
  ASSERT_EQ(cd.deviations.size(), 4u);
  ASSERT_EQ(le.deviations.size(), 4u);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_NEAR(cd.deviations[i], kCobbDouglasDeviations[i], 1e-12);
    EXPECT_NEAR(le.deviations[i], kLeontiefDeviations[i], 1e-12);
  }
  EXPECT_TRUE(cd.monotone);
  EXPECT_TRUE(le.monotone);
  EXPECT_TRUE(cd.passed);
  EXPECT_TRUE(le.passed);
}

TEST(LimitCheck, WeightedLeontiefIsNotTheLimit) {
  const auto r = limit_check(LimitTarget::LeontiefWeighted, 0.5, log_grid(), default_schedule(LimitTarget::Leontief));
  EXPECT_FALSE(r.monotone);
  EXPECT_FALSE(r.passed);
  for (double d : r.deviations) EXPECT_NEAR(d, 5, 1e-12);  // at (10,10): CES 10, target 5
}

TEST(LimitCheck, DiagonalPoint) {
  for (auto t : {LimitTarget::CobbDouglas, LimitTarget::Leontief}) {
    const auto r = limit_check(t, 0.5, {{1, 1}}, default_schedule(t));
    for (double d : r.deviations) EXPECT_NEAR(d, 0, 1e-15);
  }
  EXPECT_THROW(limit_check(LimitTarget::Leontief, 0.5, {{0, 1}}, {0.5}), DomainError);
}

TEST(LimitCheck, Csv) {
  const auto r = limit_check(LimitTarget::CobbDouglas, 0.5, {{1, 1}}, {1.5});
  EXPECT_EQ(limit_csv(r), "sigma,max_abs_deviation\n1.5,0\n");
}

TEST(Compensation, DefaultScenario) {
  const auto r = default_compensation();
  EXPECT_TRUE(r.leontief_exact);
  EXPECT_EQ(r.leontief_before, (Bundle<Rational>{5, 5}));
  EXPECT_EQ(r.after.w, Rational(15));
  EXPECT_TRUE(r.decreasing);
  ASSERT_EQ(r.rows.size(), 4u);
  EXPECT_EQ(r.rows[0].deviation, 0);
  EXPECT_NEAR(r.rows[3].deviation, 0.023131536003543118, 1e-12);  // sigma = 0.01
  EXPECT_LT(r.rows[3].deviation, r.rows[1].deviation);
  EXPECT_EQ(compensation_csv(r).substr(0, 53), "sigma,x1_before,x2_before,x1_after,x2_after,deviation");
}

TEST(CesReport, StatedWeightedLimitRefuted) {
  const auto r = check_ces(0, 200);
  EXPECT_EQ(r.verdict, Verdict::Refuted);
  EXPECT_TRUE(r.invariants_ok());
  EXPECT_EQ(r.subverdicts["leontief_weighted_limit"]["verdict"], "REFUTED");
  EXPECT_TRUE(r.subverdicts["leontief_limit"]["passed"].get<bool>());
  EXPECT_TRUE(r.subverdicts["cobb_douglas_limit"]["passed"].get<bool>());
  EXPECT_EQ(r.witness["weighted_leontief_value"], 0.5);
  EXPECT_EQ(r.witness["unweighted_leontief_value"], 1.0);
}
