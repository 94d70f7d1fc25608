#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "mhnc/formulas.hpp"

using namespace mhnc;

namespace {

void expect_rel(double got, double want, double rel = 1e-12) {
  EXPECT_LE(std::abs(got - want), rel * std::abs(want)) << "got " << got << " want " << want;
}

const std::vector<Slot> kRtt{20, 20, 20, 20, 20};

}  // namespace

TEST(Formulas, RoundHalfUp) {
  EXPECT_EQ(round_half_up(2.5), 3);
  EXPECT_EQ(round_half_up(2.49), 2);
  EXPECT_EQ(round_half_up(0.0), 0);
}

TEST(Formulas, AprioriCount) {
  EXPECT_EQ(apriori_fec_count(0.4, 20), 8);
  EXPECT_EQ(apriori_fec_count(0.0, 20), 0);
  EXPECT_EQ(apriori_fec_count(0.25, 2), 1);
}

TEST(Formulas, DofRateGapOneLossCompensated) {
  EXPECT_EQ(dof_rate_gap(1, 0.0, 0, 1, 0), 0.0);
}

TEST(Formulas, DofRateGapNothingMissing) {
  EXPECT_EQ(dof_rate_gap(0, 0.0, 0, 1, 0), -1.0);
}

TEST(Formulas, DofRateGapHandEvaluation) {
  // (2 + 0.4*5) / (1 + 0.6*5) - 1
  EXPECT_NEAR(dof_rate_gap(2, 0.4, 5, 1, 5), 0.0, 1e-12);
}

TEST(Formulas, DofRateGapZeroDenominator) {
  EXPECT_EQ(dof_rate_gap(0, 0.0, 0, 0, 0), 0.0);
  EXPECT_EQ(dof_rate_gap(1, 0.0, 0, 0, 0), std::numeric_limits<double>::infinity());
  EXPECT_EQ(dof_rate_gap(0, 0.5, 2, 0, 0), std::numeric_limits<double>::infinity());
}

TEST(Formulas, BlankSpaceDurationOneHop) {
  const std::vector<double> eps{0.1, 0.4, 0.3, 0.3, 0.1};
  expect_rel(blank_space_duration(0, 1, kRtt, eps, 1.0), 8.0);
}

TEST(Formulas, BlankSpaceDurationTwoHops) {
  const std::vector<double> eps{0.1, 0.4, 0.6, 0.3, 0.1};
  expect_rel(blank_space_duration(0, 2, kRtt, eps, 1.0), 20.0);
}

TEST(Formulas, BlankSpaceDurationAtOwnBottleneck) {
  const std::vector<double> eps{0.1, 0.4, 0.6, 0.3, 0.1};
  EXPECT_EQ(blank_space_duration(2, 2, kRtt, eps, 1.0), 0.0);
}

TEST(Formulas, BlankSpaceDurationLinearInAlpha) {
  const std::vector<double> eps{0.1, 0.4, 0.6, 0.3, 0.1};
  const double base = blank_space_duration(0, 2, kRtt, eps, 1.0);
  for (double a : {0.5, 2.0, 3.5}) expect_rel(blank_space_duration(0, 2, kRtt, eps, a), a * base);
}

TEST(Formulas, BlankSpaceRateHandEvaluation) {
  const double want = 1.0 / (0.9 * 8.0 + std::log(0.3));
  expect_rel(blank_space_dof_rate(0.1, 0.4, 1, 8.0), want);
  EXPECT_NEAR(want, 0.1668, 5e-5);
}

TEST(Formulas, BlankSpaceRateGuards) {
  const double inf = std::numeric_limits<double>::infinity();
  EXPECT_EQ(blank_space_dof_rate(0.1, 0.4, 1, 1.0), inf);
  EXPECT_EQ(blank_space_dof_rate(0.4, 0.4, 1, 8.0), inf);
  EXPECT_EQ(blank_space_dof_rate(0.5, 0.4, 1, 8.0), inf);
}

TEST(Formulas, BlankSpaceRateLogBase) {
  const double want = 1.0 / (0.9 * 8.0 + 2.0 * std::log10(0.3));
  expect_rel(blank_space_dof_rate(0.1, 0.4, 2, 8.0, 10.0), want);
}

TEST(Formulas, TerminationRule) {
  EXPECT_TRUE(blank_space_should_terminate(0.7, 0.4));
  EXPECT_FALSE(blank_space_should_terminate(0.1668, 0.4));
  EXPECT_FALSE(blank_space_should_terminate(0.6, 0.4));
  EXPECT_TRUE(blank_space_should_terminate(std::numeric_limits<double>::infinity(), 0.4));
}
