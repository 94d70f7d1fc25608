#include <gtest/gtest.h>

#include <sstream>

#include "mhnc/experiment.hpp"
#include "mhnc/formulas.hpp"
#include "mhnc/metrics.hpp"
#include "mhnc/simulation.hpp"

using namespace mhnc;

namespace {

NetworkConfig reference(double eps2, Slot horizon, std::uint64_t seed) {
  NetworkConfig cfg = reference_chain(eps2);
  cfg.horizon = horizon;
  cfg.delivery_window = horizon / 10;
  cfg.seed = seed;
  return cfg;
}

std::string serialize(const RunLedger& l) {
  std::ostringstream o;
  write_trace(o, l);
  o.precision(17);
  for (auto t : l.arrival_times) o << t << ' ';
  o << '\n';
  for (auto t : l.decode_times) o << t << ' ';
  o << '\n';
  for (const auto& b : l.budgets) o << b.slot << ' ' << b.node << ' ' << b.budget << ' ' << b.bottleneck << '\n';
  for (const auto& c : l.checks)
    o << c.slot << ' ' << c.node << ' ' << c.check.remaining << ' ' << c.check.dof_rate << ' '
      << c.check.eps_bottleneck << ' ' << c.check.terminated << '\n';
  return o.str();
}

class PerSeed : public ::testing::TestWithParam<std::uint64_t> {};

}  // namespace

TEST_P(PerSeed, LedgersAreByteIdentical) {
  for (ProtocolKind p : all_protocols()) {
    const NetworkConfig cfg = reference(0.3, 2000, GetParam());
    const RunLedger a = run(cfg, p), b = run(cfg, p);
    EXPECT_TRUE(a == b);
    EXPECT_EQ(serialize(a), serialize(b));
  }
}

TEST_P(PerSeed, BlankSpaceNeverPausesAtItsBottleneck) {
  for (double eps2 : {0.2, 0.4, 0.6}) {
    const RunLedger l = run(reference(eps2, 3000, GetParam()), ProtocolKind::BlankSpace);
    ASSERT_FALSE(l.budgets.empty());
    for (const auto& b : l.budgets) {
      ASSERT_GE(b.bottleneck, b.node);
      if (b.bottleneck == b.node) EXPECT_EQ(b.budget, 0.0) << "node " << b.node << " slot " << b.slot;
    }
    // Every pause slot follows a budget computed with a bottleneck elsewhere.
    for (NodeIndex n = 0; n < 5; ++n) {
      int last_bn = -1;
      std::size_t k = 0;
      for (Slot t = 0; t < l.config.horizon; ++t) {
        while (k < l.budgets.size() && l.budgets[k].slot <= t) {
          if (l.budgets[k].node == n) last_bn = l.budgets[k].bottleneck;
          ++k;
        }
        if (l.actions[static_cast<std::size_t>(n)][static_cast<std::size_t>(t)] == Action::BspIdle)
          ASSERT_NE(last_bn, n) << "node " << n << " slot " << t;
      }
    }
  }
}

TEST_P(PerSeed, TerminationRuleHoldsOnEveryPauseSlot) {
  const RunLedger l = run(reference(0.3, 3000, GetParam()), ProtocolKind::BlankSpace);
  ASSERT_FALSE(l.checks.empty());
  std::vector<std::vector<const CheckEvent*>> by_slot(5, std::vector<const CheckEvent*>(
                                                            static_cast<std::size_t>(l.config.horizon), nullptr));
  for (const auto& c : l.checks) {
    const bool idle_by_rule = c.check.dof_rate <= 1.0 - c.check.eps_bottleneck;
    EXPECT_EQ(c.check.terminated, !idle_by_rule);
    const Action a = l.actions[static_cast<std::size_t>(c.node)][static_cast<std::size_t>(c.slot)];
    EXPECT_EQ(a == Action::BspIdle, idle_by_rule) << "node " << c.node << " slot " << c.slot;
    by_slot[static_cast<std::size_t>(c.node)][static_cast<std::size_t>(c.slot)] = &c;
  }
  // Pause slots carry a check, and consecutive pause slots count down by one.
  for (NodeIndex n = 0; n < 5; ++n)
    for (Slot t = 0; t < l.config.horizon; ++t) {
      const auto un = static_cast<std::size_t>(n), ut = static_cast<std::size_t>(t);
      if (l.actions[un][ut] != Action::BspIdle) continue;
      ASSERT_NE(by_slot[un][ut], nullptr);
      if (t + 1 < l.config.horizon && by_slot[un][ut + 1] && l.actions[un][ut + 1] == Action::BspIdle)
        EXPECT_DOUBLE_EQ(by_slot[un][ut + 1]->check.remaining, by_slot[un][ut]->check.remaining - 1.0);
    }
}

INSTANTIATE_TEST_SUITE_P(Seeds, PerSeed, ::testing::Values(1u, 2u, 3u));

TEST(Lossless, BlankSpaceDegenerates) {
  NetworkConfig cfg = reference(0.0, 5000, 1);
  cfg.erasure_rates.assign(5, 0.0);
  const RunLedger l = run(cfg, ProtocolKind::BlankSpace);
  for (const auto& row : l.actions)
    for (Action a : row) {
      ASSERT_NE(a, Action::BspIdle);
      ASSERT_FALSE(a == Action::FecAPriori || a == Action::FecPosterior || a == Action::FecEow ||
                   a == Action::FecFill);
    }
  for (const auto& b : l.budgets) EXPECT_EQ(b.budget, 0.0);
  EXPECT_NEAR(goodput(l), 1.0, 0.02);
  // Pure relays: every node forwards in the slot after it receives.
  for (std::size_t n = 1; n < 5; ++n)
    for (Slot t = 20; t + 10 < l.config.horizon; ++t)
      ASSERT_EQ(l.actions[n - 1][static_cast<std::size_t>(t)] == Action::New,
                l.actions[n][static_cast<std::size_t>(t + 10)] == Action::New);
  const Delays d = delays(l);
  EXPECT_EQ(d.mean, 50.0);
  EXPECT_EQ(d.max, 50.0);
}

TEST(Lossless, CodedSchemesAgreeOnRate) {
  NetworkConfig cfg = reference(0.0, 5000, 2);
  cfg.erasure_rates.assign(5, 0.0);
  const double bs = mean_delivery_rate(run(cfg, ProtocolKind::BlankSpace));
  EXPECT_NEAR(mean_delivery_rate(run(cfg, ProtocolKind::NetFec)), bs, 0.01);
  EXPECT_NEAR(mean_delivery_rate(run(cfg, ProtocolKind::MpMh)), bs, 0.01);
}

TEST(Metrics, DelayOrderingOnRuns) {
  for (ProtocolKind p : all_protocols()) {
    const RunLedger l = run(reference(0.4, 3000, 4), p);
    const Delays d = delays(l);
    EXPECT_GE(d.max, d.mean);
    EXPECT_GE(d.mean, 50.0);
    const Usage u = channel_usage(l);
    for (double x : u.per_node) {
      EXPECT_GE(x, 0.0);
      EXPECT_LE(x, 1.0);
    }
  }
}
