#include <gtest/gtest.h>

#include "mhnc/metrics.hpp"
#include "mhnc/simulation.hpp"

using namespace mhnc;

namespace {

NetworkConfig short_reference(Slot horizon = 1500) {
  NetworkConfig cfg;
  cfg.horizon = horizon;
  cfg.delivery_window = horizon / 5;
  return cfg;
}

}  // namespace

TEST(Simulation, ZeroHorizonGivesEmptyLedger) {
  NetworkConfig cfg = short_reference();
  cfg.horizon = 0;
  for (ProtocolKind p : all_protocols()) {
    const RunLedger l = run(cfg, p);
    EXPECT_TRUE(l.arrival_times.empty());
    EXPECT_TRUE(l.decode_times.empty());
    for (const auto& row : l.actions) EXPECT_TRUE(row.empty());
    for (auto o : l.idle) EXPECT_EQ(o, 0);
  }
}

TEST(Simulation, InvalidConfigRejected) {
  NetworkConfig cfg = short_reference();
  cfg.rtt_per_hop[3] = 21;
  EXPECT_THROW(Simulation(cfg, ProtocolKind::BlankSpace), std::invalid_argument);
}

TEST(Simulation, SteppingPastHorizonThrows) {
  NetworkConfig cfg = short_reference(3);
  cfg.delivery_window = 1;
  Simulation sim(cfg, ProtocolKind::BlankSpace);
  for (int i = 0; i < 3; ++i) sim.step();
  EXPECT_TRUE(sim.done());
  EXPECT_THROW(sim.step(), ProtocolViolation);
}

TEST(Simulation, LedgerShapesAndCausality) {
  const NetworkConfig cfg = short_reference();
  for (ProtocolKind p : all_protocols()) {
    const RunLedger l = run(cfg, p);
    ASSERT_EQ(l.actions.size(), 5u);
    for (int n = 0; n < 5; ++n) {
      const auto& row = l.actions[static_cast<std::size_t>(n)];
      ASSERT_EQ(static_cast<Slot>(row.size()), cfg.horizon);
      for (Slot t = 0; t < cfg.horizon; ++t)
        EXPECT_EQ(row[static_cast<std::size_t>(t)] == Action::PreOp, t < cfg.start_slot(n));
    }
    EXPECT_EQ(recount_idle(l), l.idle);
    ASSERT_LE(l.decode_times.size(), l.arrival_times.size());
    const Slot floor = cfg.global_rtt() / 2;
    for (std::size_t i = 0; i < l.decode_times.size(); ++i) {
      EXPECT_GE(l.decode_times[i] - l.arrival_times[i], floor);
      if (i) EXPECT_GE(l.decode_times[i], l.decode_times[i - 1]);
    }
  }
}

TEST(Simulation, ArrivalRateMatchesConfig) {
  const NetworkConfig cfg = short_reference(20000);
  const RunLedger l = run(cfg, ProtocolKind::SrArq);
  EXPECT_NEAR(static_cast<double>(l.arrival_times.size()) / 20000.0, 0.5, 0.015);
}

TEST(Simulation, ParameterAccess) {
  NetworkConfig cfg = short_reference();
  apply_parameter(cfg, "eps2", 0.55);
  EXPECT_EQ(cfg.erasure_rates[2], 0.55);
  EXPECT_EQ(get_parameter(cfg, "eps2"), 0.55);
  apply_parameter(cfg, "alpha", 2.0);
  EXPECT_EQ(get_parameter(cfg, "alpha"), 2.0);
  EXPECT_THROW(apply_parameter(cfg, "eps9", 0.1), std::invalid_argument);
  EXPECT_THROW(apply_parameter(cfg, "colour", 0.1), std::invalid_argument);
  EXPECT_FALSE(is_sweep_parameter("eps"));
  EXPECT_TRUE(is_sweep_parameter("eps0"));
}

TEST(Sweep, CountsAndOrder) {
  const NetworkConfig cfg = short_reference(300);
  std::vector<std::uint64_t> seeds;
  for (std::uint64_t s = 1; s <= 10; ++s) seeds.push_back(s);
  const auto out = sweep(cfg, "eps2", {0.2, 0.3, 0.4, 0.5, 0.6}, seeds, all_protocols(), 2);
  ASSERT_EQ(out.size(), 200u);
  EXPECT_EQ(out[0].value, 0.2);
  EXPECT_EQ(out[0].protocol, ProtocolKind::BlankSpace);
  EXPECT_EQ(out[1].seed, 2u);
  EXPECT_EQ(out[10].protocol, ProtocolKind::NetFec);
  EXPECT_EQ(out[40].value, 0.3);
  for (const auto& e : out) {
    EXPECT_EQ(e.ledger.config.erasure_rates[2], e.value);
    EXPECT_EQ(e.ledger.config.seed, e.seed);
    EXPECT_EQ(e.ledger.protocol, e.protocol);
  }
}

TEST(Sweep, EmptyValuesGiveEmptyMatrix) {
  EXPECT_TRUE(sweep(short_reference(), "eps2", {}, {1, 2}, all_protocols()).empty());
}

TEST(Sweep, UnknownParameterThrows) {
  EXPECT_THROW(sweep(short_reference(), "gamma", {1.0}, {1}, all_protocols()), std::invalid_argument);
}

TEST(Sweep, ThreadCountDoesNotChangeResults) {
  const NetworkConfig cfg = short_reference(600);
  const auto a = sweep(cfg, "eps2", {0.3, 0.5}, {1, 2, 3}, all_protocols(), 1);
  const auto b = sweep(cfg, "eps2", {0.3, 0.5}, {1, 2, 3}, all_protocols(), 4);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_TRUE(a[i].ledger == b[i].ledger);
}

TEST(Sweep, BudgetsScaleLinearlyInAlpha) {
  // Nothing pauses before the source's first positive budget, so that budget
  // is computed from identical estimates for every alpha.
  const NetworkConfig cfg = short_reference(400);
  const auto out = sweep(cfg, "alpha", {0.5, 1.0, 2.0}, {1}, {ProtocolKind::BlankSpace});
  ASSERT_EQ(out.size(), 3u);
  {
    const NodeIndex n = 0;
    std::vector<double> first;
    for (const auto& e : out)
      for (const auto& b : e.ledger.budgets)
        if (b.node == n && b.budget > 0) {
          first.push_back(b.budget / e.value);
          break;
        }
    ASSERT_EQ(first.size(), 3u);
    EXPECT_NEAR(first[1], first[0], 1e-12 * first[0]);
    EXPECT_NEAR(first[2], first[0], 1e-12 * first[0]);
  }
}
