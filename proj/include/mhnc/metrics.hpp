#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "mhnc/config.hpp"
#include "mhnc/node.hpp"
#include "mhnc/types.hpp"

namespace mhnc {

// Thrown when a metric is undefined for the run (no decodes, empty horizon).
class DegenerateRun : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct BudgetEvent {
  Slot slot = 0;
  NodeIndex node = 0;
  double budget = 0.0;
  int bottleneck = -1;
};

struct CheckEvent {
  Slot slot = 0;
  NodeIndex node = 0;
  BlankSpaceCheck check;
};

struct VerificationSummary {
  std::int64_t opportunities = 0;
  std::int64_t disagreements = 0;
  std::int64_t attributable = 0;
  std::int64_t deficiency_events = 0;
  std::int64_t excess_events = 0;
  std::int64_t fast_decoded = 0;
  std::int64_t real_decoded = 0;
};

// Everything a run produced that the metrics need.
struct RunLedger {
  NetworkConfig config;
  ProtocolKind protocol = ProtocolKind::BlankSpace;
  // actions[n][t] for transmitting nodes 0..N-2.
  std::vector<std::vector<Action>> actions;
  std::vector<std::int64_t> idle;  // O_n
  std::vector<Slot> arrival_times;  // T_1(p_i)
  std::vector<Slot> decode_times;   // T_d(p_i) for the decoded prefix
  std::vector<BudgetEvent> budgets;
  std::vector<CheckEvent> checks;
  VerificationSummary verification;

  bool operator==(const RunLedger&) const;
};

// d(t): packets with T_d < t.
std::int64_t decoded_before(const RunLedger& l, Slot t);

// Closed forms, usable on raw numbers.
double goodput(std::int64_t decoded, Slot horizon, std::int64_t source_idle, double half_rtt);
double node_usage(std::int64_t idle, Slot horizon, double upstream_half_rtt);

double goodput(const RunLedger& l);
// Per-window rates (d(iT') - d((i-1)T')) / T' for i = 1..floor(T/T').
std::vector<double> delivery_rate(const RunLedger& l, Slot window);
double mean_delivery_rate(const RunLedger& l);

struct Usage {
  double network = 0.0;
  std::vector<double> per_node;
};
Usage channel_usage(const RunLedger& l);
// The network denominator sum_i (T - (N-2-i) RTT_i / 2).
double network_opportunities(const NetworkConfig& cfg);

struct Delays {
  double mean = 0.0;
  double max = 0.0;
  std::int64_t undelivered = 0;
};
Delays delays(const RunLedger& l);

// Recounts O_n from the action log.
std::vector<std::int64_t> recount_idle(const RunLedger& l);

struct RunMetrics {
  Usage usage;
  double goodput = 0.0;
  double delivery_rate = 0.0;
  Delays delay;
  bool has_delay = false;
};
RunMetrics summarize(const RunLedger& l);

}  // namespace mhnc
