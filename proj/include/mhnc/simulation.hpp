#pragma once

#include <cstdint>
#include <memory>
#include <string_view>
#include <vector>

#include "mhnc/channel.hpp"
#include "mhnc/config.hpp"
#include "mhnc/metrics.hpp"
#include "mhnc/node.hpp"
#include "mhnc/sink.hpp"

namespace mhnc {

// One slotted run. Each call to step() advances one slot in the fixed order
// arrivals, channel polls, nodes by ascending index, sink.
class Simulation {
 public:
  // Throws std::invalid_argument on an invalid configuration.
  Simulation(const NetworkConfig& cfg, ProtocolKind protocol);
  ~Simulation();
  Simulation(const Simulation&) = delete;
  Simulation& operator=(const Simulation&) = delete;

  Slot now() const { return t_; }
  bool done() const { return t_ >= cfg_.horizon; }
  void step();
  // Runs to the horizon and hands over the ledger.
  RunLedger finish();

  const Node& node(NodeIndex n) const { return *nodes_.at(static_cast<std::size_t>(n)); }
  const Sink& sink() const { return sink_; }
  const RunLedger& ledger() const { return ledger_; }

 private:
  void finalize_verification();

  NetworkConfig cfg_;
  ProtocolKind protocol_;
  Rng arrivals_;
  std::vector<ErasureChannel> channels_;
  std::vector<std::unique_ptr<Node>> nodes_;
  std::vector<Slot> start_;
  Sink sink_;
  // End-to-end report path of the multipath-multihop baseline.
  DelayLine<FeedbackBundle> report_line_;
  RunLedger ledger_;
  Slot t_ = 0;
  InfoIndex next_info_ = 0;
};

RunLedger run(const NetworkConfig& cfg, ProtocolKind protocol);

// Sets a named scalar field: eps<i>, alpha, threshold, arrival_rate,
// max_window, horizon. Throws std::invalid_argument for other names.
void apply_parameter(NetworkConfig& cfg, std::string_view name, double value);
bool is_sweep_parameter(std::string_view name);
double get_parameter(const NetworkConfig& cfg, std::string_view name);

struct SweepEntry {
  ProtocolKind protocol = ProtocolKind::BlankSpace;
  double value = 0.0;
  std::uint64_t seed = 0;
  RunLedger ledger;
};

// Cross product values x seeds x protocols, ordered value-major, then
// protocol, then seed. Runs fan out over `threads` workers (0 = hardware).
std::vector<SweepEntry> sweep(const NetworkConfig& base, std::string_view parameter,
                              const std::vector<double>& values, const std::vector<std::uint64_t>& seeds,
                              const std::vector<ProtocolKind>& protocols, unsigned threads = 0);

}  // namespace mhnc
