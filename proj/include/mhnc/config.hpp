#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mhnc/types.hpp"

namespace mhnc {

enum class ProtocolKind : std::uint8_t { BlankSpace, NetFec, MpMh, SrArq };

std::string_view to_string(ProtocolKind p);
// Accepts the CLI names: bs, netfec, mpmh, srarq.
ProtocolKind parse_protocol(std::string_view name);
const std::vector<ProtocolKind>& all_protocols();

struct NetworkConfig {
  int node_count = 6;
  std::vector<double> erasure_rates{0.1, 0.4, 0.3, 0.3, 0.1};
  std::vector<Slot> rtt_per_hop{20, 20, 20, 20, 20};
  Slot horizon = 5000;
  // Negative means "derive from the configured bottleneck": 1 - eps_BN - 0.1.
  double arrival_rate = -1.0;
  double alpha = 0.5;
  double threshold = 0.0;
  // Zero means 2 * global RTT.
  std::int64_t max_window = 0;
  Slot delivery_window = 500;
  std::uint64_t seed = 1;
  // Base of the logarithm in the blank-space DoF rate; 0 selects ln.
  double log_base = 0.0;
  // Carry real GF(2^8) coefficients and payloads and decode by elimination.
  bool verification = false;
  int payload_symbols = 8;

  int hop_count() const { return node_count - 1; }
  Slot global_rtt() const;
  // First slot at which node n may transmit.
  Slot start_slot(NodeIndex n) const;
  double effective_arrival_rate() const;
  std::int64_t effective_max_window() const;
  // Index of the worst configured channel (ties toward the source).
  int configured_bottleneck() const;
};

// Returns one message per violated invariant; empty means valid.
std::vector<std::string> validate_config(const NetworkConfig& cfg);

// Throws std::invalid_argument listing every violation.
void require_valid(const NetworkConfig& cfg);

// The six-node chain of the reference experiment with the middle link set
// to `eps2`.
NetworkConfig reference_chain(double eps2);

}  // namespace mhnc
