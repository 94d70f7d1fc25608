#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mhnc {

// Time in slots. Negative values never appear in a running simulation.
using Slot = std::int64_t;
using NodeIndex = int;
// Position in a sender's own DoF numbering. At the source this is the
// information-packet index.
using DofIndex = std::int64_t;
using InfoIndex = std::int64_t;

// Raised when a module is driven outside its contract (two pushes into one
// channel in a slot, stepping a node before its start slot, ...).
class ProtocolViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

enum class PacketKind : std::uint8_t {
  New,
  FecAPriori,
  FecPosterior,
  FecEow,
  // Same-window filler sent instead of pausing (NET-FEC, MP-MH).
  FecFill,
  // Selective-repeat retransmission of one raw packet.
  Retransmission,
};

bool is_fec(PacketKind kind);
std::string_view to_string(PacketKind kind);

// What a node did in one slot. The trace file prints these names.
enum class Action : std::uint8_t {
  PreOp,
  New,
  FecAPriori,
  FecPosterior,
  FecEow,
  FecFill,
  Retransmission,
  BspIdle,
  NnfIdle,
};

bool is_idle(Action a);
bool is_transmission(Action a);
std::string_view to_string(Action a);
std::optional<Action> parse_action(std::string_view name);
Action action_for(PacketKind kind);

// Real coefficients and payload carried in verification mode. Coefficients
// are indexed by information packet: coeffs[k] multiplies p_{offset + k}.
struct CodedRow {
  InfoIndex offset = 0;
  std::vector<std::uint8_t> coeffs;
  std::vector<std::uint8_t> payload;

  std::uint8_t coeff(InfoIndex i) const {
    const auto k = i - offset;
    return (k < 0 || k >= static_cast<InfoIndex>(coeffs.size())) ? 0 : coeffs[static_cast<std::size_t>(k)];
  }
};

// One transmitted degree of freedom.
struct CodedPacket {
  NodeIndex origin = 0;
  Slot created_at = 0;
  // Window span in the sender's DoF numbering.
  DofIndex w_min = 0;
  DofIndex w_max = 0;
  // Highest information packet the combination may touch.
  InfoIndex info_hi = 0;
  // Information prefix the sender can decode from its DoFs 0..w_max.
  InfoIndex certified = -1;
  PacketKind kind = PacketKind::New;
  std::optional<CodedRow> row;
};

// Feedback observed at channel `channel` for the packet sent at `slot`.
struct DownstreamAck {
  int channel = 0;
  Slot slot = 0;
  bool ack = false;

  friend bool operator==(const DownstreamAck&, const DownstreamAck&) = default;
};

// Destination DoF summary used by the end-to-end (MP-MH) source.
struct DestinationReport {
  std::int64_t rank = 0;
  InfoIndex highest_seen = -1;
  InfoIndex decoded_frontier = -1;  // packets 0..frontier decoded in order

  friend bool operator==(const DestinationReport&, const DestinationReport&) = default;
};

struct FeedbackBundle {
  Slot acked_packet_created_at = 0;
  bool ack = false;
  std::vector<DownstreamAck> downstream;
  std::optional<DestinationReport> destination;
};

// What leaves a forward channel: the packet, or an erasure marker that still
// names the slot the lost packet was sent in.
struct Delivery {
  Slot created_at = 0;
  std::optional<CodedPacket> packet;

  bool erased() const { return !packet.has_value(); }
};

}  // namespace mhnc
