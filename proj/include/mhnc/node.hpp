#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mhnc/codec.hpp"
#include "mhnc/config.hpp"
#include "mhnc/dof_buffer.hpp"
#include "mhnc/rng.hpp"
#include "mhnc/types.hpp"

namespace mhnc {

struct NodeInput {
  Slot t = 0;
  // Information packets that arrived this slot (source only).
  std::vector<InfoIndex> arrivals;
  std::optional<Delivery> forward;
  std::optional<FeedbackBundle> feedback;
};

// One evaluation of the pause-termination test.
struct BlankSpaceCheck {
  double remaining = 0.0;
  double dof_rate = 0.0;
  double eps_bottleneck = 0.0;
  bool terminated = false;
};

struct NodeOutput {
  Action action = Action::NnfIdle;
  std::optional<CodedPacket> packet;
  std::optional<FeedbackBundle> upstream;
  // Set on the slot a pause budget is computed.
  std::optional<double> blank_space_budget;
  // Estimated forward bottleneck used for that budget.
  int blank_space_bottleneck = -1;
  std::optional<BlankSpaceCheck> blank_space_check;
};

// Verification-mode bookkeeping at a receiver: how often the DoF-accounting
// decision disagreed with the real rank over GF(2^8).
struct RankAudit {
  std::int64_t fast_innovative = 0;
  std::int64_t real_innovative = 0;
  // Counted innovative by accounting, dependent in reality.
  std::int64_t deficiency_events = 0;
  // Rejected by accounting although it raised the real rank.
  std::int64_t excess_events = 0;
  std::vector<Slot> deficiency_slots;
};

class Node {
 public:
  virtual ~Node() = default;
  virtual NodeIndex index() const = 0;
  virtual NodeOutput step(const NodeInput& in) = 0;
  virtual RankAudit audit() const { return {}; }
};

// Payload of information packet i in verification mode.
Symbols info_payload(std::uint64_t seed, InfoIndex i, int symbols);

// Builds coded packets from a DofBuffer and, in verification mode, checks
// received rows against the real rank.
class Coder {
 public:
  Coder(const NetworkConfig& cfg, NodeIndex node);

  bool verification() const { return verification_; }

  CodedPacket make_packet(NodeIndex origin, Slot t, const DofBuffer& buf, DofIndex lo, DofIndex hi,
                          PacketKind kind);

  // Row for a fresh information packet held at the source.
  std::optional<CodedRow> info_row(InfoIndex i) const;

  // Checks the accounting decision for a received packet against the real
  // rank. Returns false for a packet counted innovative that is really
  // dependent; the receiver then drops and NACKs it. Always true outside
  // verification mode.
  bool audit_reception(const CodedPacket& pkt, bool fast_innovative, Slot t);
  const RankAudit& audit() const { return audit_; }

 private:
  bool verification_;
  std::uint64_t seed_;
  int symbols_;
  Rng coeff_rng_;
  RowSpace real_;
  RankAudit audit_;
};

}  // namespace mhnc
