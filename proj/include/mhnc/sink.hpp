#pragma once

#include <cstdint>
#include <vector>

#include "mhnc/codec.hpp"
#include "mhnc/config.hpp"
#include "mhnc/dof_buffer.hpp"
#include "mhnc/node.hpp"

namespace mhnc {

// Fast-versus-elimination comparison collected at the destination.
struct SinkVerification {
  std::int64_t opportunities = 0;
  std::int64_t disagreements = 0;
  std::vector<Slot> disagreement_slots;
  // Disagreements where elimination is ahead and deleting the first column
  // it solved beyond the accounting frontier loses real rank: the generic
  // rank assumed by accounting was not met.
  std::int64_t attributed = 0;
  // Packets decoded by elimination, in order, with their decode slots.
  std::vector<Slot> real_decode_times;
};

class Sink {
 public:
  enum class Mode : std::uint8_t { Coded, InOrderRaw };

  Sink(const NetworkConfig& cfg, Mode mode);

  // Consumes one forward observation and returns the bundle for the last
  // relay. `with_report` attaches the destination DoF summary.
  FeedbackBundle absorb(const Delivery& d, Slot t, bool with_report = false);

  // Packets 0..frontier() are decoded.
  InfoIndex frontier() const { return frontier_; }
  // decode_times()[i] = T_d(p_i) for every decoded packet.
  const std::vector<Slot>& decode_times() const { return decode_times_; }
  DestinationReport report() const;

  const SinkVerification& verification() const { return verification_; }
  const RankAudit& audit() const { return audit_; }

 private:
  // Returns false when the packet was dropped as really dependent.
  bool absorb_coded(const CodedPacket& pkt, Slot t);
  void count(const CodedPacket& pkt, Slot t);
  void absorb_raw(const CodedPacket& pkt, Slot t);
  void advance(InfoIndex to, Slot t);

  Mode mode_;
  bool verify_;
  SeenTracker seen_;
  PrefixTracker decoded_;
  std::int64_t rank_ = 0;
  InfoIndex highest_seen_ = -1;
  InfoIndex frontier_ = -1;
  std::vector<Slot> decode_times_;
  std::vector<bool> raw_have_;

  RowSpace real_;
  SinkVerification verification_;
  RankAudit audit_;
};

}  // namespace mhnc
