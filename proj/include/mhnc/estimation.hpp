#pragma once

#include <cstdint>
#include <vector>

#include "mhnc/types.hpp"

namespace mhnc {

// Erasure-rate estimates for the channels on node n's forward path
// (n .. N-2), fed by local ACK/NACKs and by feedback aggregated backwards
// from downstream nodes.
class ErasureEstimator {
 public:
  ErasureEstimator(NodeIndex node, int hop_count);

  NodeIndex node() const { return node_; }

  // Local ack about channel `node()` plus the downstream triples. Triples are
  // also queued for forwarding upstream. Throws std::invalid_argument when a
  // triple names a channel at or before this node.
  void ingest_feedback(const FeedbackBundle& fb);

  // Raw bit for one channel, without forwarding.
  void record(int channel, bool ack);

  // 1 - mean(acks) over the full history; 0 before any feedback.
  double estimate(int channel) const;
  std::int64_t samples(int channel) const;
  // argmax of the estimates over channels node()..N-2, ties toward node().
  int bottleneck() const;

  // Bundle sent to the previous node after observing the packet sent at
  // `created_at`. Carries every triple not yet forwarded.
  FeedbackBundle build_outgoing_bundle(bool local_ack, Slot created_at);

  std::size_t pending_forward() const { return to_forward_.size(); }

 private:
  struct Counts {
    std::int64_t acks = 0;
    std::int64_t total = 0;
  };

  NodeIndex node_;
  int hop_count_;
  std::vector<Counts> counts_;  // indexed by channel
  std::vector<DownstreamAck> to_forward_;
};

}  // namespace mhnc
