#pragma once

#include <deque>
#include <map>
#include <set>
#include <vector>

#include "mhnc/config.hpp"
#include "mhnc/node.hpp"

namespace mhnc {

// Multipath-multihop baseline relay: keeps every innovative DoF it has ever
// received and sends a fresh mix of all of them in every slot. It uses no
// feedback and no window.
class MpMhRelay : public Node {
 public:
  MpMhRelay(const NetworkConfig& cfg, NodeIndex index);

  NodeIndex index() const override { return index_; }
  NodeOutput step(const NodeInput& in) override;
  RankAudit audit() const override { return coder_.audit(); }

  DofIndex held() const { return buffer_.size(); }

 private:
  NodeIndex index_;
  Slot start_;
  DofBuffer buffer_;
  SeenTracker ingress_;
  PrefixTracker decoded_;
  Coder coder_;
  DofIndex sent_up_to_ = 0;
};

// Uncoded per-hop selective-repeat ARQ. Each node forwards raw packets in
// order, keeps at most one bandwidth-delay product outstanding and resends
// exactly the NACKed (or timed-out) packets.
class SrArqNode : public Node {
 public:
  SrArqNode(const NetworkConfig& cfg, NodeIndex index);

  NodeIndex index() const override { return index_; }
  NodeOutput step(const NodeInput& in) override;

  std::size_t queued() const { return items_.size(); }
  std::int64_t base() const { return base_; }
  std::int64_t next() const { return next_; }
  std::int64_t window() const { return window_; }

 private:
  struct Status {
    bool acked = false;
    bool resend = false;
    int outstanding = 0;
    Slot last_sent = 0;
  };

  void receive(const NodeInput& in, NodeOutput& out);
  void feedback(const FeedbackBundle& fb);
  CodedPacket packet_for(std::int64_t seq, Slot t, PacketKind kind) const;

  NodeIndex index_;
  Slot start_;
  Slot rtt_;
  std::int64_t window_;
  // Outgoing raw packets in forwarding order; position is the hop sequence.
  std::vector<InfoIndex> items_;
  std::vector<Status> status_;
  std::int64_t base_ = 0;
  std::int64_t next_ = 0;
  std::deque<std::pair<Slot, std::int64_t>> in_flight_;
  // Receive side: upstream sequence -> info index, held until in order.
  std::map<std::int64_t, InfoIndex> out_of_order_;
  std::int64_t expected_ = 0;
};

}  // namespace mhnc
