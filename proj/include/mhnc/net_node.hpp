#pragma once

#include <deque>
#include <optional>

#include "mhnc/config.hpp"
#include "mhnc/estimation.hpp"
#include "mhnc/node.hpp"

namespace mhnc {

struct NetNodeOptions {
  // Schedule blank-space pauses after each a-priori FEC period.
  bool blank_space = true;
  // Pause when there is neither new data nor a FEC trigger. When false the
  // slot is filled with a same-window FEC packet instead (NET-FEC).
  bool pause_when_idle = true;
};

// Hop-local sliding-window re-encoder run at every transmitting node of the
// blank-space scheme. Node 0 codes over arriving information packets; other
// nodes code over the DoFs they received from upstream.
class NetNode : public Node {
 public:
  NetNode(const NetworkConfig& cfg, NodeIndex index, NetNodeOptions opts);

  NodeIndex index() const override { return index_; }
  NodeOutput step(const NodeInput& in) override;
  RankAudit audit() const override { return coder_.audit(); }

  // Observable state, mainly for tests.
  DofIndex w_min() const { return w_min_; }
  DofIndex w_max() const { return w_max_; }
  DofIndex held() const { return buffer_.size(); }
  double bs_remaining() const { return bs_active_ ? bs_remaining_ : 0.0; }
  std::int64_t idle_count() const { return idle_count_; }
  const ErasureEstimator& estimator() const { return estimator_; }
  int bottleneck() const { return estimator_.bottleneck(); }

  // Formula helpers evaluated on the current estimates.
  double dof_rate_gap() const;
  // Posterior FEC test: gap >= 0 with a positive expected deficit.
  bool posterior_due() const;
  double blank_space_budget() const;
  double blank_space_rate(double remaining) const;

 private:
  struct Sent {
    Slot created_at;
    DofIndex lo;
    DofIndex hi;
    PacketKind kind;
  };

  struct GapTerms {
    double missing = 0, eps = 0, fresh = 0, same = 0;
  };
  GapTerms gap_terms() const;

  void absorb_forward(const NodeInput& in, NodeOutput& out);
  void absorb_feedback(const FeedbackBundle& fb);
  void eliminate();
  bool window_open() const { return w_max_ >= w_min_; }
  NodeOutput& transmit(NodeOutput& out, Slot t, PacketKind kind);
  NodeOutput& pause(NodeOutput& out, Action a);

  const NetworkConfig& cfg_;
  NodeIndex index_;
  NetNodeOptions opts_;
  Slot start_;
  Slot rtt_;
  std::int64_t max_window_;

  DofBuffer buffer_;
  SeenTracker ingress_;
  PrefixTracker decoded_;
  SeenTracker downstream_view_;
  ErasureEstimator estimator_;
  Coder coder_;

  DofIndex w_min_ = 0;
  DofIndex w_max_ = -1;
  std::deque<Sent> in_flight_;
  // Own New DoFs whose feedback has returned.
  DofIndex resolved_new_ = 0;

  std::int64_t new_this_period_ = 0;
  std::int64_t apriori_pending_ = 0;
  bool period_fec_done_ = false;
  bool bs_active_ = false;
  double bs_remaining_ = 0.0;
  std::int64_t idle_count_ = 0;
};

}  // namespace mhnc
