#include "mhnc/net_node.hpp"

#include <algorithm>
#include <string>

#include "mhnc/formulas.hpp"

namespace mhnc {

NetNode::NetNode(const NetworkConfig& cfg, NodeIndex index, NetNodeOptions opts)
    : cfg_(cfg),
      index_(index),
      opts_(opts),
      start_(cfg.start_slot(index)),
      rtt_(cfg.rtt_per_hop.at(static_cast<std::size_t>(index))),
      max_window_(cfg.effective_max_window()),
      estimator_(index, cfg.hop_count()),
      coder_(cfg, index) {}

NodeOutput NetNode::step(const NodeInput& in) {
  if (in.t < start_)
    throw ProtocolViolation("node " + std::to_string(index_) + " stepped at slot " + std::to_string(in.t) +
                            " before its start slot " + std::to_string(start_));
  NodeOutput out;

  for (InfoIndex i : in.arrivals) buffer_.append(i, i, coder_.info_row(i));
  if (in.forward) absorb_forward(in, out);
  if (in.feedback) absorb_feedback(*in.feedback);
  eliminate();

  if ((in.t - start_) % rtt_ == 0) {
    apriori_pending_ =
        window_open() ? apriori_fec_count(estimator_.estimate(index_), new_this_period_) : 0;
    new_this_period_ = 0;
    period_fec_done_ = false;
    bs_active_ = false;
  }

  if (apriori_pending_ > 0) {
    if (window_open()) {
      --apriori_pending_;
      return transmit(out, in.t, PacketKind::FecAPriori);
    }
    apriori_pending_ = 0;
  }

  if (opts_.blank_space) {
    if (!period_fec_done_) {
      period_fec_done_ = true;
      bs_remaining_ = blank_space_budget();
      bs_active_ = bs_remaining_ >= 1.0;
      out.blank_space_budget = bs_remaining_;
      out.blank_space_bottleneck = estimator_.bottleneck();
    }
    if (bs_active_) {
      const int bn = estimator_.bottleneck();
      BlankSpaceCheck check;
      check.remaining = bs_remaining_;
      check.dof_rate = blank_space_rate(bs_remaining_);
      check.eps_bottleneck = estimator_.estimate(bn);
      check.terminated = blank_space_should_terminate(check.dof_rate, check.eps_bottleneck);
      out.blank_space_check = check;
      if (check.terminated) {
        bs_active_ = false;
      } else {
        bs_remaining_ -= 1.0;
        if (bs_remaining_ <= 0.0) bs_active_ = false;
        return pause(out, Action::BspIdle);
      }
    }
  }

  // No-New No-FEC.
  if (window_open()) {
    if (w_max_ - w_min_ > max_window_) return transmit(out, in.t, PacketKind::FecEow);
    if (posterior_due()) return transmit(out, in.t, PacketKind::FecPosterior);
  }
  if (buffer_.size() > w_max_ + 1) {
    ++w_max_;
    ++new_this_period_;
    return transmit(out, in.t, PacketKind::New);
  }
  if (opts_.pause_when_idle || w_max_ < 0) return pause(out, Action::NnfIdle);
  return transmit(out, in.t, PacketKind::FecFill);
}

void NetNode::absorb_forward(const NodeInput& in, NodeOutput& out) {
  const Delivery& d = *in.forward;
  bool usable = true;
  if (d.packet) {
    const CodedPacket& pkt = *d.packet;
    const bool fresh = ingress_.accepts(pkt.w_min, pkt.w_max);
    usable = coder_.audit_reception(pkt, fresh, in.t);
    if (fresh && usable) {
      ingress_.observe(pkt.w_min, pkt.w_max);
      decoded_.add(pkt.w_max, pkt.certified);
      buffer_.append(pkt.info_hi, decoded_.prefix(), pkt.row);
    }
  }
  out.upstream = estimator_.build_outgoing_bundle(!d.erased() && usable, d.created_at);
}

void NetNode::absorb_feedback(const FeedbackBundle& fb) {
  estimator_.ingest_feedback(fb);
  if (in_flight_.empty() || in_flight_.front().created_at != fb.acked_packet_created_at)
    throw ProtocolViolation("node " + std::to_string(index_) + ": feedback for unknown packet sent at " +
                            std::to_string(fb.acked_packet_created_at));
  const Sent s = in_flight_.front();
  in_flight_.pop_front();
  if (fb.ack) downstream_view_.observe(s.lo, s.hi);
  if (s.kind == PacketKind::New) resolved_new_ = std::max(resolved_new_, s.hi + 1);
}

void NetNode::eliminate() {
  w_min_ = std::max(w_min_, downstream_view_.pointer());
  if (w_max_ >= 0) buffer_.drop_below(std::min(w_min_, w_max_));
}

NetNode::GapTerms NetNode::gap_terms() const {
  // Known area: DoFs confirmed missing downstream, net of acknowledged repairs.
  GapTerms g;
  g.missing = static_cast<double>(std::max<DofIndex>(0, resolved_new_ - downstream_view_.pointer()));
  g.eps = estimator_.estimate(index_);
  for (const auto& s : in_flight_) {
    if (s.hi < w_min_) continue;
    if (s.kind == PacketKind::New) g.fresh += 1;
    else if (is_fec(s.kind)) g.same += 1;
  }
  return g;
}

double NetNode::dof_rate_gap() const {
  const GapTerms g = gap_terms();
  return mhnc::dof_rate_gap(g.missing, g.eps, g.fresh, 0.0, g.same);
}

bool NetNode::posterior_due() const {
  const GapTerms g = gap_terms();
  // Nothing expected missing means nothing to repair, whatever 0/0 evaluates to.
  if (g.missing + g.eps * g.fresh <= 0.0) return false;
  return mhnc::dof_rate_gap(g.missing, g.eps, g.fresh, 0.0, g.same) >= 0.0;
}

double NetNode::blank_space_budget() const {
  std::vector<double> eps(static_cast<std::size_t>(cfg_.hop_count()));
  for (int i = index_; i < cfg_.hop_count(); ++i) eps[static_cast<std::size_t>(i)] = estimator_.estimate(i);
  return blank_space_duration(index_, estimator_.bottleneck(), cfg_.rtt_per_hop, eps, cfg_.alpha);
}

double NetNode::blank_space_rate(double remaining) const {
  const int bn = estimator_.bottleneck();
  return blank_space_dof_rate(estimator_.estimate(index_), estimator_.estimate(bn), bn - index_, remaining,
                              cfg_.log_base);
}

NodeOutput& NetNode::transmit(NodeOutput& out, Slot t, PacketKind kind) {
  const DofIndex lo = window_open() ? w_min_ : w_max_;
  out.packet = coder_.make_packet(index_, t, buffer_, lo, w_max_, kind);
  out.action = action_for(kind);
  in_flight_.push_back({t, lo, w_max_, kind});
  return out;
}

NodeOutput& NetNode::pause(NodeOutput& out, Action a) {
  ++idle_count_;
  out.action = a;
  return out;
}

}  // namespace mhnc
