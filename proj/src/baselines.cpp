#include "mhnc/baselines.hpp"

#include <algorithm>
#include <string>

namespace mhnc {

MpMhRelay::MpMhRelay(const NetworkConfig& cfg, NodeIndex index)
    : index_(index), start_(cfg.start_slot(index)), coder_(cfg, index) {}

NodeOutput MpMhRelay::step(const NodeInput& in) {
  if (in.t < start_) throw ProtocolViolation("relay " + std::to_string(index_) + " stepped early");
  NodeOutput out;
  if (in.forward && in.forward->packet) {
    const CodedPacket& pkt = *in.forward->packet;
    const bool fresh = ingress_.accepts(pkt.w_min, pkt.w_max);
    if (coder_.audit_reception(pkt, fresh, in.t) && fresh) {
      ingress_.observe(pkt.w_min, pkt.w_max);
      decoded_.add(pkt.w_max, pkt.certified);
      buffer_.append(pkt.info_hi, decoded_.prefix(), pkt.row);
    }
  }
  if (buffer_.size() == 0) {
    out.action = Action::NnfIdle;
    return out;
  }
  const PacketKind kind = buffer_.size() > sent_up_to_ ? PacketKind::New : PacketKind::FecFill;
  sent_up_to_ = buffer_.size();
  out.packet = coder_.make_packet(index_, in.t, buffer_, 0, buffer_.size() - 1, kind);
  out.action = action_for(kind);
  return out;
}

SrArqNode::SrArqNode(const NetworkConfig& cfg, NodeIndex index)
    : index_(index),
      start_(cfg.start_slot(index)),
      rtt_(cfg.rtt_per_hop.at(static_cast<std::size_t>(index))),
      window_(cfg.rtt_per_hop.at(static_cast<std::size_t>(index))) {}

NodeOutput SrArqNode::step(const NodeInput& in) {
  if (in.t < start_) throw ProtocolViolation("ARQ node " + std::to_string(index_) + " stepped early");
  NodeOutput out;
  for (InfoIndex i : in.arrivals) items_.push_back(i);
  if (in.forward) receive(in, out);
  if (in.feedback) feedback(*in.feedback);
  status_.resize(items_.size());

  // Retransmission timer: one RTT without any outstanding copy or feedback.
  for (std::int64_t s = base_; s < next_; ++s) {
    auto& st = status_[static_cast<std::size_t>(s)];
    if (!st.acked && st.outstanding == 0 && !st.resend && in.t - st.last_sent > rtt_) st.resend = true;
  }

  for (std::int64_t s = base_; s < next_; ++s) {
    auto& st = status_[static_cast<std::size_t>(s)];
    if (st.resend && !st.acked) {
      st.resend = false;
      ++st.outstanding;
      st.last_sent = in.t;
      in_flight_.emplace_back(in.t, s);
      out.packet = packet_for(s, in.t, PacketKind::Retransmission);
      out.action = Action::Retransmission;
      return out;
    }
  }
  if (next_ < static_cast<std::int64_t>(items_.size()) && static_cast<std::int64_t>(in_flight_.size()) < window_) {
    auto& st = status_[static_cast<std::size_t>(next_)];
    ++st.outstanding;
    st.last_sent = in.t;
    in_flight_.emplace_back(in.t, next_);
    out.packet = packet_for(next_, in.t, PacketKind::New);
    out.action = Action::New;
    ++next_;
    return out;
  }
  out.action = Action::NnfIdle;
  return out;
}

void SrArqNode::receive(const NodeInput& in, NodeOutput& out) {
  const Delivery& d = *in.forward;
  if (d.packet) {
    const std::int64_t seq = d.packet->w_min;
    if (seq >= expected_) out_of_order_.emplace(seq, d.packet->info_hi);
    for (auto it = out_of_order_.find(expected_); it != out_of_order_.end();
         it = out_of_order_.find(expected_)) {
      items_.push_back(it->second);
      out_of_order_.erase(it);
      ++expected_;
    }
  }
  FeedbackBundle fb;
  fb.acked_packet_created_at = d.created_at;
  fb.ack = !d.erased();
  out.upstream = std::move(fb);
}

void SrArqNode::feedback(const FeedbackBundle& fb) {
  if (in_flight_.empty() || in_flight_.front().first != fb.acked_packet_created_at)
    throw ProtocolViolation("ARQ node " + std::to_string(index_) + ": unexpected feedback");
  const std::int64_t seq = in_flight_.front().second;
  in_flight_.pop_front();
  auto& st = status_[static_cast<std::size_t>(seq)];
  --st.outstanding;
  if (fb.ack) st.acked = true;
  else if (!st.acked) st.resend = true;
  while (base_ < next_ && status_[static_cast<std::size_t>(base_)].acked) ++base_;
}

CodedPacket SrArqNode::packet_for(std::int64_t seq, Slot t, PacketKind kind) const {
  CodedPacket p;
  p.origin = index_;
  p.created_at = t;
  p.w_min = seq;
  p.w_max = seq;
  p.info_hi = items_[static_cast<std::size_t>(seq)];
  p.kind = kind;
  return p;
}

}  // namespace mhnc
