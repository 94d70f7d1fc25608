#include "mhnc/channel.hpp"

namespace mhnc {

ErasureChannel::ErasureChannel(int index, double erasure_rate, Slot rtt, std::uint64_t seed)
    : index_(index),
      erasure_rate_(erasure_rate),
      rng_(seed, StreamTag::Channel, static_cast<std::uint64_t>(index)),
      forward_(rtt / 2),
      feedback_(rtt / 2) {}

void ErasureChannel::push_forward(Slot t, CodedPacket pkt) {
  Delivery d;
  d.created_at = t;
  if (!draw_erasure()) d.packet = std::move(pkt);
  forward_.push(t, std::move(d));
}

void ErasureChannel::push_feedback(Slot t, FeedbackBundle fb) { feedback_.push(t, std::move(fb)); }

ErasureChannel::Arrivals ErasureChannel::poll(Slot t) {
  return Arrivals{forward_.poll(t), feedback_.poll(t)};
}

}  // namespace mhnc
