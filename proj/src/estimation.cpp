#include "mhnc/estimation.hpp"

#include <stdexcept>
#include <string>

namespace mhnc {

ErasureEstimator::ErasureEstimator(NodeIndex node, int hop_count)
    : node_(node), hop_count_(hop_count), counts_(static_cast<std::size_t>(hop_count)) {}

void ErasureEstimator::record(int channel, bool ack) {
  if (channel < 0 || channel >= hop_count_)
    throw std::invalid_argument("estimator: channel " + std::to_string(channel) + " out of range");
  auto& c = counts_[static_cast<std::size_t>(channel)];
  c.total += 1;
  c.acks += ack ? 1 : 0;
}

void ErasureEstimator::ingest_feedback(const FeedbackBundle& fb) {
  for (const auto& d : fb.downstream)
    if (d.channel <= node_)
      throw std::invalid_argument("estimator: malformed bundle, triple for channel " +
                                  std::to_string(d.channel) + " at node " + std::to_string(node_));
  if (node_ < hop_count_) {
    record(node_, fb.ack);
    to_forward_.push_back({node_, fb.acked_packet_created_at, fb.ack});
  }
  for (const auto& d : fb.downstream) {
    record(d.channel, d.ack);
    to_forward_.push_back(d);
  }
}

double ErasureEstimator::estimate(int channel) const {
  const auto& c = counts_.at(static_cast<std::size_t>(channel));
  if (c.total == 0) return 0.0;
  return 1.0 - static_cast<double>(c.acks) / static_cast<double>(c.total);
}

std::int64_t ErasureEstimator::samples(int channel) const {
  return counts_.at(static_cast<std::size_t>(channel)).total;
}

int ErasureEstimator::bottleneck() const {
  int best = node_;
  for (int i = node_ + 1; i < hop_count_; ++i)
    if (estimate(i) > estimate(best)) best = i;
  return best;
}

FeedbackBundle ErasureEstimator::build_outgoing_bundle(bool local_ack, Slot created_at) {
  FeedbackBundle fb;
  fb.acked_packet_created_at = created_at;
  fb.ack = local_ack;
  fb.downstream = std::move(to_forward_);
  to_forward_.clear();
  return fb;
}

}  // namespace mhnc
