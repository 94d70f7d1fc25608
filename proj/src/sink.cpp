#include "mhnc/sink.hpp"

#include <algorithm>

namespace mhnc {

Sink::Sink(const NetworkConfig& cfg, Mode mode)
    : mode_(mode), verify_(cfg.verification && mode == Mode::Coded),
      real_(static_cast<std::size_t>(cfg.payload_symbols)) {}

FeedbackBundle Sink::absorb(const Delivery& d, Slot t, bool with_report) {
  bool usable = true;
  if (d.packet) {
    if (mode_ == Mode::Coded) usable = absorb_coded(*d.packet, t);
    else absorb_raw(*d.packet, t);
  }
  FeedbackBundle fb;
  fb.acked_packet_created_at = d.created_at;
  fb.ack = !d.erased() && usable;
  if (with_report) fb.destination = report();
  return fb;
}

DestinationReport Sink::report() const {
  DestinationReport r;
  r.rank = rank_;
  r.highest_seen = highest_seen_;
  r.decoded_frontier = frontier_;
  return r;
}

bool Sink::absorb_coded(const CodedPacket& pkt, Slot t) {
  const bool fast = seen_.accepts(pkt.w_min, pkt.w_max);
  bool usable = true;
  if (verify_ && pkt.row) {
    const bool real = real_.insert(*pkt.row);
    audit_.fast_innovative += fast ? 1 : 0;
    audit_.real_innovative += real ? 1 : 0;
    if (fast && !real) {
      ++audit_.deficiency_events;
      audit_.deficiency_slots.push_back(t);
      usable = false;
    }
    if (!fast && real) ++audit_.excess_events;
  }
  if (fast && usable) count(pkt, t);

  if (verify_ && pkt.row) {
    auto& rt = verification_.real_decode_times;
    while (static_cast<InfoIndex>(rt.size()) <= real_.decoded_prefix()) rt.push_back(t);
    ++verification_.opportunities;
    if (real_.decoded_prefix() != frontier_) {
      ++verification_.disagreements;
      verification_.disagreement_slots.push_back(t);
      if (real_.decoded_prefix() > frontier_ && real_.rank_without(frontier_ + 1) < real_.rank())
        ++verification_.attributed;
    }
  }
  return usable;
}

void Sink::count(const CodedPacket& pkt, Slot t) {
  seen_.observe(pkt.w_min, pkt.w_max);
  ++rank_;
  highest_seen_ = std::max(highest_seen_, pkt.info_hi);
  if (decoded_.add(pkt.w_max, pkt.certified)) advance(decoded_.prefix(), t);
}

void Sink::absorb_raw(const CodedPacket& pkt, Slot t) {
  const auto i = static_cast<std::size_t>(pkt.info_hi);
  if (raw_have_.size() <= i) raw_have_.resize(i + 1, false);
  if (!raw_have_[i]) ++rank_;
  raw_have_[i] = true;
  highest_seen_ = std::max(highest_seen_, pkt.info_hi);
  InfoIndex f = frontier_;
  while (f + 1 < static_cast<InfoIndex>(raw_have_.size()) && raw_have_[static_cast<std::size_t>(f + 1)]) ++f;
  advance(f, t);
}

void Sink::advance(InfoIndex to, Slot t) {
  while (frontier_ < to) {
    ++frontier_;
    decode_times_.push_back(t);
  }
}

}  // namespace mhnc
