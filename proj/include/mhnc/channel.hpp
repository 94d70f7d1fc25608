#pragma once

#include <deque>
#include <string>
#include <optional>
#include <utility>

#include "mhnc/rng.hpp"
#include "mhnc/types.hpp"

namespace mhnc {

// Fixed-latency FIFO. At most one entry may be pushed per slot.
template <typename T>
class DelayLine {
 public:
  explicit DelayLine(Slot delay) : delay_(delay) {}

  void push(Slot t, T value) {
    if (last_push_ && *last_push_ >= t)
      throw ProtocolViolation("delay line: second push in slot " + std::to_string(t));
    last_push_ = t;
    queue_.emplace_back(t + delay_, std::move(value));
  }

  // Removes and returns the entry due at slot t, if any.
  std::optional<T> poll(Slot t) {
    if (!queue_.empty() && queue_.front().first < t)
      throw ProtocolViolation("delay line: entry due at slot " +
                              std::to_string(queue_.front().first) + " was never polled");
    if (queue_.empty() || queue_.front().first != t) return std::nullopt;
    T v = std::move(queue_.front().second);
    queue_.pop_front();
    return v;
  }

  Slot delay() const { return delay_; }
  std::size_t in_flight() const { return queue_.size(); }

 private:
  Slot delay_;
  std::deque<std::pair<Slot, T>> queue_;
  std::optional<Slot> last_push_;
};

// Binary erasure forward channel plus the noiseless reverse feedback line of
// one hop.
class ErasureChannel {
 public:
  ErasureChannel(int index, double erasure_rate, Slot rtt, std::uint64_t seed);

  int index() const { return index_; }
  double erasure_rate() const { return erasure_rate_; }
  Slot one_way_delay() const { return forward_.delay(); }

  // Draws the erasure for this packet; an erased packet still arrives as a
  // marker so the receiver can NACK it.
  void push_forward(Slot t, CodedPacket pkt);
  void push_feedback(Slot t, FeedbackBundle fb);

  struct Arrivals {
    std::optional<Delivery> forward;
    std::optional<FeedbackBundle> feedback;
  };
  Arrivals poll(Slot t);

  // Raw erasure draw, exposed for statistical tests of the channel model.
  bool draw_erasure() { return rng_.bernoulli(erasure_rate_); }

 private:
  int index_;
  double erasure_rate_;
  Rng rng_;
  DelayLine<Delivery> forward_;
  DelayLine<FeedbackBundle> feedback_;
};

}  // namespace mhnc
