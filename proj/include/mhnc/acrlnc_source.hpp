#pragma once

#include <deque>

#include "mhnc/config.hpp"
#include "mhnc/estimation.hpp"
#include "mhnc/node.hpp"

namespace mhnc {

struct AcrlncSourceOptions {
  // Feedback loop length used for the a-priori period and the unknown area.
  Slot rtt = 100;
  // Send a same-window FEC packet instead of pausing once data exists.
  bool fill_idle = true;
};

// Single-path AC-RLNC encoder driven by end-to-end destination feedback, as
// used by the multipath-multihop baseline. The window advances when the
// destination reports in-order decoding.
class AcrlncSource : public Node {
 public:
  AcrlncSource(const NetworkConfig& cfg, AcrlncSourceOptions opts);

  NodeIndex index() const override { return 0; }
  NodeOutput step(const NodeInput& in) override;

  DofIndex w_min() const { return w_min_; }
  DofIndex w_max() const { return w_max_; }
  std::int64_t apriori_pending() const { return apriori_pending_; }
  std::int64_t idle_count() const { return idle_count_; }
  double estimate() const { return estimator_.estimate(0); }
  // Gap between expected missing and expected repair DoFs.
  double dof_rate_gap() const;

 private:
  bool window_open() const { return w_max_ >= w_min_; }
  NodeOutput& transmit(NodeOutput& out, Slot t, PacketKind kind);

  const NetworkConfig& cfg_;
  AcrlncSourceOptions opts_;
  double threshold_;
  std::int64_t max_window_;
  DofBuffer buffer_;
  ErasureEstimator estimator_;
  Coder coder_;

  DofIndex w_min_ = 0;
  DofIndex w_max_ = -1;
  std::int64_t known_missing_ = 0;
  struct Sent {
    Slot at;
    PacketKind kind;
  };
  std::deque<Sent> unknown_;
  std::int64_t new_this_period_ = 0;
  std::int64_t apriori_pending_ = 0;
  std::int64_t idle_count_ = 0;
};

}  // namespace mhnc
