#include "mhnc/acrlnc_source.hpp"

#include <algorithm>

#include "mhnc/formulas.hpp"

namespace mhnc {

AcrlncSource::AcrlncSource(const NetworkConfig& cfg, AcrlncSourceOptions opts)
    : cfg_(cfg),
      opts_(opts),
      threshold_(cfg.threshold),
      max_window_(cfg.effective_max_window()),
      estimator_(0, 1),
      coder_(cfg, 0) {}

NodeOutput AcrlncSource::step(const NodeInput& in) {
  NodeOutput out;
  for (InfoIndex i : in.arrivals) buffer_.append(i, i, coder_.info_row(i));

  if (in.feedback) {
    const FeedbackBundle& fb = *in.feedback;
    estimator_.record(0, fb.ack);
    if (fb.destination) {
      const auto& r = *fb.destination;
      w_min_ = std::max(w_min_, r.decoded_frontier + 1);
      known_missing_ = std::max<std::int64_t>(0, r.highest_seen + 1 - r.rank);
    }
  }
  while (!unknown_.empty() && unknown_.front().at <= in.t - opts_.rtt) unknown_.pop_front();
  if (w_max_ >= 0) buffer_.drop_below(std::min(w_min_, w_max_));

  if (in.t % opts_.rtt == 0) {
    apriori_pending_ = window_open() ? apriori_fec_count(estimate(), new_this_period_) : 0;
    new_this_period_ = 0;
  }

  if (apriori_pending_ > 0 && window_open()) {
    --apriori_pending_;
    return transmit(out, in.t, PacketKind::FecAPriori);
  }
  if (window_open()) {
    if (w_max_ - w_min_ >= max_window_) return transmit(out, in.t, PacketKind::FecEow);
    if (dof_rate_gap() - threshold_ > 0.0) return transmit(out, in.t, PacketKind::FecPosterior);
  }
  if (buffer_.size() > w_max_ + 1) {
    ++w_max_;
    ++new_this_period_;
    return transmit(out, in.t, PacketKind::New);
  }
  if (opts_.fill_idle && w_max_ >= 0) return transmit(out, in.t, PacketKind::FecFill);
  ++idle_count_;
  out.action = Action::NnfIdle;
  return out;
}

double AcrlncSource::dof_rate_gap() const {
  double fresh = 0, same = 0;
  for (const auto& s : unknown_) {
    if (s.kind == PacketKind::New) fresh += 1;
    else if (is_fec(s.kind)) same += 1;
  }
  return mhnc::dof_rate_gap(static_cast<double>(known_missing_), estimate(), fresh, 0.0, same);
}

NodeOutput& AcrlncSource::transmit(NodeOutput& out, Slot t, PacketKind kind) {
  const DofIndex lo = window_open() ? w_min_ : w_max_;
  out.packet = coder_.make_packet(0, t, buffer_, lo, w_max_, kind);
  out.action = action_for(kind);
  unknown_.push_back({t, kind});
  return out;
}

}  // namespace mhnc
