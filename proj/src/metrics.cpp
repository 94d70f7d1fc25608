#include "mhnc/metrics.hpp"

#include <algorithm>
#include <numeric>

namespace mhnc {

bool RunLedger::operator==(const RunLedger& o) const {
  auto same_checks = [&] {
    if (checks.size() != o.checks.size()) return false;
    for (std::size_t i = 0; i < checks.size(); ++i) {
      const auto& a = checks[i];
      const auto& b = o.checks[i];
      if (a.slot != b.slot || a.node != b.node || a.check.remaining != b.check.remaining ||
          a.check.dof_rate != b.check.dof_rate || a.check.eps_bottleneck != b.check.eps_bottleneck ||
          a.check.terminated != b.check.terminated)
        return false;
    }
    return true;
  };
  auto same_budgets = [&] {
    if (budgets.size() != o.budgets.size()) return false;
    for (std::size_t i = 0; i < budgets.size(); ++i)
      if (budgets[i].slot != o.budgets[i].slot || budgets[i].node != o.budgets[i].node ||
          budgets[i].budget != o.budgets[i].budget)
        return false;
    return true;
  };
  return protocol == o.protocol && actions == o.actions && idle == o.idle &&
         arrival_times == o.arrival_times && decode_times == o.decode_times && same_budgets() && same_checks();
}

std::int64_t decoded_before(const RunLedger& l, Slot t) {
  // decode_times is non-decreasing.
  return std::lower_bound(l.decode_times.begin(), l.decode_times.end(), t) - l.decode_times.begin();
}

double goodput(std::int64_t decoded, Slot horizon, std::int64_t source_idle, double half_rtt) {
  const double den = static_cast<double>(horizon) - static_cast<double>(source_idle) - half_rtt;
  if (den <= 0.0) throw DegenerateRun("goodput: non-positive active horizon");
  return static_cast<double>(decoded) / den;
}

double node_usage(std::int64_t idle, Slot horizon, double upstream_half_rtt) {
  const double den = static_cast<double>(horizon) - upstream_half_rtt;
  if (den <= 0.0) return 0.0;
  return 1.0 - static_cast<double>(idle) / den;
}

double goodput(const RunLedger& l) {
  const Slot T = l.config.horizon;
  return goodput(decoded_before(l, T), T, l.idle.empty() ? 0 : l.idle[0],
                 static_cast<double>(l.config.global_rtt()) / 2.0);
}

std::vector<double> delivery_rate(const RunLedger& l, Slot window) {
  const Slot T = l.config.horizon;
  if (window <= 0 || window >= T) throw std::invalid_argument("delivery window must satisfy 0 < T' < T");
  std::vector<double> out;
  for (Slot i = 1; i * window <= T; ++i)
    out.push_back(static_cast<double>(decoded_before(l, i * window) - decoded_before(l, (i - 1) * window)) /
                  static_cast<double>(window));
  return out;
}

double mean_delivery_rate(const RunLedger& l) {
  const auto r = delivery_rate(l, l.config.delivery_window);
  return std::accumulate(r.begin(), r.end(), 0.0) / static_cast<double>(r.size());
}

double network_opportunities(const NetworkConfig& cfg) {
  const int hops = cfg.hop_count();
  double den = 0.0;
  for (int i = 0; i < hops; ++i)
    den += static_cast<double>(cfg.horizon) -
           static_cast<double>(hops - 1 - i) * static_cast<double>(cfg.rtt_per_hop[static_cast<std::size_t>(i)]) / 2.0;
  return den;
}

Usage channel_usage(const RunLedger& l) {
  Usage u;
  const auto& cfg = l.config;
  double upstream = 0.0;
  std::int64_t total_idle = 0;
  for (int n = 0; n < cfg.hop_count(); ++n) {
    const std::int64_t o = l.idle[static_cast<std::size_t>(n)];
    u.per_node.push_back(node_usage(o, cfg.horizon, upstream));
    upstream += static_cast<double>(cfg.rtt_per_hop[static_cast<std::size_t>(n)]) / 2.0;
    total_idle += o;
  }
  const double den = network_opportunities(cfg);
  u.network = den > 0.0 ? 1.0 - static_cast<double>(total_idle) / den : 0.0;
  return u;
}

Delays delays(const RunLedger& l) {
  const std::size_t d = l.decode_times.size();
  if (d == 0) throw DegenerateRun("delay undefined: nothing decoded");
  Delays out;
  double sum = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    const double di = static_cast<double>(l.decode_times[i] - l.arrival_times[i]);
    sum += di;
    out.max = std::max(out.max, di);
  }
  out.mean = sum / static_cast<double>(d);
  out.undelivered = static_cast<std::int64_t>(l.arrival_times.size() - d);
  return out;
}

std::vector<std::int64_t> recount_idle(const RunLedger& l) {
  std::vector<std::int64_t> o;
  for (const auto& row : l.actions)
    o.push_back(std::count_if(row.begin(), row.end(), [](Action a) { return is_idle(a); }));
  return o;
}

RunMetrics summarize(const RunLedger& l) {
  RunMetrics m;
  m.usage = channel_usage(l);
  m.goodput = goodput(l);
  m.delivery_rate = mean_delivery_rate(l);
  if (!l.decode_times.empty()) {
    m.delay = delays(l);
    m.has_delay = true;
  }
  return m;
}

}  // namespace mhnc
