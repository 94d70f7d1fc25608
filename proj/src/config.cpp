#include "mhnc/config.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace mhnc {

std::string_view to_string(ProtocolKind p) {
  switch (p) {
    case ProtocolKind::BlankSpace: return "bs";
    case ProtocolKind::NetFec: return "netfec";
    case ProtocolKind::MpMh: return "mpmh";
    case ProtocolKind::SrArq: return "srarq";
  }
  return "?";
}

ProtocolKind parse_protocol(std::string_view name) {
  for (auto p : all_protocols())
    if (to_string(p) == name) return p;
  throw std::invalid_argument("unknown protocol '" + std::string(name) +
                              "' (expected bs, netfec, mpmh or srarq)");
}

const std::vector<ProtocolKind>& all_protocols() {
  static const std::vector<ProtocolKind> kAll{ProtocolKind::BlankSpace, ProtocolKind::NetFec,
                                              ProtocolKind::MpMh, ProtocolKind::SrArq};
  return kAll;
}

Slot NetworkConfig::global_rtt() const {
  return std::accumulate(rtt_per_hop.begin(), rtt_per_hop.end(), Slot{0});
}

Slot NetworkConfig::start_slot(NodeIndex n) const {
  Slot s = 0;
  for (NodeIndex i = 0; i < n && i < static_cast<NodeIndex>(rtt_per_hop.size()); ++i)
    s += rtt_per_hop[static_cast<std::size_t>(i)] / 2;
  return s;
}

int NetworkConfig::configured_bottleneck() const {
  int best = 0;
  for (int i = 1; i < static_cast<int>(erasure_rates.size()); ++i)
    if (erasure_rates[static_cast<std::size_t>(i)] > erasure_rates[static_cast<std::size_t>(best)])
      best = i;
  return best;
}

double NetworkConfig::effective_arrival_rate() const {
  if (arrival_rate >= 0.0) return arrival_rate;
  if (erasure_rates.empty()) return 0.0;
  const double eps_bn = erasure_rates[static_cast<std::size_t>(configured_bottleneck())];
  return std::clamp(1.0 - eps_bn - 0.1, 0.0, 1.0);
}

std::int64_t NetworkConfig::effective_max_window() const {
  return max_window > 0 ? max_window : 2 * global_rtt();
}

std::vector<std::string> validate_config(const NetworkConfig& cfg) {
  std::vector<std::string> errors;
  if (cfg.node_count < 2) {
    errors.emplace_back("node_count < 2");
  } else {
    const auto hops = static_cast<std::size_t>(cfg.node_count - 1);
    if (cfg.erasure_rates.size() != hops)
      errors.emplace_back("erasure_rates must list node_count - 1 channels");
    if (cfg.rtt_per_hop.size() != hops)
      errors.emplace_back("rtt_per_hop must list node_count - 1 channels");
  }
  for (std::size_t i = 0; i < cfg.erasure_rates.size(); ++i) {
    const double e = cfg.erasure_rates[i];
    if (!(e >= 0.0 && e <= 1.0))
      errors.emplace_back("erasure rate of channel " + std::to_string(i) + " outside [0,1]");
  }
  for (std::size_t i = 0; i < cfg.rtt_per_hop.size(); ++i) {
    const Slot r = cfg.rtt_per_hop[i];
    if (r <= 0)
      errors.emplace_back("non-positive RTT on channel " + std::to_string(i));
    else if (r % 2 != 0)
      errors.emplace_back("odd RTT on channel " + std::to_string(i));
  }
  if (cfg.horizon < 0) errors.emplace_back("negative horizon");
  if (cfg.arrival_rate > 1.0) errors.emplace_back("arrival rate above 1");
  if (cfg.alpha < 0.0) errors.emplace_back("negative alpha");
  if (cfg.max_window < 0) errors.emplace_back("negative max_window");
  if (cfg.delivery_window <= 0)
    errors.emplace_back("delivery_window must be positive");
  else if (cfg.horizon > 0 && cfg.delivery_window >= cfg.horizon)
    errors.emplace_back("delivery_window must be smaller than the horizon");
  if (cfg.log_base != 0.0 && (cfg.log_base <= 0.0 || cfg.log_base == 1.0))
    errors.emplace_back("log_base must be positive and not 1");
  if (cfg.payload_symbols <= 0) errors.emplace_back("payload_symbols must be positive");
  return errors;
}

void require_valid(const NetworkConfig& cfg) {
  const auto errors = validate_config(cfg);
  if (errors.empty()) return;
  std::ostringstream os;
  os << "invalid configuration:";
  for (const auto& e : errors) os << "\n  - " << e;
  throw std::invalid_argument(os.str());
}

NetworkConfig reference_chain(double eps2) {
  NetworkConfig cfg;
  cfg.node_count = 6;
  cfg.erasure_rates = {0.1, 0.4, eps2, 0.3, 0.1};
  cfg.rtt_per_hop = {20, 20, 20, 20, 20};
  cfg.horizon = 5000;
  return cfg;
}

}  // namespace mhnc
