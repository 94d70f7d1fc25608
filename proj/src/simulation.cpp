#include "mhnc/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

#include "mhnc/acrlnc_source.hpp"
#include "mhnc/baselines.hpp"
#include "mhnc/net_node.hpp"

namespace mhnc {

namespace {

Sink::Mode sink_mode(ProtocolKind p) {
  return p == ProtocolKind::SrArq ? Sink::Mode::InOrderRaw : Sink::Mode::Coded;
}

}  // namespace

Simulation::Simulation(const NetworkConfig& cfg, ProtocolKind protocol)
    : cfg_((require_valid(cfg), cfg)),
      protocol_(protocol),
      arrivals_(cfg.seed, StreamTag::Arrivals, 0),
      sink_(cfg_, sink_mode(protocol)),
      report_line_(cfg.global_rtt() / 2) {
  const int hops = cfg_.hop_count();
  for (int n = 0; n < hops; ++n) {
    channels_.emplace_back(n, cfg_.erasure_rates[static_cast<std::size_t>(n)],
                           cfg_.rtt_per_hop[static_cast<std::size_t>(n)], cfg_.seed);
    start_.push_back(cfg_.start_slot(n));
  }
  for (int n = 0; n < hops; ++n) {
    switch (protocol) {
      case ProtocolKind::BlankSpace:
        nodes_.push_back(std::make_unique<NetNode>(cfg_, n, NetNodeOptions{true, true}));
        break;
      case ProtocolKind::NetFec:
        nodes_.push_back(std::make_unique<NetNode>(cfg_, n, NetNodeOptions{false, false}));
        break;
      case ProtocolKind::MpMh:
        if (n == 0) nodes_.push_back(std::make_unique<AcrlncSource>(cfg_, AcrlncSourceOptions{cfg_.global_rtt(), true}));
        else nodes_.push_back(std::make_unique<MpMhRelay>(cfg_, n));
        break;
      case ProtocolKind::SrArq:
        nodes_.push_back(std::make_unique<SrArqNode>(cfg_, n));
        break;
    }
  }
  ledger_.config = cfg_;
  ledger_.protocol = protocol;
  ledger_.actions.assign(static_cast<std::size_t>(hops), {});
  for (auto& row : ledger_.actions) row.reserve(static_cast<std::size_t>(cfg_.horizon));
  ledger_.idle.assign(static_cast<std::size_t>(hops), 0);
}

Simulation::~Simulation() = default;

void Simulation::step() {
  if (done()) throw ProtocolViolation("simulation stepped past its horizon");
  const Slot t = t_;
  const int hops = cfg_.hop_count();

  std::vector<InfoIndex> arrivals;
  if (arrivals_.bernoulli(cfg_.effective_arrival_rate())) {
    arrivals.push_back(next_info_++);
    ledger_.arrival_times.push_back(t);
  }

  std::vector<ErasureChannel::Arrivals> polled;
  polled.reserve(static_cast<std::size_t>(hops));
  for (auto& ch : channels_) polled.push_back(ch.poll(t));
  std::optional<FeedbackBundle> report = report_line_.poll(t);

  for (int n = 0; n < hops; ++n) {
    const auto un = static_cast<std::size_t>(n);
    if (t < start_[un]) {
      if ((n > 0 && polled[un - 1].forward) || polled[un].feedback)
        throw ProtocolViolation("delivery to node " + std::to_string(n) + " before its start slot");
      ledger_.actions[un].push_back(Action::PreOp);
      continue;
    }
    NodeInput in;
    in.t = t;
    if (n == 0) in.arrivals = arrivals;
    if (n > 0) in.forward = polled[un - 1].forward;
    in.feedback = polled[un].feedback;
    if (n == 0 && protocol_ == ProtocolKind::MpMh) {
      if (in.feedback) throw ProtocolViolation("per-hop feedback reached the end-to-end source");
      in.feedback = report;
    }
    NodeOutput out = nodes_[un]->step(in);
    if (out.packet) {
      if (out.packet->w_min > out.packet->w_max)
        throw ProtocolViolation("node " + std::to_string(n) + " emitted an empty window");
      channels_[un].push_forward(t, std::move(*out.packet));
    }
    if (out.upstream && n > 0) channels_[un - 1].push_feedback(t, std::move(*out.upstream));
    if (out.blank_space_budget)
      ledger_.budgets.push_back({t, n, *out.blank_space_budget, out.blank_space_bottleneck});
    if (out.blank_space_check) ledger_.checks.push_back({t, n, *out.blank_space_check});
    ledger_.actions[un].push_back(out.action);
    if (is_idle(out.action)) ++ledger_.idle[un];
  }

  if (const auto& last = polled.back().forward) {
    const bool e2e = protocol_ == ProtocolKind::MpMh;
    FeedbackBundle fb = sink_.absorb(*last, t, e2e);
    if (e2e) report_line_.push(t, std::move(fb));
    else channels_.back().push_feedback(t, std::move(fb));
  }
  ++t_;
}

RunLedger Simulation::finish() {
  while (!done()) step();
  ledger_.decode_times = sink_.decode_times();
  finalize_verification();
  return std::move(ledger_);
}

void Simulation::finalize_verification() {
  if (!cfg_.verification) return;
  auto& v = ledger_.verification;
  const auto& sv = sink_.verification();
  auto take = [&](const RankAudit& a) {
    v.deficiency_events += a.deficiency_events;
    v.excess_events += a.excess_events;
  };
  for (const auto& n : nodes_) take(n->audit());
  take(sink_.audit());
  v.opportunities = sv.opportunities;
  v.disagreements = sv.disagreements;
  v.attributable = sv.attributed;
  v.fast_decoded = static_cast<std::int64_t>(sink_.decode_times().size());
  v.real_decoded = static_cast<std::int64_t>(sv.real_decode_times.size());
}

RunLedger run(const NetworkConfig& cfg, ProtocolKind protocol) {
  Simulation sim(cfg, protocol);
  return sim.finish();
}

bool is_sweep_parameter(std::string_view name) {
  if (name == "alpha" || name == "threshold" || name == "arrival_rate" || name == "max_window" ||
      name == "horizon")
    return true;
  if (name.size() > 3 && name.substr(0, 3) == "eps")
    return std::all_of(name.begin() + 3, name.end(), [](char c) { return c >= '0' && c <= '9'; });
  return false;
}

void apply_parameter(NetworkConfig& cfg, std::string_view name, double value) {
  if (!is_sweep_parameter(name)) throw std::invalid_argument("unknown sweep parameter: " + std::string(name));
  if (name == "alpha") cfg.alpha = value;
  else if (name == "threshold") cfg.threshold = value;
  else if (name == "arrival_rate") cfg.arrival_rate = value;
  else if (name == "max_window") cfg.max_window = static_cast<std::int64_t>(value);
  else if (name == "horizon") cfg.horizon = static_cast<Slot>(value);
  else {
    const auto i = static_cast<std::size_t>(std::stoul(std::string(name.substr(3))));
    if (i >= cfg.erasure_rates.size())
      throw std::invalid_argument("sweep parameter " + std::string(name) + " names no channel");
    cfg.erasure_rates[i] = value;
  }
}

double get_parameter(const NetworkConfig& cfg, std::string_view name) {
  if (!is_sweep_parameter(name)) throw std::invalid_argument("unknown sweep parameter: " + std::string(name));
  if (name == "alpha") return cfg.alpha;
  if (name == "threshold") return cfg.threshold;
  if (name == "arrival_rate") return cfg.effective_arrival_rate();
  if (name == "max_window") return static_cast<double>(cfg.effective_max_window());
  if (name == "horizon") return static_cast<double>(cfg.horizon);
  const auto i = static_cast<std::size_t>(std::stoul(std::string(name.substr(3))));
  if (i >= cfg.erasure_rates.size())
    throw std::invalid_argument("sweep parameter " + std::string(name) + " names no channel");
  return cfg.erasure_rates[i];
}

std::vector<SweepEntry> sweep(const NetworkConfig& base, std::string_view parameter,
                              const std::vector<double>& values, const std::vector<std::uint64_t>& seeds,
                              const std::vector<ProtocolKind>& protocols, unsigned threads) {
  if (!is_sweep_parameter(parameter))
    throw std::invalid_argument("unknown sweep parameter: " + std::string(parameter));
  std::vector<SweepEntry> out;
  std::vector<NetworkConfig> configs;
  for (double v : values)
    for (ProtocolKind p : protocols)
      for (std::uint64_t s : seeds) {
        NetworkConfig cfg = base;
        apply_parameter(cfg, parameter, v);
        cfg.seed = s;
        require_valid(cfg);
        out.push_back({p, v, s, {}});
        configs.push_back(std::move(cfg));
      }
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, out.size())));

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&] {
    for (std::size_t i = next++; i < out.size(); i = next++) {
      try {
        out[i].ledger = run(configs[i], out[i].protocol);
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned k = 0; k < threads; ++k) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace mhnc
