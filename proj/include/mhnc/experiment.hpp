#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mhnc/config.hpp"
#include "mhnc/metrics.hpp"
#include "mhnc/simulation.hpp"

namespace mhnc {

// Raised for malformed experiment files; the message names the line.
class SpecError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ExperimentSpec {
  NetworkConfig base;
  std::string sweep_parameter = "eps2";
  std::vector<double> sweep_values{0.2, 0.3, 0.4, 0.5, 0.6};
  std::vector<ProtocolKind> protocols = all_protocols();
  int seed_count = 10;
  std::uint64_t first_seed = 1;
  // Empty means "out".
  std::filesystem::path output_dir;
  bool emit_traces = false;
  bool verification = false;
  unsigned threads = 0;

  std::vector<std::uint64_t> seeds() const;
};

// Flat `key = value` text. Lines starting with '#' and blank lines are
// ignored; lists are written `[a, b, c]`; strings may be quoted.
//
//   node_count, horizon, max_window, delivery_window, seed, payload_symbols,
//   seeds, threads                          integers
//   erasure_rates, rtt_per_hop              lists
//   arrival_rate, alpha, threshold, log_base reals
//   sweep = <parameter>, values = [..]      the sweep axis
//   protocols = [bs, netfec, mpmh, srarq]
//   output_dir = <path>, traces = <bool>, verification = <bool>
//
// Unknown keys, duplicates and type errors raise SpecError. The resulting
// base config and every sweep point are validated.
ExperimentSpec parse_spec(std::istream& in);
ExperimentSpec load_spec(const std::filesystem::path& path);

// One line of the metrics CSV.
struct MetricsRow {
  std::string protocol;
  double value = 0.0;
  std::uint64_t seed = 0;
  double usage = 0.0;
  std::vector<double> node_usage;
  double goodput = 0.0;
  double delivery_rate = 0.0;
  // Absent when nothing was decoded.
  std::optional<double> delay_mean;
  std::optional<double> delay_max;

  friend bool operator==(const MetricsRow&, const MetricsRow&) = default;
};

struct MetricsTable {
  std::string parameter = "eps2";
  int hop_count = 5;
  std::vector<MetricsRow> rows;
};

inline constexpr std::string_view kMetricsSchema = "# mhnc-metrics v1";

MetricsRow metrics_row(const SweepEntry& e);
MetricsTable metrics_table(const std::vector<SweepEntry>& entries, std::string_view parameter, int hop_count);

// Header: protocol,<parameter>,seed,U,U0..U{H-1},eta,R_del,D_mean,D_max.
std::string metrics_header(std::string_view parameter, int hop_count);
void write_metrics_csv(std::ostream& out, const MetricsTable& table);
// Throws std::runtime_error on a schema or field mismatch.
MetricsTable read_metrics_csv(std::istream& in);

// `slot,node,action`, one line per (slot, transmitting node).
void write_trace(std::ostream& out, const RunLedger& ledger);
std::string trace_file_name(const SweepEntry& e, std::string_view parameter);

struct ExperimentResult {
  std::filesystem::path metrics_csv;
  std::vector<std::filesystem::path> traces;
  std::vector<std::filesystem::path> charts;
  MetricsTable table;
};

// Runs the sweep, writes the metrics CSV (and traces when requested), then
// renders the charts from the written CSV.
ExperimentResult run_experiment(const ExperimentSpec& spec);

// Oracle-equivalence suite: random N-node instances checked against GF(2^8)
// elimination.
struct VerifyOptions {
  int instances = 20;
  Slot slots = 500;
  int nodes = 3;
  std::uint64_t first_seed = 1;
  std::vector<ProtocolKind> protocols{ProtocolKind::BlankSpace, ProtocolKind::NetFec, ProtocolKind::MpMh};
  unsigned threads = 0;
};

struct VerifyInstance {
  ProtocolKind protocol = ProtocolKind::BlankSpace;
  NetworkConfig config;
  VerificationSummary summary;
};

struct VerifyReport {
  std::vector<VerifyInstance> instances;
  std::int64_t opportunities = 0;
  std::int64_t disagreements = 0;
  std::int64_t attributable = 0;

  double disagreement_rate() const;
  double agreement_ratio() const { return 1.0 - disagreement_rate(); }
  bool passed(double max_rate = 1e-2) const;
};

// Instance k draws its erasure rates uniformly from [0.05, 0.5].
NetworkConfig verification_instance(const VerifyOptions& opts, int k);
VerifyReport run_verification(const VerifyOptions& opts);
void write_verify_report(std::ostream& out, const VerifyReport& report);

}  // namespace mhnc
