// mhnc: run, sweep, verify and plot the multi-hop coding simulator.
//
//   mhnc run    [--spec f] [--protocol bs] [--seed 1] [--slots n] [--value x] [--verify] [--trace] [--out dir]
//   mhnc sweep  --spec f [--slots n] [--verify] [--trace] [--threads k] [--out dir]
//   mhnc verify [--slots 500] [--nodes 3] [--instances 20] [--seed 1] [--protocol p ...] [--out dir]
//   mhnc plot   --csv metrics.csv [--out dir]
//
// The default output directory is $MHNC_OUT_DIR, or ./out when unset.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "mhnc/experiment.hpp"
#include "mhnc/plot.hpp"

namespace fs = std::filesystem;
using namespace mhnc;

namespace {

fs::path resolve_out(const std::string& flag, const fs::path& from_spec) {
  if (!flag.empty()) return flag;
  if (!from_spec.empty()) return from_spec;
  if (const char* env = std::getenv("MHNC_OUT_DIR"); env && *env) return env;
  return "out";
}

void set_slots(NetworkConfig& cfg, Slot slots) {
  cfg.horizon = slots;
  if (cfg.delivery_window >= slots) cfg.delivery_window = std::max<Slot>(1, slots / 5);
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw std::runtime_error("cannot create output directory " + dir.string());
}

template <class Write>
void write_file(const fs::path& p, Write w) {
  std::ofstream out(p);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  w(out);
  if (!out) throw std::runtime_error("write failed: " + p.string());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Slotted multi-hop network coding simulator"};
  app.require_subcommand(1);

  // run
  auto* run_cmd = app.add_subcommand("run", "Simulate one configuration and print its metrics row");
  std::string run_spec, run_protocol = "bs", run_out;
  std::uint64_t run_seed = 1;
  std::optional<Slot> run_slots;
  std::optional<double> run_value;
  bool run_verify = false, run_trace = false;
  run_cmd->add_option("--spec", run_spec, "Experiment file supplying the base configuration")->check(CLI::ExistingFile);
  run_cmd->add_option("--protocol", run_protocol, "bs | netfec | mpmh | srarq");
  run_cmd->add_option("--seed", run_seed, "Run seed");
  run_cmd->add_option("--slots", run_slots, "Horizon T in slots")->check(CLI::PositiveNumber);
  run_cmd->add_option("--value", run_value, "Value for the experiment file's sweep parameter");
  run_cmd->add_flag("--verify", run_verify, "Carry real GF(2^8) coefficients and decode by elimination");
  run_cmd->add_flag("--trace", run_trace, "Also write the slot,node,action trace");
  run_cmd->add_option("--out", run_out, "Output directory");

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "Run an experiment file and write metrics.csv plus charts");
  std::string sweep_spec, sweep_out;
  std::optional<Slot> sweep_slots;
  std::optional<unsigned> sweep_threads;
  bool sweep_verify = false, sweep_trace = false;
  sweep_cmd->add_option("--spec", sweep_spec, "Experiment file")->required()->check(CLI::ExistingFile);
  sweep_cmd->add_option("--slots", sweep_slots, "Override the horizon")->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--threads", sweep_threads, "Worker threads (0 = all cores)");
  sweep_cmd->add_flag("--verify", sweep_verify, "Verification mode for every run");
  sweep_cmd->add_flag("--trace", sweep_trace, "Write one trace file per run");
  sweep_cmd->add_option("--out", sweep_out, "Output directory");

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "Compare fast DoF accounting with GF(2^8) elimination");
  VerifyOptions vopts;
  std::vector<std::string> verify_protocols;
  std::string verify_out;
  verify_cmd->add_option("--slots", vopts.slots, "Horizon per instance")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--nodes", vopts.nodes, "Nodes per instance")->check(CLI::Range(2, 64));
  verify_cmd->add_option("--instances", vopts.instances, "Instances per protocol")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--seed", vopts.first_seed, "Seed of the first instance");
  verify_cmd->add_option("--protocol", verify_protocols, "Coded protocols to check (default bs netfec mpmh)");
  verify_cmd->add_option("--out", verify_out, "Output directory for verify.csv");

  // plot
  auto* plot_cmd = app.add_subcommand("plot", "Render the four chart panels from a metrics CSV");
  std::string plot_csv_path, plot_out;
  plot_cmd->add_option("--csv,csv", plot_csv_path, "Metrics CSV")->required()->check(CLI::ExistingFile);
  plot_cmd->add_option("--out", plot_out, "Output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) {
      ExperimentSpec spec = run_spec.empty() ? ExperimentSpec{} : load_spec(run_spec);
      NetworkConfig cfg = spec.base;
      if (run_value) apply_parameter(cfg, spec.sweep_parameter, *run_value);
      if (run_slots) set_slots(cfg, *run_slots);
      cfg.seed = run_seed;
      cfg.verification = cfg.verification || run_verify;
      const ProtocolKind protocol = parse_protocol(run_protocol);

      SweepEntry e{protocol, get_parameter(cfg, spec.sweep_parameter), run_seed, run(cfg, protocol)};
      MetricsTable table{spec.sweep_parameter, cfg.hop_count(), {metrics_row(e)}};
      std::ostringstream csv;
      write_metrics_csv(csv, table);
      std::cout << csv.str();

      const fs::path dir = resolve_out(run_out, spec.output_dir);
      ensure_dir(dir);
      const std::string stem = "run_" + std::string(to_string(protocol)) + "_seed" + std::to_string(run_seed);
      write_file(dir / (stem + ".csv"), [&](std::ostream& o) { o << csv.str(); });
      if (run_trace) write_file(dir / (stem + "_trace.csv"), [&](std::ostream& o) { write_trace(o, e.ledger); });
      if (cfg.verification) {
        const auto& v = e.ledger.verification;
        std::cerr << "verification: " << v.disagreements << " disagreements in " << v.opportunities
                  << " decode opportunities, " << v.attributable << " attributed\n";
      }
      return 0;
    }

    if (sweep_cmd->parsed()) {
      ExperimentSpec spec = load_spec(sweep_spec);
      spec.output_dir = resolve_out(sweep_out, spec.output_dir);
      if (sweep_slots) set_slots(spec.base, *sweep_slots);
      if (sweep_threads) spec.threads = *sweep_threads;
      spec.verification = spec.verification || sweep_verify;
      spec.emit_traces = spec.emit_traces || sweep_trace;
      const ExperimentResult res = run_experiment(spec);
      std::cout << "wrote " << res.metrics_csv.string() << " (" << res.table.rows.size() << " runs)\n";
      for (const auto& c : res.charts) std::cout << "wrote " << c.string() << '\n';
      if (!res.traces.empty()) std::cout << "wrote " << res.traces.size() << " trace files\n";
      return 0;
    }

    if (verify_cmd->parsed()) {
      if (!verify_protocols.empty()) {
        vopts.protocols.clear();
        for (const auto& p : verify_protocols) vopts.protocols.push_back(parse_protocol(p));
      }
      const VerifyReport rep = run_verification(vopts);
      const fs::path dir = resolve_out(verify_out, {});
      ensure_dir(dir);
      write_file(dir / "verify.csv", [&](std::ostream& o) { write_verify_report(o, rep); });
      std::cout << "instances: " << rep.instances.size() << "\n"
                << "decode opportunities: " << rep.opportunities << "\n"
                << "disagreements: " << rep.disagreements << " (" << rep.attributable << " attributed)\n"
                << "agreement ratio: " << rep.agreement_ratio() << "\n"
                << (rep.passed() ? "PASS" : "FAIL") << '\n';
      return rep.passed() ? 0 : 2;
    }

    if (plot_cmd->parsed()) {
      const fs::path dir = resolve_out(plot_out, {});
      for (const auto& c : plot_csv(plot_csv_path, dir)) std::cout << "wrote " << c.string() << '\n';
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "mhnc: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
