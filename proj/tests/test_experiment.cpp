#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "mhnc/experiment.hpp"
#include "mhnc/plot.hpp"

using namespace mhnc;
namespace fs = std::filesystem;

namespace {

ExperimentSpec parse(const std::string& text) {
  std::istringstream in(text);
  return parse_spec(in);
}

fs::path scratch_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("mhnc_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

MetricsRow row(std::string proto, double v, std::uint64_t seed, double u) {
  return MetricsRow{std::move(proto), v, seed, u, {u, 1.0, 0.5}, 0.75, 0.45, 120.5, 300.0};
}

}  // namespace

TEST(ExperimentFile, ParsesAllKeys) {
  const ExperimentSpec s = parse(R"(# comment
node_count = 4
erasure_rates = [0.1, 0.3, 0.2]
rtt_per_hop = [20, 40, 20]
horizon = 1000
arrival_rate = 0.4
alpha = 2
threshold = 0.1
max_window = 50
delivery_window = 100
log_base = 10
payload_symbols = 4
seed = 7
seeds = 3
threads = 2
sweep = eps1
values = [0.2, 0.5]
protocols = [bs, srarq]
output_dir = "results"
traces = true
verification = false
)");
  EXPECT_EQ(s.base.node_count, 4);
  EXPECT_EQ(s.base.rtt_per_hop[1], 40);
  EXPECT_EQ(s.base.alpha, 2.0);
  EXPECT_EQ(s.base.max_window, 50);
  EXPECT_EQ(s.sweep_parameter, "eps1");
  EXPECT_EQ(s.sweep_values, (std::vector<double>{0.2, 0.5}));
  EXPECT_EQ(s.protocols, (std::vector<ProtocolKind>{ProtocolKind::BlankSpace, ProtocolKind::SrArq}));
  EXPECT_EQ(s.seeds(), (std::vector<std::uint64_t>{7, 8, 9}));
  EXPECT_EQ(s.output_dir, fs::path("results"));
  EXPECT_TRUE(s.emit_traces);
  EXPECT_EQ(s.threads, 2u);
}

TEST(ExperimentFile, DefaultsDescribeReferenceSweep) {
  const ExperimentSpec s = parse("");
  EXPECT_EQ(s.base.node_count, 6);
  EXPECT_EQ(s.sweep_values.size(), 5u);
  EXPECT_EQ(s.protocols.size(), 4u);
  EXPECT_EQ(s.seeds().size(), 10u);
}

TEST(ExperimentFile, ErrorsNameTheLine) {
  try {
    parse("node_count = 6\ncolour = blue\n");
    FAIL() << "no error";
  } catch (const SpecError& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
  }
  EXPECT_THROW(parse("alpha = 1\nalpha = 2\n"), SpecError);
  EXPECT_THROW(parse("horizon = many\n"), SpecError);
  EXPECT_THROW(parse("just words\n"), SpecError);
  EXPECT_THROW(parse("sweep = gamma\n"), SpecError);
  EXPECT_THROW(parse("values = []\n"), SpecError);
  EXPECT_THROW(parse("protocols = [bs, tcp]\n"), SpecError);
  EXPECT_THROW(parse("rtt_per_hop = [20, 21, 20, 20, 20]\n"), SpecError);
  EXPECT_THROW(parse("values = [0.2, 1.5]\n"), SpecError);
  EXPECT_THROW(load_spec("/nonexistent/spec.toml"), SpecError);
}

TEST(MetricsCsv, GoldenHeader) {
  EXPECT_EQ(metrics_header("eps2", 5), "protocol,eps2,seed,U,U0,U1,U2,U3,U4,eta,R_del,D_mean,D_max");
}

TEST(MetricsCsv, EmptyTableIsHeaderOnly) {
  std::ostringstream out;
  write_metrics_csv(out, MetricsTable{"eps2", 5, {}});
  EXPECT_EQ(out.str(), std::string(kMetricsSchema) + "\nprotocol,eps2,seed,U,U0,U1,U2,U3,U4,eta,R_del,D_mean,D_max\n");
  std::istringstream in(out.str());
  EXPECT_TRUE(read_metrics_csv(in).rows.empty());
}

TEST(MetricsCsv, RoundTrip) {
  MetricsTable t{"eps1", 3, {row("bs", 0.2, 1, 0.8), row("srarq", 0.4, 2, 0.6)}};
  t.rows[1].delay_mean.reset();
  t.rows[1].delay_max.reset();
  std::ostringstream out;
  write_metrics_csv(out, t);
  std::istringstream in(out.str());
  const MetricsTable back = read_metrics_csv(in);
  EXPECT_EQ(back.parameter, "eps1");
  EXPECT_EQ(back.hop_count, 3);
  EXPECT_EQ(back.rows, t.rows);
}

TEST(MetricsCsv, RejectsForeignFiles) {
  std::istringstream no_schema("protocol,eps2,seed,U,U0,eta,R_del,D_mean,D_max\n");
  EXPECT_THROW(read_metrics_csv(no_schema), std::runtime_error);
  std::istringstream short_row(std::string(kMetricsSchema) + "\nprotocol,eps2,seed,U,U0,eta,R_del,D_mean,D_max\nbs,0.2\n");
  EXPECT_THROW(read_metrics_csv(short_row), std::runtime_error);
}

TEST(Trace, Format) {
  RunLedger l;
  l.actions = {{Action::New, Action::BspIdle}, {Action::PreOp, Action::FecPosterior}};
  std::ostringstream out;
  write_trace(out, l);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "slot,node,action");
  int rows = 0;
  while (std::getline(in, line)) {
    const auto a = line.find(','), b = line.rfind(',');
    EXPECT_TRUE(parse_action(line.substr(b + 1)).has_value()) << line;
    EXPECT_LT(a, b);
    ++rows;
  }
  EXPECT_EQ(rows, 4);
}

TEST(Plot, PanelsFollowTheTable) {
  MetricsTable t{"eps2", 3, {row("bs", 0.2, 1, 0.8), row("bs", 0.2, 2, 0.6), row("netfec", 0.2, 1, 1.0),
                             row("srarq", 0.2, 1, 0.7)}};
  const auto panels = figure_panels(t);
  ASSERT_EQ(panels.size(), 4u);
  const Chart& usage = panels[0];
  // One dashed line per BS node, then an end-to-end line per protocol present.
  ASSERT_EQ(usage.series.size(), 3u + 3u);
  for (int i = 0; i < 3; ++i) EXPECT_TRUE(usage.series[static_cast<std::size_t>(i)].dashed);
  EXPECT_DOUBLE_EQ(usage.series[3].points.at(0).second, 0.7);
  const Chart& rates = panels[1];
  ASSERT_EQ(rates.series.size(), 3u);
  EXPECT_TRUE(rates.series[2].dashed);
  EXPECT_EQ(panels[2].series.size(), 3u);
  EXPECT_NE(render_svg(usage).find("<svg"), std::string::npos);
}

TEST(Plot, ChartsDependOnlyOnTheCsv) {
  const fs::path dir = scratch_dir("plot");
  MetricsTable t{"eps2", 3, {row("bs", 0.2, 1, 0.8), row("mpmh", 0.4, 1, 1.0)}};
  const auto direct = plot_table(t, dir / "a");
  {
    std::ofstream out(dir / "m.csv");
    write_metrics_csv(out, t);
  }
  const auto from_csv = plot_csv(dir / "m.csv", dir / "b");
  ASSERT_EQ(direct.size(), 4u);
  for (std::size_t i = 0; i < direct.size(); ++i) EXPECT_EQ(slurp(direct[i]), slurp(from_csv[i]));
}

TEST(Experiment, WritesCsvTracesAndCharts) {
  const fs::path dir = scratch_dir("experiment");
  ExperimentSpec s = parse("node_count = 3\nerasure_rates = [0.1, 0.3]\nrtt_per_hop = [20, 20]\nhorizon = 600\n"
                           "delivery_window = 100\nsweep = eps0\nvalues = [0.1, 0.2]\nseeds = 2\ntraces = true\n");
  s.output_dir = dir;
  const ExperimentResult r = run_experiment(s);
  EXPECT_EQ(r.table.rows.size(), 16u);
  EXPECT_EQ(r.traces.size(), 16u);
  EXPECT_EQ(r.charts.size(), 4u);
  std::ifstream in(r.metrics_csv);
  const MetricsTable back = read_metrics_csv(in);
  EXPECT_EQ(back.rows.size(), 16u);
  EXPECT_TRUE(fs::exists(dir / "traces" / "trace_bs_eps0_0p1_seed1.csv"));
}

TEST(Verify, ReferenceSuitePasses) {
  VerifyOptions o;
  const VerifyReport rep = run_verification(o);
  EXPECT_EQ(rep.instances.size(), 60u);
  EXPECT_GT(rep.opportunities, 0);
  EXPECT_TRUE(rep.passed());
  for (const auto& inst : rep.instances)
    for (double e : inst.config.erasure_rates) {
      EXPECT_GE(e, 0.05);
      EXPECT_LE(e, 0.5);
    }
  o.protocols = {ProtocolKind::SrArq};
  EXPECT_THROW(run_verification(o), std::invalid_argument);
}
