#include "mhnc/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <set>
#include <stdexcept>
#include <thread>

#include "mhnc/plot.hpp"
#include "mhnc/rng.hpp"

namespace mhnc {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string unquote(std::string_view s) {
  s = trim(s);
  if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') && s.back() == s.front())
    return std::string(s.substr(1, s.size() - 2));
  return std::string(s);
}

class SpecParser {
 public:
  SpecParser(int line, std::string key) : line_(line), key_(std::move(key)) {}

  [[noreturn]] void fail(const std::string& what) const {
    throw SpecError("line " + std::to_string(line_) + ": " + key_ + ": " + what);
  }

  double real(std::string_view v) const {
    v = trim(v);
    double x = 0.0;
    const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc() || p != v.data() + v.size()) fail("expected a number, got '" + std::string(v) + "'");
    return x;
  }

  std::int64_t integer(std::string_view v) const {
    v = trim(v);
    std::int64_t x = 0;
    const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc() || p != v.data() + v.size()) fail("expected an integer, got '" + std::string(v) + "'");
    return x;
  }

  bool boolean(std::string_view v) const {
    const std::string s = unquote(v);
    if (s == "true" || s == "1") return true;
    if (s == "false" || s == "0") return false;
    fail("expected true or false, got '" + s + "'");
  }

  std::vector<std::string> list(std::string_view v) const {
    v = trim(v);
    if (v.size() < 2 || v.front() != '[' || v.back() != ']') fail("expected a list [a, b, ...]");
    v = trim(v.substr(1, v.size() - 2));
    std::vector<std::string> out;
    if (v.empty()) return out;
    std::size_t pos = 0;
    while (true) {
      const auto comma = v.find(',', pos);
      const auto item = trim(v.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos));
      if (item.empty()) fail("empty list element");
      out.push_back(unquote(item));
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
    return out;
  }

  std::vector<double> reals(std::string_view v) const {
    std::vector<double> out;
    for (const auto& s : list(v)) out.push_back(real(s));
    return out;
  }

 private:
  int line_;
  std::string key_;
};

std::string format_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    const auto comma = line.find(',', pos);
    out.push_back(line.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

double csv_real(const std::string& field, int line) {
  double x = 0.0;
  const auto [p, ec] = std::from_chars(field.data(), field.data() + field.size(), x);
  if (ec != std::errc() || p != field.data() + field.size())
    throw std::runtime_error("metrics CSV line " + std::to_string(line) + ": bad number '" + field + "'");
  return x;
}

std::string value_tag(double v) {
  std::string s = format_number(v);
  std::replace(s.begin(), s.end(), '.', 'p');
  std::replace(s.begin(), s.end(), '-', 'm');
  return s;
}

}  // namespace

std::vector<std::uint64_t> ExperimentSpec::seeds() const {
  std::vector<std::uint64_t> out;
  for (int i = 0; i < seed_count; ++i) out.push_back(first_seed + static_cast<std::uint64_t>(i));
  return out;
}

ExperimentSpec parse_spec(std::istream& in) {
  ExperimentSpec spec;
  NetworkConfig& c = spec.base;
  std::set<std::string> seen;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto text = trim(raw);
    if (text.empty() || text.front() == '#') continue;
    const auto eq = text.find('=');
    if (eq == std::string_view::npos)
      throw SpecError("line " + std::to_string(line) + ": expected key = value");
    const std::string key(trim(text.substr(0, eq)));
    const auto value = trim(text.substr(eq + 1));
    const SpecParser p(line, key);
    if (key.empty()) p.fail("missing key");
    if (!seen.insert(key).second) p.fail("duplicate key");

    if (key == "node_count") c.node_count = static_cast<int>(p.integer(value));
    else if (key == "erasure_rates") c.erasure_rates = p.reals(value);
    else if (key == "rtt_per_hop") {
      c.rtt_per_hop.clear();
      for (const auto& s : p.list(value)) c.rtt_per_hop.push_back(p.integer(s));
    } else if (key == "horizon") c.horizon = p.integer(value);
    else if (key == "arrival_rate") c.arrival_rate = p.real(value);
    else if (key == "alpha") c.alpha = p.real(value);
    else if (key == "threshold") c.threshold = p.real(value);
    else if (key == "max_window") c.max_window = p.integer(value);
    else if (key == "delivery_window") c.delivery_window = p.integer(value);
    else if (key == "log_base") c.log_base = p.real(value);
    else if (key == "payload_symbols") c.payload_symbols = static_cast<int>(p.integer(value));
    else if (key == "seed") spec.first_seed = static_cast<std::uint64_t>(p.integer(value));
    else if (key == "seeds") spec.seed_count = static_cast<int>(p.integer(value));
    else if (key == "threads") spec.threads = static_cast<unsigned>(p.integer(value));
    else if (key == "sweep") spec.sweep_parameter = unquote(value);
    else if (key == "values") spec.sweep_values = p.reals(value);
    else if (key == "protocols") {
      spec.protocols.clear();
      for (const auto& s : p.list(value)) {
        try {
          spec.protocols.push_back(parse_protocol(s));
        } catch (const std::invalid_argument& e) {
          p.fail(e.what());
        }
      }
    } else if (key == "output_dir") spec.output_dir = unquote(value);
    else if (key == "traces") spec.emit_traces = p.boolean(value);
    else if (key == "verification") spec.verification = p.boolean(value);
    else p.fail("unknown key");
  }

  c.verification = spec.verification;
  if (spec.protocols.empty()) throw SpecError("protocols: list is empty");
  if (spec.seed_count < 1) throw SpecError("seeds: need at least one seed");
  if (spec.sweep_values.empty()) throw SpecError("values: sweep has no points");
  if (!is_sweep_parameter(spec.sweep_parameter))
    throw SpecError("sweep: unknown parameter '" + spec.sweep_parameter + "'");
  try {
    require_valid(c);
    for (double v : spec.sweep_values) {
      NetworkConfig point = c;
      apply_parameter(point, spec.sweep_parameter, v);
      require_valid(point);
    }
  } catch (const std::invalid_argument& e) {
    throw SpecError(e.what());
  }
  return spec;
}

ExperimentSpec load_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SpecError("cannot open spec file " + path.string());
  return parse_spec(in);
}

MetricsRow metrics_row(const SweepEntry& e) {
  const RunMetrics m = summarize(e.ledger);
  MetricsRow r;
  r.protocol = std::string(to_string(e.protocol));
  r.value = e.value;
  r.seed = e.seed;
  r.usage = m.usage.network;
  r.node_usage = m.usage.per_node;
  r.goodput = m.goodput;
  r.delivery_rate = m.delivery_rate;
  if (m.has_delay) {
    r.delay_mean = m.delay.mean;
    r.delay_max = m.delay.max;
  }
  return r;
}

MetricsTable metrics_table(const std::vector<SweepEntry>& entries, std::string_view parameter, int hop_count) {
  MetricsTable t;
  t.parameter = std::string(parameter);
  t.hop_count = hop_count;
  for (const auto& e : entries) t.rows.push_back(metrics_row(e));
  return t;
}

std::string metrics_header(std::string_view parameter, int hop_count) {
  std::string h = "protocol," + std::string(parameter) + ",seed,U";
  for (int i = 0; i < hop_count; ++i) h += ",U" + std::to_string(i);
  return h + ",eta,R_del,D_mean,D_max";
}

void write_metrics_csv(std::ostream& out, const MetricsTable& table) {
  out << kMetricsSchema << '\n' << metrics_header(table.parameter, table.hop_count) << '\n';
  for (const auto& r : table.rows) {
    if (static_cast<int>(r.node_usage.size()) != table.hop_count)
      throw std::invalid_argument("metrics row has " + std::to_string(r.node_usage.size()) + " node columns, table has " +
                                  std::to_string(table.hop_count));
    out << r.protocol << ',' << format_number(r.value) << ',' << r.seed << ',' << format_number(r.usage);
    for (double u : r.node_usage) out << ',' << format_number(u);
    out << ',' << format_number(r.goodput) << ',' << format_number(r.delivery_rate) << ','
        << (r.delay_mean ? format_number(*r.delay_mean) : "") << ','
        << (r.delay_max ? format_number(*r.delay_max) : "") << '\n';
  }
}

MetricsTable read_metrics_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kMetricsSchema)
    throw std::runtime_error("metrics CSV: missing or unsupported schema line (want '" + std::string(kMetricsSchema) +
                             "')");
  if (!std::getline(in, line)) throw std::runtime_error("metrics CSV: missing header");
  const auto head = split_csv(line);
  if (head.size() < 8 || head[0] != "protocol" || head[2] != "seed" || head[3] != "U")
    throw std::runtime_error("metrics CSV: unexpected header '" + line + "'");
  MetricsTable t;
  t.parameter = head[1];
  t.hop_count = static_cast<int>(head.size()) - 8;
  if (line != metrics_header(t.parameter, t.hop_count))
    throw std::runtime_error("metrics CSV: unexpected header '" + line + "'");

  int n = 2;
  while (std::getline(in, line)) {
    ++n;
    if (line.empty()) continue;
    const auto f = split_csv(line);
    if (f.size() != head.size())
      throw std::runtime_error("metrics CSV line " + std::to_string(n) + ": expected " + std::to_string(head.size()) +
                               " fields, got " + std::to_string(f.size()));
    MetricsRow r;
    r.protocol = f[0];
    parse_protocol(r.protocol);
    r.value = csv_real(f[1], n);
    r.seed = static_cast<std::uint64_t>(csv_real(f[2], n));
    r.usage = csv_real(f[3], n);
    for (int i = 0; i < t.hop_count; ++i) r.node_usage.push_back(csv_real(f[4 + static_cast<std::size_t>(i)], n));
    const std::size_t k = 4 + static_cast<std::size_t>(t.hop_count);
    r.goodput = csv_real(f[k], n);
    r.delivery_rate = csv_real(f[k + 1], n);
    if (!f[k + 2].empty()) r.delay_mean = csv_real(f[k + 2], n);
    if (!f[k + 3].empty()) r.delay_max = csv_real(f[k + 3], n);
    t.rows.push_back(std::move(r));
  }
  return t;
}

void write_trace(std::ostream& out, const RunLedger& ledger) {
  out << "slot,node,action\n";
  const std::size_t slots = ledger.actions.empty() ? 0 : ledger.actions.front().size();
  for (std::size_t t = 0; t < slots; ++t)
    for (std::size_t n = 0; n < ledger.actions.size(); ++n)
      out << t << ',' << n << ',' << to_string(ledger.actions[n][t]) << '\n';
}

std::string trace_file_name(const SweepEntry& e, std::string_view parameter) {
  return "trace_" + std::string(to_string(e.protocol)) + "_" + std::string(parameter) + "_" + value_tag(e.value) +
         "_seed" + std::to_string(e.seed) + ".csv";
}

ExperimentResult run_experiment(const ExperimentSpec& spec) {
  namespace fs = std::filesystem;
  const fs::path dir_out = spec.output_dir.empty() ? fs::path("out") : spec.output_dir;
  std::error_code ec;
  fs::create_directories(dir_out, ec);
  if (ec || !fs::is_directory(dir_out)) throw std::runtime_error("cannot create output directory " + dir_out.string());

  NetworkConfig base = spec.base;
  base.verification = spec.verification;
  const auto entries = sweep(base, spec.sweep_parameter, spec.sweep_values, spec.seeds(), spec.protocols, spec.threads);

  ExperimentResult res;
  res.table = metrics_table(entries, spec.sweep_parameter, base.hop_count());
  res.metrics_csv = dir_out / "metrics.csv";
  {
    std::ofstream out(res.metrics_csv);
    if (!out) throw std::runtime_error("cannot write " + res.metrics_csv.string());
    write_metrics_csv(out, res.table);
    if (!out) throw std::runtime_error("write failed: " + res.metrics_csv.string());
  }
  if (spec.emit_traces) {
    const fs::path dir = dir_out / "traces";
    fs::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create " + dir.string());
    for (const auto& e : entries) {
      const fs::path p = dir / trace_file_name(e, spec.sweep_parameter);
      std::ofstream out(p);
      if (!out) throw std::runtime_error("cannot write " + p.string());
      write_trace(out, e.ledger);
      res.traces.push_back(p);
    }
  }
  res.charts = plot_csv(res.metrics_csv, dir_out);
  return res;
}

double VerifyReport::disagreement_rate() const {
  return opportunities == 0 ? 0.0 : static_cast<double>(disagreements) / static_cast<double>(opportunities);
}

bool VerifyReport::passed(double max_rate) const {
  return opportunities > 0 && disagreement_rate() <= max_rate && attributable == disagreements;
}

NetworkConfig verification_instance(const VerifyOptions& opts, int k) {
  NetworkConfig c;
  c.node_count = opts.nodes;
  c.horizon = opts.slots;
  c.seed = opts.first_seed + static_cast<std::uint64_t>(k);
  c.verification = true;
  c.delivery_window = std::max<Slot>(1, opts.slots / 5);
  c.erasure_rates.clear();
  c.rtt_per_hop.assign(static_cast<std::size_t>(opts.nodes - 1), 20);
  Rng draw(c.seed, StreamTag::Instance);
  for (int i = 0; i + 1 < opts.nodes; ++i) c.erasure_rates.push_back(0.05 + 0.45 * draw.uniform());
  return c;
}

VerifyReport run_verification(const VerifyOptions& opts) {
  if (opts.instances < 1) throw std::invalid_argument("verify: need at least one instance");
  if (opts.protocols.empty()) throw std::invalid_argument("verify: no protocols");
  for (ProtocolKind p : opts.protocols)
    if (p == ProtocolKind::SrArq) throw std::invalid_argument("verify: srarq carries no coded packets");

  VerifyReport rep;
  for (ProtocolKind p : opts.protocols) {
    for (int k = 0; k < opts.instances; ++k) {
      NetworkConfig c = verification_instance(opts, k);
      require_valid(c);
      rep.instances.push_back({p, c, {}});
    }
  }
  // Each instance is its own sweep point so the pool spreads them out.
  std::vector<SweepEntry> done(rep.instances.size());
  std::vector<std::thread> pool;
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex mu;
  unsigned threads = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(rep.instances.size()));
  for (unsigned w = 0; w < threads; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < rep.instances.size(); i = next++) {
        try {
          rep.instances[i].summary = run(rep.instances[i].config, rep.instances[i].protocol).verification;
        } catch (...) {
          std::lock_guard lock(mu);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  for (const auto& inst : rep.instances) {
    rep.opportunities += inst.summary.opportunities;
    rep.disagreements += inst.summary.disagreements;
    rep.attributable += inst.summary.attributable;
  }
  return rep;
}

void write_verify_report(std::ostream& out, const VerifyReport& report) {
  out << "protocol,seed,eps,opportunities,disagreements,attributable,deficiency_events,fast_decoded,real_decoded\n";
  for (const auto& inst : report.instances) {
    out << to_string(inst.protocol) << ',' << inst.config.seed << ',';
    for (std::size_t i = 0; i < inst.config.erasure_rates.size(); ++i)
      out << (i ? ";" : "") << format_number(inst.config.erasure_rates[i]);
    const auto& s = inst.summary;
    out << ',' << s.opportunities << ',' << s.disagreements << ',' << s.attributable << ',' << s.deficiency_events << ','
        << s.fast_decoded << ',' << s.real_decoded << '\n';
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "# agreement ratio %.6f (%lld disagreements in %lld opportunities, %lld attributed)\n",
                report.agreement_ratio(), static_cast<long long>(report.disagreements),
                static_cast<long long>(report.opportunities), static_cast<long long>(report.attributable));
  out << buf;
}

}  // namespace mhnc
