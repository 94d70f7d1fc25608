#include "mhnc/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <stdexcept>

namespace mhnc {

namespace {

// Mean of `get` over rows grouped by sweep value, for rows passing `keep`.
template <class Keep, class Get>
std::vector<std::pair<double, double>> averaged(const MetricsTable& t, Keep keep, Get get) {
  std::map<double, std::pair<double, int>> acc;
  for (const auto& r : t.rows) {
    if (!keep(r)) continue;
    const std::optional<double> v = get(r);
    if (!v) continue;
    auto& [sum, n] = acc[r.value];
    sum += *v;
    ++n;
  }
  std::vector<std::pair<double, double>> out;
  for (const auto& [x, s] : acc) out.emplace_back(x, s.first / s.second);
  return out;
}

auto protocol_is(std::string name) {
  return [name = std::move(name)](const MetricsRow& r) { return r.protocol == name; };
}

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                                "#8c564b", "#e377c2", "#17becf", "#7f7f7f", "#bcbd22"};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '<') out += "&lt;";
    else if (c == '>') out += "&gt;";
    else if (c == '&') out += "&amp;";
    else out += c;
  }
  return out;
}

double nice_step(double span) {
  if (span <= 0) return 1.0;
  const double raw = span / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 2.5, 5.0, 10.0})
    if (raw <= m * mag) return m * mag;
  return 10.0 * mag;
}

}  // namespace

std::vector<Chart> figure_panels(const MetricsTable& t) {
  const std::string x = t.parameter;
  const std::string bs(to_string(ProtocolKind::BlankSpace));
  std::vector<Chart> panels;

  Chart usage{"usage", "Channel usage", x, "U", {}};
  for (int n = 0; n < t.hop_count; ++n)
    usage.series.push_back({bs + " node " + std::to_string(n),
                            averaged(t, protocol_is(bs), [n](const MetricsRow& r) -> std::optional<double> {
                              return r.node_usage.at(static_cast<std::size_t>(n));
                            }),
                            true});
  for (ProtocolKind p : all_protocols()) {
    const std::string name(to_string(p));
    auto pts = averaged(t, protocol_is(name), [](const MetricsRow& r) -> std::optional<double> { return r.usage; });
    if (!pts.empty()) usage.series.push_back({name + " end-to-end", std::move(pts), false});
  }
  panels.push_back(std::move(usage));

  Chart rates{"rates", "Delivery rate and goodput", x, "packets / slot", {}};
  auto coded = [](const MetricsRow& r) { return r.protocol != to_string(ProtocolKind::SrArq); };
  auto rate = [](const MetricsRow& r) -> std::optional<double> { return r.delivery_rate; };
  if (auto pts = averaged(t, coded, rate); !pts.empty())
    rates.series.push_back({"coded schemes R_del", std::move(pts), false});
  if (auto pts = averaged(t, protocol_is(std::string(to_string(ProtocolKind::SrArq))), rate); !pts.empty())
    rates.series.push_back({"srarq R_del", std::move(pts), false});
  if (auto pts = averaged(t, protocol_is(bs), [](const MetricsRow& r) -> std::optional<double> { return r.goodput; });
      !pts.empty())
    rates.series.push_back({bs + " goodput", std::move(pts), true});
  panels.push_back(std::move(rates));

  Chart mean{"delay_mean", "Mean in-order delay", x, "slots", {}};
  Chart max{"delay_max", "Maximum in-order delay", x, "slots", {}};
  for (ProtocolKind p : all_protocols()) {
    const std::string name(to_string(p));
    if (auto pts = averaged(t, protocol_is(name), [](const MetricsRow& r) { return r.delay_mean; }); !pts.empty())
      mean.series.push_back({name, std::move(pts), false});
    if (auto pts = averaged(t, protocol_is(name), [](const MetricsRow& r) { return r.delay_max; }); !pts.empty())
      max.series.push_back({name, std::move(pts), false});
  }
  panels.push_back(std::move(mean));
  panels.push_back(std::move(max));
  return panels;
}

std::string render_svg(const Chart& c) {
  constexpr double W = 640, H = 420, L = 70, R = 190, T = 40, B = 55;
  const double pw = W - L - R, ph = H - T - B;

  double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  bool any = false;
  for (const auto& s : c.series)
    for (const auto& [x, y] : s.points) {
      if (!any) {
        x0 = x1 = x;
        y0 = y1 = y;
        any = true;
      }
      x0 = std::min(x0, x), x1 = std::max(x1, x), y0 = std::min(y0, y), y1 = std::max(y1, y);
    }
  if (x1 - x0 <= 0) x0 -= 0.5, x1 += 0.5;
  y0 = std::min(0.0, y0);
  if (y1 - y0 <= 0) y1 = y0 + 1;
  const double ys = nice_step(y1 - y0);
  y1 = std::ceil(y1 / ys) * ys;
  y0 = std::floor(y0 / ys) * ys;
  const double xs = nice_step(x1 - x0);

  auto px = [&](double x) { return L + (x - x0) / (x1 - x0) * pw; };
  auto py = [&](double y) { return T + (1 - (y - y0) / (y1 - y0)) * ph; };

  std::string o;
  o += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(W) + "\" height=\"" + fmt(H) +
       "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  o += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o += "<text x=\"" + fmt(L + pw / 2) + "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" + escape(c.title) +
       "</text>\n";
  for (double y = y0; y <= y1 + ys / 2; y += ys) {
    o += "<line x1=\"" + fmt(L) + "\" x2=\"" + fmt(L + pw) + "\" y1=\"" + fmt(py(y)) + "\" y2=\"" + fmt(py(y)) +
         "\" stroke=\"#ddd\"/>\n";
    o += "<text x=\"" + fmt(L - 6) + "\" y=\"" + fmt(py(y) + 4) + "\" text-anchor=\"end\">" + fmt(y) + "</text>\n";
  }
  for (double x = std::ceil(x0 / xs) * xs; x <= x1 + xs / 2; x += xs)
    o += "<text x=\"" + fmt(px(x)) + "\" y=\"" + fmt(T + ph + 18) + "\" text-anchor=\"middle\">" + fmt(x) +
         "</text>\n";
  o += "<rect x=\"" + fmt(L) + "\" y=\"" + fmt(T) + "\" width=\"" + fmt(pw) + "\" height=\"" + fmt(ph) +
       "\" fill=\"none\" stroke=\"black\"/>\n";
  o += "<text x=\"" + fmt(L + pw / 2) + "\" y=\"" + fmt(H - 12) + "\" text-anchor=\"middle\">" + escape(c.x_label) +
       "</text>\n";
  o += "<text transform=\"translate(18," + fmt(T + ph / 2) + ") rotate(-90)\" text-anchor=\"middle\">" +
       escape(c.y_label) + "</text>\n";

  for (std::size_t i = 0; i < c.series.size(); ++i) {
    const auto& s = c.series[i];
    const std::string color = kPalette[i % std::size(kPalette)];
    const std::string dash = s.dashed ? " stroke-dasharray=\"6 4\"" : "";
    std::string pts;
    for (const auto& [x, y] : s.points) pts += fmt(px(x)) + "," + fmt(py(y)) + " ";
    o += "<polyline fill=\"none\" stroke=\"" + color + "\" stroke-width=\"2\"" + dash + " points=\"" + pts + "\"/>\n";
    for (const auto& [x, y] : s.points)
      o += "<circle cx=\"" + fmt(px(x)) + "\" cy=\"" + fmt(py(y)) + "\" r=\"3\" fill=\"" + color + "\"/>\n";
    const double ly = T + 12 + 18 * static_cast<double>(i);
    o += "<line x1=\"" + fmt(L + pw + 12) + "\" x2=\"" + fmt(L + pw + 36) + "\" y1=\"" + fmt(ly) + "\" y2=\"" +
         fmt(ly) + "\" stroke=\"" + color + "\" stroke-width=\"2\"" + dash + "/>\n";
    o += "<text x=\"" + fmt(L + pw + 42) + "\" y=\"" + fmt(ly + 4) + "\">" + escape(s.name) + "</text>\n";
  }
  o += "</svg>\n";
  return o;
}

std::vector<std::filesystem::path> plot_table(const MetricsTable& table, const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  std::vector<std::filesystem::path> out;
  for (const auto& chart : figure_panels(table)) {
    const auto p = out_dir / (chart.file_stem + ".svg");
    std::ofstream f(p);
    if (!f) throw std::runtime_error("cannot write " + p.string());
    f << render_svg(chart);
    if (!f) throw std::runtime_error("write failed: " + p.string());
    out.push_back(p);
  }
  return out;
}

std::vector<std::filesystem::path> plot_csv(const std::filesystem::path& csv, const std::filesystem::path& out_dir) {
  std::ifstream in(csv);
  if (!in) throw std::runtime_error("cannot open " + csv.string());
  return plot_table(read_metrics_csv(in), out_dir);
}

}  // namespace mhnc
