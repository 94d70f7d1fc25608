#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "mhnc/experiment.hpp"

namespace mhnc {

struct Series {
  std::string name;
  std::vector<std::pair<double, double>> points;  // sorted by x
  bool dashed = false;
};

struct Chart {
  std::string file_stem;
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Series> series;
};

// The four panels, averaged over seeds:
//   usage   per-node and end-to-end usage of BS, end-to-end for the others
//   rates   one line for the coded schemes' mean delivery rate, SR-ARQ's
//           rate and a dashed BS goodput line
//   delay_mean, delay_max   one line per protocol
std::vector<Chart> figure_panels(const MetricsTable& table);

std::string render_svg(const Chart& chart);

// Writes <stem>.svg for each panel into `out_dir` and returns the paths.
std::vector<std::filesystem::path> plot_table(const MetricsTable& table, const std::filesystem::path& out_dir);
// Reads the CSV and plots it; nothing else is consulted.
std::vector<std::filesystem::path> plot_csv(const std::filesystem::path& csv, const std::filesystem::path& out_dir);

}  // namespace mhnc
