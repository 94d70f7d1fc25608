#include "mhnc/formulas.hpp"

#include <cmath>
#include <limits>

namespace mhnc {

std::int64_t round_half_up(double x) { return static_cast<std::int64_t>(std::floor(x + 0.5)); }

std::int64_t apriori_fec_count(double eps_hat, std::int64_t new_dofs_last_period) {
  const auto n = round_half_up(eps_hat * static_cast<double>(new_dofs_last_period));
  return n < 0 ? 0 : n;
}

double dof_rate_gap(double missing_known, double eps_hat, double new_unknown, double acked_repairs,
                    double same_unknown) {
  const double num = missing_known + eps_hat * new_unknown;
  const double den = acked_repairs + (1.0 - eps_hat) * same_unknown;
  if (den <= 0.0) return num > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
  return num / den - 1.0;
}

double blank_space_duration(NodeIndex n, int bottleneck, std::span<const Slot> rtt,
                            std::span<const double> eps_hat, double alpha) {
  if (n >= bottleneck) return 0.0;
  double sum = 0.0;
  for (int i = n + 1; i <= bottleneck; ++i)
    sum += static_cast<double>(rtt[static_cast<std::size_t>(i)]) * eps_hat[static_cast<std::size_t>(i)];
  return alpha * sum;
}

double blank_space_dof_rate(double eps_n, double eps_bn, int hops_to_bottleneck, double remaining,
                            double log_base) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  const double headroom = eps_bn - eps_n;
  if (headroom <= 0.0) return kInf;
  double lg = std::log(headroom);
  if (log_base != 0.0) lg /= std::log(log_base);
  const double bracket = (1.0 - eps_n) * remaining + hops_to_bottleneck * lg;
  if (bracket <= 0.0) return kInf;
  return 1.0 / bracket;
}

bool blank_space_should_terminate(double dof_rate, double eps_bn) { return dof_rate > 1.0 - eps_bn; }

}  // namespace mhnc
