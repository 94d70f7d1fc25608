#pragma once

#include <cstdint>
#include <span>

#include "mhnc/types.hpp"

namespace mhnc {

// Nearest integer with halves rounded up; used for the a-priori FEC count.
std::int64_t round_half_up(double x);

// Number of a-priori FEC packets for the next period.
std::int64_t apriori_fec_count(double eps_hat, std::int64_t new_dofs_last_period);

// DoF-rate gap
//   (missing_known + eps * new_unknown) / (acked_repairs + (1 - eps) * same_unknown) - 1.
// A zero denominator yields +inf when something is missing and 0 otherwise.
double dof_rate_gap(double missing_known, double eps_hat, double new_unknown, double acked_repairs,
                    double same_unknown);

// Blank-space budget of node n: alpha * sum_{i=n+1}^{bn} rtt[i] * eps[i], or 0
// when n is its own forward bottleneck.
double blank_space_duration(NodeIndex n, int bottleneck, std::span<const Slot> rtt,
                            std::span<const double> eps_hat, double alpha);

// DoF rate of continuing the pause:
//   1 / ((1 - eps_n) * remaining + h * log(eps_bn - eps_n)).
// Returns +inf (forcing termination) when eps_bn <= eps_n or the bracket is
// not positive. log_base 0 means natural log.
double blank_space_dof_rate(double eps_n, double eps_bn, int hops_to_bottleneck, double remaining,
                            double log_base = 0.0);

// Pause termination test: rate > 1 - eps_bn.
bool blank_space_should_terminate(double dof_rate, double eps_bn);

}  // namespace mhnc
