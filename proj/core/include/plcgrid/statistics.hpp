// SPDX-License-Identifier: Apache-2.0
//
// Log-normal channel gains and the product-of-random-factors mechanism that
// produces them, with a Kolmogorov-Smirnov normality check on the logs.
#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace plcgrid {

using Rng = std::mt19937_64;

/// Independent generator for sub-stream `stream` of `seed`.
Rng derive_stream(std::uint64_t seed, std::uint64_t stream);

struct LogNormalChannelModel {
  double mu = 0.0;     // mean of ln(power gain)
  double sigma = 1.0;  // std of ln(power gain), > 0
};

/// n linear power gains exp(N(mu, sigma^2)). Throws ModelError for n == 0
/// or sigma <= 0.
std::vector<double> sample_lognormal_gains(const LogNormalChannelModel& model, std::size_t n,
                                           Rng& rng);

double normal_cdf(double x, double mean = 0.0, double stddev = 1.0);

/// sup |F_n(x) - Phi((x - mean) / stddev)|.
double ks_statistic_normal(std::span<const double> samples, double mean, double stddev);

/// Asymptotic two-sided critical value sqrt(-ln(alpha / 2) / 2) / sqrt(n).
double ks_critical_value(std::size_t n, double alpha);

/// Per-discontinuity factor, uniform on [low, high].
struct FactorDistribution {
  double low = 0.5;
  double high = 0.9;
};

struct LogGainSample {
  std::vector<double> log_gains;
  double mean = 0.0;
  double stddev = 0.0;
  /// KS distance to N(mean, stddev^2) with both estimated from the sample;
  /// 0 for a degenerate sample.
  double ks_statistic = 0.0;
  double critical_value = 0.0;
  bool normal_at_alpha = false;
};

/// Products of n_discontinuities independent factors, n_samples times.
/// Throws ModelError unless 0 < low <= high, n_discontinuities >= 1 and
/// n_samples >= 2.
LogGainSample cascade_gain_monte_carlo(std::size_t n_discontinuities,
                                       const FactorDistribution& factors,
                                       std::size_t n_samples, Rng& rng, double alpha = 0.01);

}  // namespace plcgrid
