// SPDX-License-Identifier: Apache-2.0
#include "plcgrid/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "plcgrid/errors.hpp"

namespace plcgrid {

Rng derive_stream(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream),
                    static_cast<std::uint32_t>(stream >> 32)};
  return Rng(seq);
}

std::vector<double> sample_lognormal_gains(const LogNormalChannelModel& model, std::size_t n,
                                           Rng& rng) {
  if (n == 0) throw ModelError("sample count must be at least 1");
  if (!(model.sigma > 0.0)) throw ModelError("log-gain sigma must be positive");
  std::normal_distribution<double> normal(model.mu, model.sigma);
  std::vector<double> out(n);
  for (auto& g : out) g = std::exp(normal(rng));
  return out;
}

double normal_cdf(double x, double mean, double stddev) {
  return 0.5 * std::erfc(-(x - mean) / (stddev * std::numbers::sqrt2));
}

double ks_statistic_normal(std::span<const double> samples, double mean, double stddev) {
  if (samples.empty()) throw ModelError("KS statistic of an empty sample");
  if (!(stddev > 0.0)) throw ModelError("KS reference stddev must be positive");
  std::vector<double> x(samples.begin(), samples.end());
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double f = normal_cdf(x[i], mean, stddev);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

double ks_critical_value(std::size_t n, double alpha) {
  if (n == 0) throw ModelError("KS critical value needs n >= 1");
  if (!(alpha > 0.0 && alpha < 1.0)) throw ModelError("significance level must be in (0, 1)");
  return std::sqrt(-0.5 * std::log(alpha / 2.0)) / std::sqrt(static_cast<double>(n));
}

LogGainSample cascade_gain_monte_carlo(std::size_t n_discontinuities,
                                       const FactorDistribution& factors,
                                       std::size_t n_samples, Rng& rng, double alpha) {
  if (!(factors.low > 0.0) || !(factors.high >= factors.low)) {
    throw ModelError("factor support must be positive with low <= high");
  }
  if (n_discontinuities == 0) throw ModelError("need at least one discontinuity");
  if (n_samples < 2) throw ModelError("need at least two samples");

  std::uniform_real_distribution<double> u(factors.low, factors.high);
  const bool fixed = factors.low == factors.high;
  LogGainSample out;
  out.log_gains.resize(n_samples);
  for (auto& lg : out.log_gains) {
    double s = 0.0;
    for (std::size_t k = 0; k < n_discontinuities; ++k) {
      s += std::log(fixed ? factors.low : u(rng));
    }
    lg = s;
  }
  const double n = static_cast<double>(n_samples);
  out.mean = std::accumulate(out.log_gains.begin(), out.log_gains.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : out.log_gains) ss += (v - out.mean) * (v - out.mean);
  out.stddev = std::sqrt(ss / (n - 1.0));
  out.critical_value = ks_critical_value(n_samples, alpha);
  if (out.stddev > 0.0) {
    out.ks_statistic = ks_statistic_normal(out.log_gains, out.mean, out.stddev);
    out.normal_at_alpha = out.ks_statistic < out.critical_value;
  }
  return out;
}

}  // namespace plcgrid
